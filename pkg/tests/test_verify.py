import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrckit.algebra import Matrix, PrimeField
from lrckit.code import LinearCode
from lrckit.graph_lrc import extend_to_tanner, named_graph
from lrckit.poly_lrc import modified, tamo_barg
from lrckit.verify import (
    Claims,
    GuardExceeded,
    availability_check,
    brute_min_distance,
    cross_check,
    locality_profile,
    min_distance,
    support_min_distance,
)

from conftest import naive_min_distance


def _random_code(p, k, n, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
    return LinearCode.from_generator(Matrix.from_rows(PrimeField(p), rows, n))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 4), st.integers(0, 10**6))
def test_distance_oracles_agree(p, k, extra, seed):
    code = _random_code(p, k, k + extra + 1, seed)
    if code.k == 0:
        return
    d = brute_min_distance(code)
    assert d == support_min_distance(code)
    assert d == naive_min_distance(code.G)


def test_gf2_path_matches_naive():
    # long enough to exercise the Gray-code outer loop
    code = _random_code(2, 18, 30, 3)
    assert brute_min_distance(code) == support_min_distance(code)
    small = _random_code(2, 10, 20, 4)
    assert brute_min_distance(small) == naive_min_distance(small.G)


def test_distance_examples(example_H):
    assert brute_min_distance(LinearCode.from_parity(example_H)) == 4
    tb = LinearCode.from_generator(tamo_barg(10, 5, 3, PrimeField(13)).generator)
    assert min_distance(tb) == (4, "enumeration")
    assert support_min_distance(tb) == 4


def test_distance_guards():
    big = LinearCode.from_generator(tamo_barg(20, 14, 5).generator)
    with pytest.raises(GuardExceeded):
        brute_min_distance(big)
    assert min_distance(big) == (4, "support")
    with pytest.raises(GuardExceeded):
        support_min_distance(big, guard=100)


def test_locality_profiles():
    tb = LinearCode.from_generator(tamo_barg(10, 5, 3, PrimeField(13)).generator)
    assert locality_profile(tb, 4).values == (3,) * 8 + (1, 1)
    mod = LinearCode.from_generator(modified(9, 5, 5, PrimeField(11)).generator)
    assert locality_profile(mod, 5).values == (4,) * 5 + (3,) * 4


def test_locality_cap_monotone():
    tb = LinearCode.from_generator(tamo_barg(10, 5, 3, PrimeField(13)).generator)
    low = locality_profile(tb, 2)
    assert low.values == (None,) * 8 + (1, 1) and low.max is None
    assert locality_profile(tb, 5).values == locality_profile(tb, 3).values


@pytest.mark.parametrize("name", ["k33", "petersen"])
def test_dual_witnesses(name):
    code = extend_to_tanner(named_graph(name)).code
    prof = locality_profile(code, 2)
    assert prof.max == 2
    G = code.G
    for i, w in enumerate(prof.witnesses):
        assert w[i] != 0
        assert sum(1 for x in w if x) == prof.values[i] + 1
        assert not any(G.mul_vec(w))


def test_availability():
    code = extend_to_tanner(named_graph("petersen")).code
    res = availability_check(code, 2, 2)
    assert res and not res.failing
    for i, wits in res.witnesses.items():
        s1, s2 = ({j for j, x in enumerate(w) if x} - {i} for w in wits)
        assert not s1 & s2
    bad = availability_check(code, 2, 3)
    assert not bad and len(bad.failing) == code.n


def test_cross_check_passes_on_good_claims(example_H):
    rep = cross_check(LinearCode.from_parity(example_H, "k33"), Claims(4, 2, 2))
    assert rep.passed and rep.d == 4 and rep.measured_locality == 2
    assert rep.bounds["gopalan"] >= 4
    assert "passed=yes" in rep.to_text()
    assert rep.csv_row().endswith(",1")


def test_negative_controls(example_H):
    good = LinearCode.from_parity(example_H)
    assert not cross_check(good, Claims(5, None, None)).passed
    assert not cross_check(good, Claims(None, 1, None)).passed
    assert not cross_check(good, Claims(None, 2, 3)).passed
    tb = tamo_barg(10, 5, 3, PrimeField(13)).generator
    rows = list(tb.rows)
    rows[4] = rows[0]
    corrupt = LinearCode.from_generator(Matrix.from_rows(tb.field, rows, tb.ncols))
    rep = cross_check(corrupt, Claims(4, 3, None))
    assert not rep.passed and rep.verdicts["generator_rank"] is False


def test_report_is_deterministic_without_timing(example_H):
    a = cross_check(LinearCode.from_parity(example_H), Claims(4, 2, 2)).to_text()
    b = cross_check(LinearCode.from_parity(example_H), Claims(4, 2, 2)).to_text()
    assert a == b and "runtime" not in a


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 7]), st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_locality_sweep_matches_per_coordinate_search(p, k, extra, seed):
    from lrckit.verify import _repair_sets

    code = _random_code(p, k, k + extra, seed)
    if code.k == 0:
        return
    cap = min(code.n - 1, 5)
    prof = locality_profile(code, cap)
    for i in range(code.n):
        T = next(_repair_sets(code.G, i, cap, first_only=True), None)
        assert prof.values[i] == (None if T is None else len(T))
        if T is not None:
            assert not any(code.G.mul_vec(prof.witnesses[i]))
