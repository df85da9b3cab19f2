import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrckit.algebra import PrimeField, interpolate, rank_nullspace
from lrckit.bounds import LrcParams, gopalan_bound, improved_bound
from lrckit.code import LinearCode
from lrckit.poly_lrc import (
    ConstructionError,
    RepairFailed,
    block_constant_degrees,
    construct,
    coset_partition,
    good_polynomial,
    local_repair,
    modified,
    repair_helpers,
    smallest_field,
    tamo_barg,
)
from lrckit.verify import brute_min_distance, locality_profile

GF11, GF13 = PrimeField(11), PrimeField(13)

TB = tamo_barg(10, 5, 3, GF13)
MOD = modified(9, 5, 5, GF11)


def _blocks(part):
    return [part.block_points(b) for b in range(part.m)]


def test_coset_partition_gf11():
    part = coset_partition(GF11, 5, 9)
    assert _blocks(part) == [[1, 3, 9, 5, 4], [2, 6, 7, 10]]


def test_coset_partition_gf13():
    part = coset_partition(GF13, 4, 10)
    blocks = _blocks(part)
    assert blocks[:2] == [[1, 5, 12, 8], [2, 10, 11, 3]]
    # short block: two elements of the coset 4H = {4, 7, 9, 6}
    assert len(blocks[2]) == 2 and set(blocks[2]) < {4, 6, 7, 9} and 4 in blocks[2]


def test_coset_partition_errors():
    with pytest.raises(ConstructionError):
        coset_partition(GF11, 4, 8)
    with pytest.raises(ConstructionError):
        coset_partition(GF11, 5, 11)
    with pytest.raises(ConstructionError):
        coset_partition(GF13, 4, 9, forbid_remainders=(0, 1))


@pytest.mark.parametrize("p,b,n", [(11, 5, 9), (13, 4, 10), (13, 3, 11), (31, 6, 20), (31, 5, 27), (29, 7, 26)])
def test_coset_blocks_are_cosets(p, b, n):
    F = PrimeField(p)
    part = coset_partition(F, b, n)
    for pts in _blocks(part):
        assert len({pow(x, b, p) for x in pts}) == 1
    assert part.block_sizes[:-1] == (b,) * (part.m - 1)


def test_good_polynomial_gf11():
    alg = good_polynomial(coset_partition(GF11, 5, 9))
    assert alg.g.coeffs == (1, 0, 0, 0, 0, 1)  # x^5 - 10
    assert alg.partition.block_values == (2, 0)
    assert alg.degree_profile == (0, 5)


def test_good_polynomial_gf13():
    alg = good_polynomial(coset_partition(GF13, 4, 10))
    assert alg.g.coeffs == (13 - pow(4, 4, 13), 0, 0, 0, 1)
    assert alg.partition.block_values[-1] == 0
    assert alg.degree_profile == (0, 4, 8)


def test_good_polynomial_single_block():
    alg = good_polynomial(coset_partition(GF13, 4, 3))
    assert alg.degree_profile == (0,)
    assert alg.partition.block_values == (0,)


@pytest.mark.parametrize("p,b,n", [(11, 5, 9), (13, 4, 10), (13, 3, 12), (31, 5, 22), (31, 6, 26)])
def test_profile_matches_indicator_oracle(p, b, n):
    part = coset_partition(PrimeField(p), b, n)
    alg = good_polynomial(part)
    assert list(alg.degree_profile) == block_constant_degrees(part)
    assert rank_nullspace(alg.basis_matrix())[0] == part.m


def test_smallest_field():
    assert smallest_field(4, 10).modulus == 13
    assert smallest_field(5, 9).modulus == 11
    assert smallest_field(6, 20).modulus == 31


def test_tb_layout():
    assert TB.slots == ((0, 0), (0, 1), (1, 1), (2, 0), (2, 1))
    assert TB.degree_cap == 6 and TB.designed_distance == 4
    assert TB.header()["blocks"] == "4,4,2"


def test_modified_layout():
    assert MOD.partition.block_sizes == (5, 4)
    assert MOD.slots == ((0, 0), (0, 1), (1, 0), (2, 0), (4, 0))
    assert MOD.degree_cap == 5 and MOD.designed_distance == 4


@pytest.mark.parametrize("code", [TB, MOD], ids=["tb", "mod"])
def test_trivial_messages(code):
    assert code.encode([0] * code.k) == [0] * code.n
    assert code.encode([1] + [0] * (code.k - 1)) == [1] * code.n


@pytest.mark.parametrize("code", [TB, MOD, tamo_barg(20, 14, 5), modified(10, 6, 5), modified(11, 8, 4)])
def test_degree_cap_random_messages(code):
    rng = random.Random(7)
    p = code.field.modulus
    for _ in range(200):
        msg = [rng.randrange(p) for _ in range(code.k)]
        word = code.encode(msg)
        f = interpolate(code.field, list(zip(code.partition.points, word)))
        assert f.degree <= code.degree_cap


@settings(max_examples=50)
@given(st.lists(st.integers(0, 12), min_size=5, max_size=5), st.lists(st.integers(0, 12), min_size=5, max_size=5))
def test_encoding_is_linear(a, b):
    s = [(x + y) % 13 for x, y in zip(a, b)]
    assert TB.encode(s) == [(x + y) % 13 for x, y in zip(TB.encode(a), TB.encode(b))]


def test_generator_rank_and_rows():
    for code in (TB, MOD):
        G = code.generator
        assert G.shape == (code.k, code.n) and rank_nullspace(G)[0] == code.k
        for i in range(code.k):
            e = [0] * code.k
            e[i] = 1
            assert list(G.rows[i]) == code.encode(e)


def test_k1_constant_layout():
    code = tamo_barg(5, 1, 2)
    assert code.slots == ((0, 0),)
    assert code.generator.rows == ((1,) * 5,)


def test_construction_errors():
    with pytest.raises(ConstructionError):
        tamo_barg(9, 5, 3)  # s = 1
    with pytest.raises(ConstructionError):
        tamo_barg(10, 4, 3)  # r does not divide k + 1
    with pytest.raises(ConstructionError):
        modified(10, 5, 3)  # n1 > n2
    with pytest.raises(ConstructionError):
        construct("reed-solomon", 10, 5, 3)


def test_tb_repair_everywhere():
    rng = random.Random(1)
    for _ in range(30):
        word = TB.encode([rng.randrange(13) for _ in range(TB.k)])
        for pos in range(TB.n):
            assert len(repair_helpers(TB, pos)) <= TB.r
            damaged = list(word)
            damaged[pos] = None
            assert local_repair(TB, damaged).value == word[pos]


def test_modified_short_block_repair():
    short = MOD.partition.blocks[-1]
    assert all(len(repair_helpers(MOD, i)) == 3 for i in short)
    for row in MOD.generator.rows:
        for pos in short:
            damaged = list(row)
            damaged[pos] = None
            assert local_repair(MOD, damaged).value == row[pos]


def test_modified_full_block_repair_is_surfaced():
    # g^1 carries degree 5 on the full block, so in-block interpolation cannot work
    assert MOD.repairable_blocks() == [False, True]
    damaged = list(MOD.generator.rows[1])
    damaged[0] = None
    with pytest.raises(RepairFailed):
        local_repair(MOD, damaged)


def test_local_repair_needs_one_erasure():
    with pytest.raises(ValueError):
        local_repair(TB, [None, None] + [0] * 8)


def test_distance_within_bounds():
    d_tb = brute_min_distance(LinearCode.from_generator(TB.generator))
    assert TB.designed_distance <= d_tb <= gopalan_bound(LrcParams(10, 5, 3))
    d_mod = brute_min_distance(LinearCode.from_generator(MOD.generator))
    assert d_mod >= MOD.designed_distance
    loc = locality_profile(LinearCode.from_generator(MOD.generator), 5).max
    assert d_mod <= gopalan_bound(LrcParams.relaxed(9, 5, loc))


@pytest.mark.parametrize("n,k,r", [(8, 6, 4), (10, 6, 5)])
def test_modified_equal_blocks_meet_gopalan(n, k, r):
    # with n2 = n1 every block has size r and repair needs r - 1 helpers
    code = modified(n, k, r)
    lin = LinearCode.from_generator(code.generator)
    assert all(code.repairable_blocks())
    assert locality_profile(lin, r).max == r - 1
    assert brute_min_distance(lin) == gopalan_bound(LrcParams(n, k, r - 1))


def test_modified_regime_attains_improved_bound():
    # (10, 6, 5): u + v + n2 - n1 = 2 <= r, locality 4 <= r, d equals the improved bound
    code = modified(10, 6, 5)
    lin = LinearCode.from_generator(code.generator)
    assert locality_profile(lin, 5).max <= 5
    assert brute_min_distance(lin) == improved_bound(LrcParams(10, 6, 5)) == 4


def test_modified_full_blocks_can_exceed_r():
    # with u = 2 the full blocks carry g^2 terms; measured locality is 5, not r - 1 = 2
    code = modified(9, 6, 3)
    lin = LinearCode.from_generator(code.generator)
    assert code.repairable_blocks() == [False, False, True]
    assert locality_profile(lin, 6).values == (5,) * 6 + (2,) * 3
