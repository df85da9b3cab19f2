"""Exhaustive oracles for distance, locality and availability, and the
cross-check that binds measured values to claims and bounds."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .algebra import Matrix, solve
from .bounds import (
    IP_GUARD,
    BoundNotApplicable,
    LrcParams,
    gopalan_bound,
    improved_bound,
    ip_distance_bound,
)
from .code import LinearCode

DISTANCE_GUARD = 2**24
SUPPORT_GUARD = 2_000_000
DUAL_WEIGHT_CAP = 6


class GuardExceeded(ValueError):
    pass


def _codeword_table(rows: np.ndarray, q: int) -> np.ndarray:
    """All q^len(rows) combinations of ``rows``, lexicographic in the message."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows[::-1]:
        table = np.concatenate([(table + c * row) % q for c in range(q)])
    return table


def _gf2_min_distance(G: Matrix) -> int:
    k, n = G.shape
    words = [sum(1 << j for j, v in enumerate(row) if v) for row in G.rows]
    lo_bits = min(k, 16)
    lo = np.zeros(1, dtype=np.uint64)
    for w in words[:lo_bits]:
        lo = np.concatenate([lo, lo ^ np.uint64(w)])
    hi = words[lo_bits:]
    best = n + 1
    acc = 0
    # outer loop walks the high message bits in Gray-code order
    for step in range(1 << len(hi)):
        if step:
            acc ^= hi[(step & -step).bit_length() - 1]
        weights = np.bitwise_count(lo ^ np.uint64(acc))
        if step == 0:
            weights = weights[1:]
        best = min(best, int(weights.min()))
    return best


def brute_min_distance(code: LinearCode, guard: int = DISTANCE_GUARD) -> int:
    """Minimum weight over all nonzero codewords, enumerating q^k messages."""
    G = code.G
    k, n = G.shape
    q = code.q
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    if q**k > guard:
        raise GuardExceeded(f"q^k = {q}^{k} exceeds the enumeration guard {guard}")
    if q == 2 and n <= 64:
        return _gf2_min_distance(G)
    rows = np.array(G.rows, dtype=np.int64)
    lo_k = 0
    while lo_k < k and q ** (lo_k + 1) <= 200_000:
        lo_k += 1
    lo = _codeword_table(rows[k - lo_k :], q)
    best = n + 1
    hi_rows = rows[: k - lo_k]
    for idx, msg in enumerate(np.ndindex(*(q,) * (k - lo_k))):
        base = (np.array(msg, dtype=np.int64) @ hi_rows) % q if len(msg) else 0
        weights = np.count_nonzero((lo + base) % q, axis=1)
        if idx == 0:
            weights = weights[1:]
        if len(weights):
            best = min(best, int(weights.min()))
    return best


def support_min_distance(code: LinearCode, guard: int = SUPPORT_GUARD) -> int:
    """Smallest w such that some w columns of H are linearly dependent.

    Exhaustive over column subsets in order of size, so it is exact; it is
    the oracle of choice when q^k is out of reach but n - k is small.
    """
    H = code.H
    n = code.n
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    cols = [tuple(c) for c in zip(*H.rows)] if H.rows else [() for _ in range(n)]
    spent = 0
    for w in range(1, len(H.rows) + 2):
        spent += comb(n, w)
        if spent > guard:
            raise GuardExceeded(f"support enumeration beyond weight {w - 1} exceeds guard {guard}")
        for S in combinations(range(n), w):
            if _rank([cols[j] for j in S], code.q) < w:
                return w
    raise AssertionError("n - k + 1 columns are always dependent")


def min_distance(code: LinearCode, guard: int = DISTANCE_GUARD, support_guard: int = SUPPORT_GUARD) -> tuple[int, str]:
    """Exact distance and the oracle used ('enumeration' or 'support')."""
    if code.q**code.k <= guard:
        return brute_min_distance(code, guard), "enumeration"
    return support_min_distance(code, support_guard), "support"


# -- span tests on column vectors ------------------------------------------


class _Echelon:
    """Incremental echelon basis over GF(p) for vectors given as int tuples."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, list[int]]] = []

    def reduce(self, v) -> list[int]:
        p = self.p
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], self.p - 2, self.p)
        self.rows.append((piv, [x * inv % self.p for x in v]))
        return True

    def copy(self) -> _Echelon:
        e = _Echelon(self.p)
        e.rows = list(self.rows)
        return e


def _rank(vectors, p: int) -> int:
    e = _Echelon(p)
    return sum(e.add(v) for v in vectors)


def _repair_sets(G: Matrix, i: int, max_size: int, first_only: bool):
    """Minimal sets T (i not in T, |T| <= max_size) with column i in span(G_T).

    Sets are produced in order of size. Columns of a minimal T are
    independent, so dependent extensions are pruned.
    """
    p = G.field.modulus
    cols = [tuple(c) for c in zip(*G.rows)]
    target = cols[i]
    others = [j for j in range(len(cols)) if j != i]
    found: list[tuple[int, ...]] = []
    if not any(target):
        yield ()
        return

    def dfs(start, chosen, ech, depth):
        if len(chosen) == depth:
            if not any(ech.reduce(target)):
                T = tuple(chosen)
                if not any(set(f) <= set(T) for f in found):
                    found.append(T)
                    yield T
            return
        for idx in range(start, len(others)):
            j = others[idx]
            e2 = ech.copy()
            if not e2.add(cols[j]):
                continue
            chosen.append(j)
            yield from dfs(idx + 1, chosen, e2, depth)
            chosen.pop()

    for depth in range(1, max_size + 1):
        for T in dfs(0, [], _Echelon(p), depth):
            yield T
            if first_only:
                return


def _dual_witness(G: Matrix, i: int, T: tuple[int, ...]) -> tuple[int, ...]:
    """Dual codeword supported on T + {i}, with coordinate i equal to -1."""
    p = G.field.modulus
    y = solve(G.columns(list(T)), [row[i] for row in G.rows]) if T else []
    z = [0] * G.ncols
    for j, c in zip(T, y):
        z[j] = c
    z[i] = p - 1
    return tuple(z)


def _check_subset_guard(n: int, cap: int, guard: int):
    total = sum(comb(n - 1, w) for w in range(cap + 1)) * n
    if cap > DUAL_WEIGHT_CAP + 1 or total > guard:
        raise GuardExceeded(f"dual sweep up to {cap} helpers over n = {n} exceeds guard")


@dataclass(frozen=True)
class LocalityProfile:
    cap: int
    values: tuple[int | None, ...]
    witnesses: tuple[tuple[int, ...] | None, ...]

    @property
    def max(self) -> int | None:
        if any(v is None for v in self.values):
            return None
        return max(self.values, default=0)


def locality_profile(code: LinearCode, cap: int, guard: int = SUPPORT_GUARD) -> LocalityProfile:
    """Per coordinate, the fewest helpers (<= cap) that determine it, or None.

    A helper set T repairs i exactly when column i of G lies in the span of
    the columns T, i.e. some dual codeword of weight |T| + 1 covers i.
    """
    G = code.G
    _check_subset_guard(code.n, cap, guard)
    best = _smallest_circuits(G, cap + 1)
    values = tuple(None if C is None else len(C) - 1 for C in best)
    wits = tuple(
        None if C is None else _dual_witness(G, i, tuple(j for j in C if j != i)) for i, C in enumerate(best)
    )
    return LocalityProfile(cap, values, wits)


def _smallest_circuits(G: Matrix, max_size: int) -> list[tuple[int, ...] | None]:
    """For each column, a smallest circuit (minimal dependent column set) through it.

    DFS over independent sets S of size < max_size. Alongside S it keeps every
    column reduced modulo span(S) (R) and its coordinates on S (C), so adding
    a column is one rank-1 update; a column that reduces to zero closes the
    circuit {j} + support of its coordinates. Every circuit of size
    <= max_size arises this way, from S = circuit minus its largest index.
    """
    p = G.field.modulus
    k, n = G.shape
    best: list[tuple[int, ...] | None] = [None] * n

    def record(circuit):
        for i in circuit:
            if best[i] is None or len(circuit) < len(best[i]):
                best[i] = circuit

    def dfs(S, R, C):
        zero = ~R.any(axis=0)
        for j in np.flatnonzero(zero):
            if j not in S:
                supp = [S[t] for t in np.flatnonzero(C[:, j])] if len(S) else []
                circuit = tuple(sorted(supp + [int(j)]))
                if len(circuit) <= max_size:
                    record(circuit)
        if len(S) + 1 >= max_size:
            return
        start = S[-1] + 1 if S else 0
        for s in range(start, n):
            if zero[s]:
                continue
            t = int(np.flatnonzero(R[:, s])[0])
            f = R[t] * pow(int(R[t, s]), -1, p) % p
            R2 = (R - np.outer(R[:, s], f)) % p
            C2 = np.vstack([(C - np.outer(C[:, s], f)) % p, f[None, :]]) if len(S) else f[None, :]
            dfs(S + [s], R2, C2)

    dfs([], np.array(G.rows, dtype=np.int64).reshape(k, n), np.zeros((0, n), dtype=np.int64))
    return best


def _disjoint_pick(sets: list[tuple[int, ...]], t: int) -> list[tuple[int, ...]] | None:
    def rec(start, used, picked):
        if len(picked) == t:
            return list(picked)
        for idx in range(start, len(sets)):
            S = set(sets[idx])
            if S & used:
                continue
            picked.append(sets[idx])
            out = rec(idx + 1, used | S, picked)
            if out:
                return out
            picked.pop()
        return None

    return rec(0, set(), [])


@dataclass(frozen=True)
class AvailabilityResult:
    ok: bool
    r: int
    t: int
    witnesses: dict[int, list[tuple[int, ...]]]
    failing: tuple[int, ...]

    def __bool__(self):
        return self.ok


def availability_check(code: LinearCode, r: int, t: int, guard: int = SUPPORT_GUARD) -> AvailabilityResult:
    """For every coordinate look for t repair sets of size <= r that are
    pairwise disjoint; witnesses are the corresponding dual codewords."""
    G = code.G
    _check_subset_guard(code.n, r, guard)
    witnesses: dict[int, list[tuple[int, ...]]] = {}
    failing = []
    for i in range(code.n):
        sets = list(_repair_sets(G, i, r, first_only=False))
        pick = _disjoint_pick(sets, t)
        if pick is None:
            failing.append(i)
        else:
            witnesses[i] = [_dual_witness(G, i, T) for T in pick]
    return AvailabilityResult(not failing, r, t, witnesses, tuple(failing))


# -- cross check -----------------------------------------------------------


@dataclass(frozen=True)
class Claims:
    d_lower: int | None = None
    locality: int | None = None
    availability: int | None = None


@dataclass
class VerificationReport:
    name: str
    n: int
    k: int
    q: int
    d: int | None
    d_method: str
    claims: Claims
    profile: LocalityProfile | None
    availability: AvailabilityResult | None
    bounds: dict[str, int] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    runtime: float = 0.0

    CSV_HEADER = "name,n,k,q,d,d_method,locality,claimed_d,claimed_r,claimed_t,passed"

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def measured_locality(self) -> int | None:
        return self.profile.max if self.profile else None

    def to_text(self, timing: bool = False) -> str:
        def fmt(v):
            return "none" if v is None else str(v)

        lines = [
            f"name={self.name}",
            f"n={self.n}",
            f"k={self.k}",
            f"q={self.q}",
            f"d={fmt(self.d)}",
            f"d_method={self.d_method}",
            f"claimed_d_lower={fmt(self.claims.d_lower)}",
            f"claimed_locality={fmt(self.claims.locality)}",
            f"claimed_availability={fmt(self.claims.availability)}",
        ]
        if self.profile is not None:
            lines.append(f"locality={fmt(self.measured_locality)}")
            lines.append("locality_profile=" + ",".join(fmt(v) for v in self.profile.values))
        for key, val in self.bounds.items():
            lines.append(f"bound.{key}={val}")
        for key, ok in self.verdicts.items():
            lines.append(f"verdict.{key}={'pass' if ok else 'fail'}")
        lines += [f"note={n}" for n in self.notes]
        lines.append(f"passed={'yes' if self.passed else 'no'}")
        if timing:
            lines.append(f"runtime_s={self.runtime:.3f}")
        return "\n".join(lines) + "\n"

    def csv_row(self) -> str:
        c = self.claims

        def fmt(v):
            return "" if v is None else str(v)

        return ",".join(
            [
                self.name,
                str(self.n),
                str(self.k),
                str(self.q),
                fmt(self.d),
                self.d_method,
                fmt(self.measured_locality),
                fmt(c.d_lower),
                fmt(c.locality),
                fmt(c.availability),
                "1" if self.passed else "0",
            ]
        )


def cross_check(
    code: LinearCode,
    claims: Claims = Claims(),
    distance_guard: int = DISTANCE_GUARD,
    support_guard: int = SUPPORT_GUARD,
    dual_cap: int | None = None,
) -> VerificationReport:
    """Measure d, locality and availability; compare to claims and to every
    bound that applies at the measured locality. Failures land in verdicts."""
    t0 = time.perf_counter()
    report = VerificationReport(code.name or "code", code.n, code.k, code.q, None, "none", claims, None, None)
    report.verdicts["generator_rank"] = code.generator_rank_ok
    if not code.generator_rank_ok:
        report.notes.append("generator rows are linearly dependent")

    if code.k > 0:
        try:
            report.d, report.d_method = min_distance(code, distance_guard, support_guard)
        except GuardExceeded as e:
            report.notes.append(f"distance not measured: {e}")
    if claims.d_lower is not None:
        report.verdicts["distance"] = report.d is not None and report.d >= claims.d_lower

    cap = dual_cap if dual_cap is not None else (claims.locality if claims.locality is not None else None)
    if cap is not None:
        try:
            report.profile = locality_profile(code, cap, support_guard)
        except GuardExceeded as e:
            report.notes.append(f"locality not measured: {e}")
    if claims.locality is not None:
        prof = report.profile
        report.verdicts["locality"] = prof is not None and all(
            v is not None and v <= claims.locality for v in prof.values
        )
    if claims.availability is not None:
        r = claims.locality if claims.locality is not None else report.measured_locality
        if r is None:
            report.verdicts["availability"] = False
            report.notes.append("availability needs a locality to test against")
        else:
            try:
                report.availability = availability_check(code, r, claims.availability, support_guard)
                report.verdicts["availability"] = report.availability.ok
            except GuardExceeded as e:
                report.verdicts["availability"] = False
                report.notes.append(f"availability not checked: {e}")

    if report.d is not None:
        report.bounds["singleton"] = code.n - code.k + 1
        rm = report.measured_locality
        if rm is not None and rm >= 1:
            p = LrcParams.relaxed(code.n, code.k, rm)
            report.bounds["gopalan"] = gopalan_bound(p)
            if 1 <= rm < code.k < code.n:
                sp = LrcParams(code.n, code.k, rm)
                if sp.n1 <= IP_GUARD and sp.n2 <= IP_GUARD:
                    report.bounds["ip"] = ip_distance_bound(sp)
                try:
                    report.bounds["improved"] = improved_bound(sp)
                except BoundNotApplicable:
                    pass
        report.verdicts["bounds"] = all(report.d <= b for b in report.bounds.values())
    report.runtime = time.perf_counter() - t0
    return report
