"""Distance and rate bounds for locally repairable codes.

Covers the Singleton-type bound of Gopalan et al., the min-max integer
program Psi(x) solved by exhaustive enumeration, its closed form x*r + 1 when
n1 <= n2, the resulting improved distance bound, and the two rate bounds for
codes with availability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

IP_GUARD = 8


class BoundNotApplicable(ValueError):
    """The bound's hypothesis does not hold for these parameters."""


class GuardExceeded(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class LrcParams:
    """Length n, dimension k, locality r with 1 <= r < k < n.

    ``strict=False`` relaxes the check to 1 <= r and 1 <= k <= n, which the
    Gopalan bound tolerates (r >= k collapses it to Singleton).
    """

    n: int
    k: int
    r: int
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        n, k, r = self.n, self.k, self.r
        if self.strict:
            if not 1 <= r < k < n:
                raise ValueError(f"need 1 <= r < k < n, got n={n} k={k} r={r}")
        elif not (r >= 1 and 1 <= k <= n):
            raise ValueError(f"need r >= 1 and 1 <= k <= n, got n={n} k={k} r={r}")

    @classmethod
    def relaxed(cls, n: int, k: int, r: int) -> LrcParams:
        return cls(n, k, r, strict=False)

    @property
    def n1(self) -> int:
        return ceil_div(self.n, self.r + 1)

    @property
    def n2(self) -> int:
        return self.n1 * (self.r + 1) - self.n

    @property
    def u(self) -> int:
        return self.k // self.r

    @property
    def v(self) -> int:
        return self.k - self.u * self.r


def gopalan_bound(p: LrcParams) -> int:
    return p.n - p.k + 1 - (ceil_div(p.k, p.r) - 1)


@dataclass(frozen=True)
class IpWitness:
    s: int
    t: tuple[int, ...]
    a: tuple[int, ...]
    value: int


def compositions(total: int, parts: int, minimums: tuple[int, ...] | None = None):
    """All tuples of ``parts`` ints summing to ``total`` with entry i >= minimums[i]."""
    mins = minimums or (0,) * parts
    rest = total - sum(mins)
    if rest < 0:
        return
    # stars and bars over the slack
    for bars in combinations(range(rest + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars + (rest + parts - 1,):
            out.append(b - prev - 1)
            prev = b
        yield tuple(m + o for m, o in zip(mins, out))


def inner_penalty(x: int, t: tuple[int, ...], a: tuple[int, ...]) -> int:
    """max over admissible index sequences of sum_{i<l} (a_{h_i} - t_{h_i}).

    A sequence h_1..h_l of distinct parts is admissible when the first l-1
    t-values sum below x and adding t_{h_l} reaches x. Only the set of the
    first l-1 indices and the choice of h_l matter, so subsets are enumerated.
    """
    s = len(t)
    best = None
    for mask in range(1 << s):
        ts = bs = 0
        for i in range(s):
            if mask >> i & 1:
                ts += t[i]
                bs += a[i] - t[i]
        if ts >= x:
            continue
        if any(not (mask >> j & 1) and ts + t[j] >= x for j in range(s)):
            if best is None or bs > best:
                best = bs
    if best is None:
        raise AssertionError("no admissible sequence; x must not exceed sum(t)")
    return best


def _check_psi_args(x: int, n1: int, n2: int, r: int):
    if n1 < 1 or n2 < 0 or r < 1:
        raise ValueError(f"need n1 >= 1, n2 >= 0, r >= 1 (got {n1}, {n2}, {r})")
    if not 1 <= x <= n1:
        raise ValueError(f"x={x} outside 1..{n1}")
    if n1 > IP_GUARD or n2 > IP_GUARD:
        raise GuardExceeded(f"enumeration guard is n1, n2 <= {IP_GUARD}")


@lru_cache(maxsize=None)
def _penalty_table(n1: int, n2: int) -> dict[int, tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """For each x in 1..n1: the smallest inner penalty over all feasible (t, a).

    Psi(x) = x r + 1 - that penalty, so r factors out and one table serves
    every r. Enumeration is grouped by t; subsets are rows of a 0/1 mask
    matrix, and all a-vectors for that t are scored in one product.
    """
    best: dict[int, tuple[int, tuple[int, ...], tuple[int, ...]]] = {}
    for s in range(1, n1 + 1):
        masks = np.array([[m >> i & 1 for i in range(s)] for m in range(1 << s)], dtype=np.int64)
        for t in compositions(n1, s, (1,) * s):
            tv = np.array(t, dtype=np.int64)
            ts = masks @ tv
            # largest part outside each subset; 0 when the subset is everything
            maxout = np.where(masks == 0, tv[None, :], 0).max(axis=1)
            a_list = list(compositions(n2, s, tuple(ti - 1 for ti in t)))
            if not a_list:
                continue
            B = masks @ (np.array(a_list, dtype=np.int64) - tv[None, :]).T
            for x in range(1, n1 + 1):
                ok = (ts < x) & (ts + maxout >= x)
                pen = B[ok].max(axis=0)
                j = int(np.argmin(pen))
                if x not in best or int(pen[j]) < best[x][0]:
                    best[x] = (int(pen[j]), t, a_list[j])
    return best


def psi_bruteforce(x: int, n1: int, n2: int, r: int) -> tuple[int, IpWitness]:
    """Exact Psi(x) by enumerating every feasible (s, t, a)."""
    _check_psi_args(x, n1, n2, r)
    pen, t, a = _penalty_table(n1, n2)[x]
    value = x * r + 1 - pen
    return value, IpWitness(len(t), t, a, value)


def psi_closed(x: int, r: int) -> int:
    """Psi(x) = x r + 1; valid when n1 <= n2."""
    if x < 1 or r < 1:
        raise ValueError("need x >= 1 and r >= 1")
    return x * r + 1


def ip_eta(p: LrcParams) -> int:
    eta = 0
    for x in range(1, p.n1 + 1):
        value, _ = psi_bruteforce(x, p.n1, p.n2, p.r)
        if value - x < p.k:
            eta = x
    return eta


def ip_distance_bound(p: LrcParams) -> int:
    return p.n - p.k + 1 - ip_eta(p)


def improved_applicable(p: LrcParams) -> bool:
    return p.r >= 2 and p.n1 <= p.n2


def improved_bound(p: LrcParams) -> int:
    if p.r < 2:
        raise BoundNotApplicable("improved bound needs r >= 2")
    if p.n1 > p.n2:
        raise BoundNotApplicable(f"improved bound needs n1 <= n2 (n1={p.n1}, n2={p.n2})")
    return p.n - p.k + 1 - (ceil_div(p.k - 1, p.r - 1) - 1)


def improved_piecewise(p: LrcParams) -> int | None:
    """The (u, v) case split of the improved bound, or None when u + v < 2.

    n - k - u + 1 when u + v <= r, else n - k - u. The second case holds
    while u + v <= 2r - 1, which n1 <= n2 guarantees.
    """
    u, v, r = p.u, p.v, p.r
    if u + v < 2:
        return None
    if u + v <= r:
        return p.n - p.k - u + 1
    if u + v <= 2 * r - 1:
        return p.n - p.k - u
    return None


def availability_rate_upper(r: int, t: int) -> Fraction:
    if r < 1 or t < 1:
        raise ValueError("need r >= 1 and t >= 1")
    out = Fraction(1)
    for i in range(1, t + 1):
        out *= Fraction(i * r, i * r + 1)
    return out


def regular_rate_lower(r: int, t: int) -> Fraction:
    if not 1 <= t <= r + 1:
        raise ValueError("need 1 <= t <= r + 1")
    return 1 - Fraction(t, r + 1)


@dataclass(frozen=True)
class BoundReport:
    params: LrcParams
    gopalan: int
    ip_bound: int | None
    improved: int | None
    piecewise: int | None
    notes: tuple[str, ...] = ()

    CSV_HEADER = "n,k,r,n1,n2,gopalan,ip,improved,applicable"

    @property
    def applicable(self) -> bool:
        return self.improved is not None

    def to_text(self) -> str:
        p = self.params

        def fmt(v, missing):
            return missing if v is None else str(v)

        lines = [
            f"n={p.n}",
            f"k={p.k}",
            f"r={p.r}",
            f"n1={p.n1}",
            f"n2={p.n2}",
            f"u={p.u}",
            f"v={p.v}",
            f"gopalan={self.gopalan}",
            f"ip={fmt(self.ip_bound, 'not-computed')}",
            f"improved={fmt(self.improved, 'not-applicable')}",
            f"piecewise={fmt(self.piecewise, 'not-applicable')}",
        ]
        lines += [f"note={n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def csv_row(self) -> str:
        p = self.params
        ip = "" if self.ip_bound is None else self.ip_bound
        imp = "" if self.improved is None else self.improved
        return f"{p.n},{p.k},{p.r},{p.n1},{p.n2},{self.gopalan},{ip},{imp},{int(self.applicable)}"


def bound_report(p: LrcParams, ip_guard: int = IP_GUARD) -> BoundReport:
    notes = []
    ip = None
    if p.n1 <= ip_guard and p.n2 <= ip_guard and p.n1 <= IP_GUARD and p.n2 <= IP_GUARD:
        ip = ip_distance_bound(p)
    else:
        notes.append(f"ip bound skipped: n1={p.n1}, n2={p.n2} exceed guard {ip_guard}")
    improved = piecewise = None
    try:
        improved = improved_bound(p)
        piecewise = improved_piecewise(p)
        if improved < gopalan_bound(p):
            notes.append("improved bound strictly tighter than gopalan")
    except BoundNotApplicable as e:
        notes.append(f"improved not applicable: {e}")
    return BoundReport(p, gopalan_bound(p), ip, improved, piecewise, tuple(notes))
