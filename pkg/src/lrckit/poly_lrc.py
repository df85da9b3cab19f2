"""Polynomial-evaluation LRCs over prime fields.

Evaluation points are unions of multiplicative cosets of an order-b subgroup
H, so g(x) = x^b - c is constant on every block. Two constructions are built
on top of that partition:

* ``tamo_barg``: blocks of size r + 1 and one short block of size s,
  locality r.
* ``modified``: blocks of size r and a short block of size
  s = r - (n2 - n1), intended for the regime n1 <= n2.

Each code is described by a list of message slots (i, j); slot (i, j) carries
the basis polynomial g^j x^i when i < s and g^j x^(i-s) h(x) otherwise, where
h annihilates the short block. Slots are ordered lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Collection, Sequence

from .algebra import FieldElement, Matrix, Poly, PrimeField, annihilator, interpolate, is_prime, rank_nullspace
from .bounds import ceil_div


class ConstructionError(ValueError):
    pass


class RepairFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class EvaluationPartition:
    """Ordered point set A with blocks given as index sets into ``points``."""

    field: PrimeField
    points: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    block_values: tuple[int, ...] | None = None

    def __post_init__(self):
        seen = sorted(i for b in self.blocks for i in b)
        if seen != list(range(len(self.points))):
            raise ValueError("blocks must partition the point indices")
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be distinct")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block_points(self, b: int) -> list[int]:
        return [self.points[i] for i in self.blocks[b]]

    def block_of(self, position: int) -> int:
        for b, idx in enumerate(self.blocks):
            if position in idx:
                return b
        raise IndexError(position)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def smallest_field(block_size: int, n: int) -> PrimeField:
    """Smallest prime p with p = 1 (mod block_size) and p - 1 >= n."""
    p = block_size + 1
    while (p - 1) % block_size or p - 1 < n or not is_prime(p):
        p += 1
    return PrimeField(p)


def coset_partition(
    field: PrimeField, block_size: int, n: int, forbid_remainders: Collection[int] = ()
) -> EvaluationPartition:
    """n points of GF(p)* split into full cosets of the order-``block_size``
    subgroup, then one short block taken from the next coset.

    Coset representatives are the smallest uncovered elements; within a coset
    the points are rep * h^i for the smallest subgroup generator h.
    """
    p = field.modulus
    if block_size < 1 or (p - 1) % block_size:
        raise ConstructionError(f"block size {block_size} does not divide p - 1 = {p - 1}")
    if not 1 <= n <= p - 1:
        raise ConstructionError(f"need 1 <= n <= p - 1 = {p - 1}, got {n}")
    if n % block_size in forbid_remainders:
        raise ConstructionError(f"n mod {block_size} = {n % block_size} is not allowed here")
    H = field.subgroup(block_size)
    covered: set[int] = set()
    points: list[int] = []
    blocks: list[tuple[int, ...]] = []
    while len(points) < n:
        rep = next(a for a in range(1, p) if a not in covered)
        coset = [rep * h % p for h in H]
        covered.update(coset)
        take = coset[: n - len(points)]
        blocks.append(tuple(range(len(points), len(points) + len(take))))
        points.extend(take)
    return EvaluationPartition(field, tuple(points), tuple(blocks))


def block_constant_degrees(part: EvaluationPartition) -> list[int]:
    """Degrees occurring in the algebra of block-constant polynomials of degree < n.

    Independent of any good polynomial: interpolate each block indicator,
    then reduce the coefficient vectors by leading degree.
    """
    F = part.field
    vecs = []
    for b in range(part.m):
        ind = [(x, 1 if i in part.blocks[b] else 0) for i, x in enumerate(part.points)]
        c = list(interpolate(F, ind).coeffs)
        # reversed so the first pivot column is the highest degree
        vecs.append((c + [0] * (part.n - len(c)))[::-1])
    red, piv = Matrix.from_rows(F, vecs, part.n).rref()
    return sorted(part.n - 1 - c for c in piv)


@dataclass(frozen=True)
class GoodPolyAlgebra:
    partition: EvaluationPartition
    g: Poly
    degree_profile: tuple[int, ...]

    def basis_matrix(self) -> Matrix:
        """m x m matrix [g^j(A_i)]; invertible iff 1, g, ..., g^(m-1) span the algebra."""
        part = self.partition
        vals = [self.g.eval_int(part.block_points(i)[0]) for i in range(part.m)]
        p = part.field.modulus
        return Matrix.from_rows(part.field, [[pow(v, j, p) for j in range(part.m)] for v in vals], part.m)


def good_polynomial(part: EvaluationPartition) -> GoodPolyAlgebra:
    """g(x) = x^b - c with b the full block size, shifted to vanish on the last block."""
    F = part.field
    p = F.modulus
    b = max(part.block_sizes)
    if part.m == 1:
        # only constants live on one block; the annihilator is the natural shift
        g = annihilator(F, part.block_points(0))
    else:
        c = pow(part.block_points(part.m - 1)[0], b, p)
        g = Poly.monomial(F, b) - Poly.constant(F, c)
    values = []
    for i in range(part.m):
        vals = {g.eval_int(x) for x in part.block_points(i)}
        if len(vals) != 1:
            raise ConstructionError(f"g is not constant on block {i}")
        values.append(vals.pop())
    if len(set(values)) != len(values):
        raise ConstructionError("good polynomial block values are not distinct")
    profile = tuple(i * b for i in range(part.m))
    algebra = GoodPolyAlgebra(
        EvaluationPartition(F, part.points, part.blocks, tuple(values)), g, profile
    )
    if part.m > 1 and profile[-1] >= part.n:
        raise ConstructionError("g^(m-1) has degree >= n")
    return algebra


@dataclass(frozen=True)
class LrcCode:
    kind: str
    n: int
    k: int
    r: int
    algebra: GoodPolyAlgebra
    slots: tuple[tuple[int, int], ...]
    short_size: int
    degree_cap: int
    claimed_locality: int

    @property
    def field(self) -> PrimeField:
        return self.algebra.partition.field

    @property
    def partition(self) -> EvaluationPartition:
        return self.algebra.partition

    @cached_property
    def h_short(self) -> Poly:
        return annihilator(self.field, self.partition.block_points(self.partition.m - 1))

    def slot_poly(self, i: int, j: int) -> Poly:
        g = self.algebra.g
        F = self.field
        if i < self.short_size:
            return g**j * Poly.monomial(F, i)
        return g**j * Poly.monomial(F, i - self.short_size) * self.h_short

    @cached_property
    def basis(self) -> tuple[Poly, ...]:
        return tuple(self.slot_poly(i, j) for i, j in self.slots)

    def encoding_polynomial(self, message: Sequence) -> Poly:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k = {self.k}")
        out = Poly(self.field)
        for m, B in zip(message, self.basis):
            if int(m):
                out = out + B * int(m)
        return out

    def encode(self, message: Sequence) -> list[int]:
        return self.encoding_polynomial(message).evaluate(self.partition.points)

    @cached_property
    def generator(self) -> Matrix:
        rows = [B.evaluate(self.partition.points) for B in self.basis]
        G = Matrix.from_rows(self.field, rows, self.n)
        if rank_nullspace(G)[0] != self.k:
            raise ConstructionError(f"{self.kind} generator is rank deficient")
        return G

    def block_degree(self, b: int) -> int:
        """Largest degree of any codeword polynomial restricted to block b."""
        hb = annihilator(self.field, self.partition.block_points(b))
        return max((B % hb).degree for B in self.basis)

    def repairable_blocks(self) -> list[bool]:
        return [self.block_degree(b) <= len(blk) - 2 for b, blk in enumerate(self.partition.blocks)]

    @property
    def designed_distance(self) -> int:
        return self.n - self.degree_cap

    def header(self) -> dict[str, str]:
        return {
            "kind": self.kind,
            "n": str(self.n),
            "k": str(self.k),
            "r": str(self.r),
            "q": str(self.field.modulus),
            "blocks": ",".join(str(s) for s in self.partition.block_sizes),
            "degcap": str(self.degree_cap),
            "d_lower": str(self.designed_distance),
            "locality": str(self.claimed_locality),
        }


def tamo_barg(n: int, k: int, r: int, field: PrimeField | None = None) -> LrcCode:
    """Blocks of size r + 1, short block of size s = n mod (r + 1) not in {0, 1};
    requires r | k + 1. Degree cap k + (k+1)/r - 1."""
    if r < 1 or not 1 <= k < n:
        raise ConstructionError(f"need r >= 1 and 1 <= k < n (n={n} k={k} r={r})")
    s = n % (r + 1)
    if s in (0, 1):
        raise ConstructionError(f"n mod (r + 1) = {s}; the construction needs s != 0, 1")
    if (k + 1) % r:
        raise ConstructionError(f"r = {r} must divide k + 1 = {k + 1}")
    field = field or smallest_field(r + 1, n)
    part = coset_partition(field, r + 1, n, forbid_remainders=(0, 1))
    algebra = good_polynomial(part)
    L = (k + 1) // r
    slots = []
    for i in range(r):
        js = range(1, L) if i == s - 1 else range(L)
        slots.extend((i, j) for j in js)
    assert len(slots) == k
    code = LrcCode("tamo_barg", n, k, r, algebra, tuple(slots), s, k + L - 1, r)
    _check_degree(code)
    return code


def modified(n: int, k: int, r: int, field: PrimeField | None = None) -> LrcCode:
    """Blocks of size r, short block of size s = r - (n2 - n1) > 1, for n1 <= n2
    and u + v <= s. Degree cap k + u - 1.

    Slot (i, j) is a candidate for j <= u when i < s and j <= u - 1 otherwise;
    (s - 1, 0) is left out so the short block sees only x^0..x^(s-2). The k
    lowest-degree candidates are used.
    """
    if r < 2 or not 1 <= k < n:
        raise ConstructionError(f"need r >= 2 and 1 <= k < n (n={n} k={k} r={r})")
    n1 = ceil_div(n, r + 1)
    n2 = n1 * (r + 1) - n
    if n1 > n2:
        raise ConstructionError(f"needs n1 <= n2 (n1={n1}, n2={n2})")
    s = r - (n2 - n1)
    if s <= 1:
        raise ConstructionError(f"short block size s = {s} must exceed 1")
    u, v = divmod(k, r)
    if u + v > s:
        raise ConstructionError(f"needs u + v <= s (u={u}, v={v}, s={s})")
    field = field or smallest_field(r, n)
    part = coset_partition(field, r, n)
    assert part.block_sizes[-1] == s
    algebra = good_polynomial(part)
    cands = [(i, j) for i in range(r) for j in range(u + 1 if i < s else u) if (i, j) != (s - 1, 0)]
    cands.sort(key=lambda ij: ij[1] * r + ij[0])
    if len(cands) < k:
        raise ConstructionError(f"only {len(cands)} message slots available for k = {k}")
    slots = tuple(sorted(cands[:k]))
    code = LrcCode("modified", n, k, r, algebra, slots, s, k + u - 1, r - 1)
    _check_degree(code)
    return code


def _check_degree(code: LrcCode):
    top = max(B.degree for B in code.basis)
    if top > code.degree_cap:
        raise ConstructionError(f"basis degree {top} exceeds cap {code.degree_cap}")
    if code.degree_cap >= code.n:
        raise ConstructionError("degree cap must stay below n")


def construct(kind: str, n: int, k: int, r: int, q: int | None = None) -> LrcCode:
    field = PrimeField(q) if q else None
    kind = kind.replace("-", "_")
    if kind == "tamo_barg":
        return tamo_barg(n, k, r, field)
    if kind == "modified":
        return modified(n, k, r, field)
    raise ConstructionError(f"unknown construction {kind!r}")


def local_repair(code: LrcCode, word: Sequence[int | None]) -> FieldElement:
    """Recover the single erased (None) symbol by interpolating within its block.

    Raises RepairFailed when codeword polynomials restricted to that block can
    reach degree |block| - 1, since the survivors then do not determine it.
    """
    erased = [i for i, w in enumerate(word) if w is None]
    if len(erased) != 1:
        raise ValueError(f"expected exactly one erasure, got {len(erased)}")
    pos = erased[0]
    part = code.partition
    b = part.block_of(pos)
    block = part.blocks[b]
    if code.block_degree(b) > len(block) - 2:
        raise RepairFailed(
            f"block {b} carries degree {code.block_degree(b)} on {len(block)} points; "
            f"{len(block) - 1} helpers do not determine the erased symbol"
        )
    helpers = [(part.points[i], word[i]) for i in block if i != pos]
    f = interpolate(code.field, helpers)
    return f(part.points[pos])


def repair_helpers(code: LrcCode, position: int) -> list[int]:
    b = code.partition.block_of(position)
    return [i for i in code.partition.blocks[b] if i != position]
