"""Exact arithmetic over prime fields: elements, polynomials, dense matrices.

Values are stored as plain ints reduced mod p; ``FieldElement`` and
``Poly.coefficients`` are the typed views. GF(2) matrices additionally have a
bit-packed elimination path (rows as Python ints) with the same contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_MODULUS = 2**31


class FieldMismatch(ValueError):
    pass


class DecodingError(ValueError):
    pass


class InconsistentErasures(DecodingError):
    pass


class AmbiguousErasures(DecodingError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for f in range(3, math.isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    modulus: int

    def __post_init__(self):
        if not (2 <= self.modulus < MAX_MODULUS) or not is_prime(self.modulus):
            raise ValueError(f"modulus must be a prime below 2^31, got {self.modulus}")

    @property
    def p(self) -> int:
        return self.modulus

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.modulus, self)

    def __repr__(self):
        return f"GF({self.modulus})"

    def elements(self) -> list[FieldElement]:
        return [FieldElement(v, self) for v in range(self.modulus)]

    # int-level helpers used on hot paths
    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return pow(a, self.modulus - 2, self.modulus)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero ``a``."""
        a %= self.modulus
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.modulus - 1
        for f in prime_factors(n):
            while n % f == 0 and pow(a, n // f, self.modulus) == 1:
                n //= f
        return n

    def element_of_order(self, d: int) -> int:
        """Smallest element whose multiplicative order is exactly ``d``."""
        if d < 1 or (self.modulus - 1) % d:
            raise ValueError(f"{d} does not divide {self.modulus - 1}")
        for a in range(1, self.modulus):
            if self.order(a) == d:
                return a
        raise AssertionError("unreachable for prime modulus")

    def subgroup(self, d: int) -> list[int]:
        """Order-``d`` multiplicative subgroup, listed as powers of its smallest generator."""
        h = self.element_of_order(d)
        return [pow(h, i, self.modulus) for i in range(d)]


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.modulus:
            raise ValueError(f"{self.value} is not reduced mod {self.field.modulus}")

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field!r} and {b.field!r}")
            return b.value
        if isinstance(b, int):
            return b % self.field.modulus
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(v % self.field.modulus, self.field)

    def __add__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, b):
        o = self._other(b)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * self.field.inv(o))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return self._wrap(pow(self.value, e, self.field.modulus))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.modulus})"


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    field: PrimeField
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.field.modulus
        object.__setattr__(self, "coeffs", _trim([int(c) % p for c in self.coeffs]))

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: PrimeField, degree: int, c: int = 1) -> Poly:
        return cls(field, (0,) * degree + (c,))

    @property
    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(c, self.field) for c in self.coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: Poly):
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine {self.field!r} and {other.field!r}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(self.field, [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> Poly:
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, FieldElement)):
            c = int(other)
            return Poly(self.field, [c * x for x in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        p = self.field.modulus
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + x * y) % p
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        out = Poly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.modulus
        rem = list(self.coeffs)
        dd = other.degree
        lead_inv = self.field.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] * lead_inv % p
            if c:
                quot[i - dd] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - dd + j] = (rem[i - dd + j] - c * y) % p
        return Poly(self.field, quot), Poly(self.field, rem[:dd])

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        return FieldElement(self.eval_int(int(x)), self.field)

    def eval_int(self, x: int) -> int:
        p = self.field.modulus
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def evaluate(self, xs: Iterable[int]) -> list[int]:
        return [self.eval_int(int(x)) for x in xs]

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return " + ".join(reversed(terms)) + f" over GF({self.field.modulus})"


def _ints(field: PrimeField, xs) -> list[int]:
    out = []
    for x in xs:
        if isinstance(x, FieldElement) and x.field != field:
            raise FieldMismatch(f"point from {x.field!r} used in {field!r}")
        out.append(int(x) % field.modulus)
    return out


def annihilator(field: PrimeField, points: Iterable) -> Poly:
    """Monic polynomial prod(x - a) over the given distinct points."""
    pts = _ints(field, points)
    if not pts:
        raise ValueError("annihilator of an empty set is undefined")
    if len(set(pts)) != len(pts):
        raise ValueError("annihilator points must be distinct")
    out = Poly.constant(field, 1)
    for a in pts:
        out = out * Poly(field, (-a, 1))
    return out


def interpolate(field: PrimeField, points: Sequence[tuple]) -> Poly:
    """Lagrange interpolation through (x, y) pairs with distinct x."""
    xs = _ints(field, [x for x, _ in points])
    ys = _ints(field, [y for _, y in points])
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation x-coordinates must be distinct")
    p = field.modulus
    out = Poly(field)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = Poly.constant(field, 1)
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Poly(field, (-xj, 1))
                den = den * (xi - xj) % p
        out = out + num * (yi * field.inv(den) % p)
    return out


@dataclass(frozen=True)
class Matrix:
    """Dense m x n matrix over GF(p); entries are reduced ints."""

    field: PrimeField
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
        p = field.modulus
        rs = tuple(tuple(int(v) % p for v in row) for row in rows)
        if ncols is None:
            if not rs:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix rows")
        return cls(field, rs, ncols)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> Matrix:
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.field)

    def transpose(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else (), len(self.rows))

    def columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx))

    def mul_vec(self, v: Sequence[int]) -> list[int]:
        p = self.field.modulus
        return [sum(a * b for a, b in zip(row, v)) % p for row in self.rows]

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != len(other.rows):
            raise ValueError("shape mismatch")
        p = self.field.modulus
        cols = list(zip(*other.rows)) if other.rows else []
        return Matrix(
            self.field,
            tuple(tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols) for row in self.rows),
            other.ncols,
        )

    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form and pivot columns.

        Pivot is the first nonzero entry at or below the current row
        (lowest row index wins).
        """
        p = self.field.modulus
        work = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            if row == len(work):
                break
            piv = next((i for i in range(row, len(work)) if work[i][col]), None)
            if piv is None:
                continue
            work[row], work[piv] = work[piv], work[row]
            inv = self.field.inv(work[row][col])
            work[row] = [x * inv % p for x in work[row]]
            for i in range(len(work)):
                if i != row and work[i][col]:
                    c = work[i][col]
                    work[i] = [(x - c * y) % p for x, y in zip(work[i], work[row])]
            pivots.append(col)
            row += 1
        return Matrix.from_rows(self.field, work, self.ncols), pivots

    def rank(self) -> int:
        return rank_nullspace(self)[0]

    def to_text(self) -> str:
        m, n = self.shape
        lines = [f"{m} {n} {self.field.modulus}"]
        lines += [" ".join(str(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Matrix:
        if not text.endswith("\n"):
            raise ValueError("matrix text must end with a newline")
        lines = text.splitlines()
        try:
            m, n, q = (int(t) for t in lines[0].split())
        except (IndexError, ValueError):
            raise ValueError("matrix header must be 'm n q'") from None
        body = lines[1:]
        if len(body) != m:
            raise ValueError(f"expected {m} rows, found {len(body)}")
        rows = []
        for line in body:
            vals = [int(t) for t in line.split()]
            if len(vals) != n or any(not 0 <= v < q for v in vals):
                raise ValueError(f"bad matrix row: {line!r}")
            rows.append(vals)
        return cls.from_rows(PrimeField(q), rows, n)


def _nullspace_from_rref(rref_rows: Sequence[Sequence[int]], pivots: list[int], n: int, p: int) -> list[tuple[int, ...]]:
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref_rows[r][free]) % p
        basis.append(tuple(v))
    return basis


def pack_rows(M: Matrix) -> list[int]:
    return [sum(1 << j for j, v in enumerate(row) if v) for row in M.rows]


def gf2_rref_packed(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    work = list(rows)
    pivots = []
    row = 0
    for col in range(ncols):
        if row == len(work):
            break
        bit = 1 << col
        piv = next((i for i in range(row, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        for i in range(len(work)):
            if i != row and work[i] & bit:
                work[i] ^= work[row]
        pivots.append(col)
        row += 1
    return work[: len(pivots)], pivots


def gf2_rank_nullspace(M: Matrix) -> tuple[int, list[tuple[int, ...]]]:
    if M.field.modulus != 2:
        raise ValueError("bit-packed path is GF(2) only")
    n = M.ncols
    red, pivots = gf2_rref_packed(pack_rows(M), n)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (red[r] >> free) & 1
        basis.append(tuple(v))
    return len(pivots), basis


def rank_nullspace(M: Matrix, packed: bool | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Rank and a null-space basis of M (vectors v with M v = 0).

    Basis vectors are read off the RREF, one per free column, so the result
    is canonical. ``packed`` selects the GF(2) bit-packed path; by default it
    is used whenever p = 2.
    """
    if packed is None:
        packed = M.field.modulus == 2
    if packed:
        return gf2_rank_nullspace(M)
    red, pivots = M.rref()
    return len(pivots), _nullspace_from_rref(red.rows, pivots, M.ncols, M.field.modulus)


def solve(M: Matrix, b: Sequence[int]) -> list[int] | None:
    """One solution x of M x = b, or None when inconsistent."""
    p = M.field.modulus
    aug = Matrix.from_rows(M.field, [list(r) + [bi] for r, bi in zip(M.rows, b)], M.ncols + 1)
    red, pivots = aug.rref()
    if M.ncols in pivots:
        return None
    x = [0] * M.ncols
    for r, pc in enumerate(pivots):
        x[pc] = red.rows[r][-1] % p
    return x


def solve_erasures(H: Matrix, word: Sequence[int | None]) -> list[int]:
    """Fill erased (None) positions so that H c = 0.

    Raises InconsistentErasures when the known symbols fit no codeword and
    AmbiguousErasures when the erased columns of H are linearly dependent.
    """
    p = H.field.modulus
    n = H.ncols
    if len(word) != n:
        raise ValueError(f"word length {len(word)} != {n}")
    erased = [j for j, w in enumerate(word) if w is None]
    known = [j for j, w in enumerate(word) if w is not None]
    syndrome = [(-sum(row[j] * word[j] for j in known)) % p for row in H.rows]
    if not erased:
        if any(syndrome):
            raise InconsistentErasures("word is not a codeword")
        return [int(w) % p for w in word]
    HE = H.columns(erased)
    x = solve(HE, syndrome)
    if x is None:
        raise InconsistentErasures("known symbols are inconsistent with every codeword")
    if rank_nullspace(HE)[0] < len(erased):
        raise AmbiguousErasures(f"{len(erased)} erasures have more than one completion")
    out = [int(w) % p if w is not None else 0 for w in word]
    for j, v in zip(erased, x):
        out[j] = v
    return out
