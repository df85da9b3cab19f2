"""Linear [n, k] codes over GF(p) held by generator and/or parity-check matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .algebra import Matrix, PrimeField, rank_nullspace


@dataclass(frozen=True)
class LinearCode:
    """A linear code; at least one of ``generator`` / ``parity`` must be set.

    The missing matrix is derived on demand as a null space. ``generator``
    rows may be dependent (a corrupted or redundant input); ``k`` is always
    the rank, and ``generator_rank_ok`` tells whether G had full row rank.
    """

    field: PrimeField
    generator: Matrix | None = None
    parity: Matrix | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.generator is None and self.parity is None:
            raise ValueError("need a generator or a parity-check matrix")
        for M in (self.generator, self.parity):
            if M is not None and M.field != self.field:
                raise ValueError("matrix field differs from code field")

    @classmethod
    def from_generator(cls, G: Matrix, name: str = "") -> LinearCode:
        return cls(G.field, generator=G, name=name)

    @classmethod
    def from_parity(cls, H: Matrix, name: str = "") -> LinearCode:
        return cls(H.field, parity=H, name=name)

    @property
    def q(self) -> int:
        return self.field.modulus

    @property
    def n(self) -> int:
        return (self.generator or self.parity).ncols

    @cached_property
    def G(self) -> Matrix:
        """Full-rank generator (a basis of the code)."""
        if self.generator is not None:
            red, piv = self.generator.rref()
            return Matrix(self.field, red.rows[: len(piv)], self.n)
        _, basis = rank_nullspace(self.parity)
        return Matrix.from_rows(self.field, basis, self.n)

    @cached_property
    def H(self) -> Matrix:
        if self.parity is not None:
            return self.parity
        _, basis = rank_nullspace(self.generator)
        return Matrix.from_rows(self.field, basis, self.n)

    @property
    def k(self) -> int:
        return len(self.G.rows)

    @property
    def generator_rank_ok(self) -> bool:
        return self.generator is None or self.k == len(self.generator.rows)

    def contains(self, word) -> bool:
        return not any(self.H.mul_vec(word))

    def encode(self, message) -> list[int]:
        G = self.generator if self.generator is not None else self.G
        p = self.q
        return [sum(m * g for m, g in zip(message, col)) % p for col in zip(*G.rows)]

    def __str__(self):
        tag = f"{self.name} " if self.name else ""
        return f"{tag}[{self.n},{self.k}]_{self.q}"
