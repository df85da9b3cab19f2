"""Locally repairable codes: bounds, polynomial and graph constructions, exhaustive oracles."""

from .algebra import FieldElement, Matrix, Poly, PrimeField, annihilator, interpolate, rank_nullspace, solve_erasures
from .bounds import LrcParams, gopalan_bound, improved_bound, ip_distance_bound, psi_bruteforce, psi_closed
from .code import LinearCode

__all__ = [
    "FieldElement",
    "LinearCode",
    "LrcParams",
    "Matrix",
    "Poly",
    "PrimeField",
    "annihilator",
    "gopalan_bound",
    "improved_bound",
    "interpolate",
    "ip_distance_bound",
    "psi_bruteforce",
    "psi_closed",
    "rank_nullspace",
    "solve_erasures",
]
