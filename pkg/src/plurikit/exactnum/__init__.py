"""Exact scalars, polynomials, matrices and Mobius maps over Q(i)."""

from .scalars import GaussianRational, GR, ZERO, ONE, I, as_gr, parse_rational
from .poly import Poly1, BiPoly, PolyMatrix, bipoly_det, sigma_transform, squarefree_part, bipoly_gcd
from .linalg import rref_nullspace, rank, det, inv, exact
from .mobius import Mobius, mobius_hermitian_factor

__all__ = [
    "GaussianRational",
    "GR",
    "ZERO",
    "ONE",
    "I",
    "as_gr",
    "parse_rational",
    "Poly1",
    "BiPoly",
    "PolyMatrix",
    "bipoly_det",
    "sigma_transform",
    "squarefree_part",
    "bipoly_gcd",
    "rref_nullspace",
    "rank",
    "det",
    "inv",
    "exact",
    "Mobius",
    "mobius_hermitian_factor",
]
