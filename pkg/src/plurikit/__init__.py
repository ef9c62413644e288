"""Exact and numerical tools for pluricomplex pairs, their spectral curves and monopole data."""

from .plurilinear import (
    PluriPair,
    Verdict,
    hypercomplex_pair,
    random_pair,
    validate,
)
from .p1p1coh import Resolution, sheaf_cohomology, verify_regularity
from .curvecoh import PlaneCurve, curve_from_poly
from .monopole import axisym_build, massless_build

__version__ = "0.1.0"

__all__ = [
    "PluriPair",
    "Verdict",
    "hypercomplex_pair",
    "random_pair",
    "validate",
    "Resolution",
    "sheaf_cohomology",
    "verify_regularity",
    "PlaneCurve",
    "curve_from_poly",
    "axisym_build",
    "massless_build",
    "__version__",
]
