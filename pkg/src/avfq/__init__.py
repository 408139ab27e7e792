"""Isomorphism classes of abelian varieties over finite fields with
commutative endomorphism algebra: Tate-module classes away from p,
Dieudonne-module classes at p via a global semilinear model, endomorphism
rings, Picard groups, and per-order statistics."""

__version__ = "0.1.0"

from .intpoly import IntPoly, QPoly
from .weil import WeilData, parse_label, weil_from_poly, build_algebra
from .assembly import IsogenyClassComputation, run_isogeny_class

__all__ = [
    "IntPoly", "QPoly", "WeilData", "parse_label", "weil_from_poly",
    "build_algebra", "IsogenyClassComputation", "run_isogeny_class",
    "__version__",
]
