"""Exact signature calculus for knot concordance and a planner for 2-torsion families."""
from .exact_algebra import AlgebraicReal, alg_compare, alg_cos_rational_angle, alg_cos_theta_m, alg_from_rational
from .knotcalc import MatrixKnot, SpectralKnot, cable_d1, connected_sum, copies, horn_knot, mirror, unknot
from .laurent import LaurentPoly
from .seifert import SeifertMatrix, alexander, arf, signature_at
from .stepfn import Angle, StepFunction

__version__ = "0.1.0"

__all__ = [
    "AlgebraicReal",
    "alg_compare",
    "alg_cos_rational_angle",
    "alg_cos_theta_m",
    "alg_from_rational",
    "MatrixKnot",
    "SpectralKnot",
    "cable_d1",
    "connected_sum",
    "copies",
    "horn_knot",
    "mirror",
    "unknot",
    "LaurentPoly",
    "SeifertMatrix",
    "alexander",
    "arf",
    "signature_at",
    "Angle",
    "StepFunction",
]
