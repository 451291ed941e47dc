"""Numerical kernels: quadrature, differences, roots, flows, Rayleigh quotient."""

from src.numerics.differences import fd_partial
from src.numerics.flow import (
    flow_batch,
    flow_semigroup_check,
    flow_separation_check,
    ode_flow,
)
from src.numerics.quadrature import integrate1d, integrate2d
from src.numerics.rayleigh import rayleigh_closed_form, rayleigh_min
from src.numerics.roots import bisect_monotone
from src.numerics.types import (
    NO_SEAMS,
    WHOLE_PLANE,
    Curve1D,
    QuadratureSpec,
    QuadResult,
    RayleighProblem,
    Rect,
    Seam,
    SeamSet,
    parabola_seam,
    t_seam,
    y_seam,
)

__all__ = [
    "NO_SEAMS",
    "WHOLE_PLANE",
    "Curve1D",
    "QuadResult",
    "QuadratureSpec",
    "RayleighProblem",
    "Rect",
    "Seam",
    "SeamSet",
    "bisect_monotone",
    "fd_partial",
    "flow_batch",
    "flow_semigroup_check",
    "flow_separation_check",
    "integrate1d",
    "integrate2d",
    "ode_flow",
    "parabola_seam",
    "rayleigh_closed_form",
    "rayleigh_min",
    "t_seam",
    "y_seam",
]
