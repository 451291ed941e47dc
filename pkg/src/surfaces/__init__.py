"""The explicit stable non-planar examples: the dilation cone and the Cantor strip."""

from src.surfaces.cantor import (
    CantorLevel,
    CySets,
    cantor_a,
    cantor_convergence,
    cantor_dt_fn,
    cantor_field,
    cantor_l2_distance,
    cantor_level,
    cantor_limit_profile,
    cantor_profile,
    cantor_sv_quantities,
    cy_sets,
)
from src.surfaces.cone import (
    STABILITY_BUMP,
    ConeCalibrationReport,
    cone_calibration_check,
    cone_contains,
    cone_convergence,
    cone_eps,
    cone_eps_profile,
    cone_field,
    cone_stability_bound,
    g3_lp_integral,
)
from src.surfaces.convergence import ConvergenceReport, fitted_rates

__all__ = [
    "STABILITY_BUMP",
    "CantorLevel",
    "ConeCalibrationReport",
    "ConvergenceReport",
    "CySets",
    "cantor_a",
    "cantor_convergence",
    "cantor_dt_fn",
    "cantor_field",
    "cantor_l2_distance",
    "cantor_level",
    "cantor_limit_profile",
    "cantor_profile",
    "cantor_sv_quantities",
    "cone_calibration_check",
    "cone_contains",
    "cone_convergence",
    "cone_eps",
    "cone_eps_profile",
    "cone_field",
    "cone_stability_bound",
    "cy_sets",
    "fitted_rates",
    "g3_lp_integral",
]
