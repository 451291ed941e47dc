"""Graphical strips generated by a nondecreasing profile a(τ)."""

from src.strips.calibration import (
    CalibrationReport,
    calibration_check,
    calibration_nu,
    nu_ambient,
    nu_divergence,
    sample_points,
)
from src.strips.profiles import (
    StripProfile,
    constant_profile,
    load_profile_table,
    table_profile,
)
from src.strips.strip import (
    strip_field,
    strip_forward,
    strip_second_variation,
    strip_second_variation_terms,
    strip_seams,
    strip_tau,
    tau_seams,
)

__all__ = [
    "CalibrationReport",
    "StripProfile",
    "calibration_check",
    "calibration_nu",
    "constant_profile",
    "load_profile_table",
    "nu_ambient",
    "nu_divergence",
    "sample_points",
    "strip_field",
    "strip_forward",
    "strip_second_variation",
    "strip_second_variation_terms",
    "strip_seams",
    "strip_tau",
    "table_profile",
    "tau_seams",
]
