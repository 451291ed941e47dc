"""Lagrangian parametrizations and the quadratic profile of characteristics."""

from src.lagrangian.parametrization import (
    AxiomReport,
    ChangeOfVariablesReport,
    LagrangianMap,
    PulledBackBump,
    area_formula_check,
    build_parametrization,
    change_of_variables_check,
    check_axioms,
    inverse_map,
    lagrangian_first_variation,
)
from src.lagrangian.profile import (
    ProfileReport,
    QuadraticProfile,
    Verdict,
    bernstein_verdict,
    fit_quadratic,
    lagrangian_second_variation,
    lagrangian_second_variation_terms,
    profile_constraints_check,
)

__all__ = [
    "AxiomReport",
    "ChangeOfVariablesReport",
    "LagrangianMap",
    "ProfileReport",
    "PulledBackBump",
    "QuadraticProfile",
    "Verdict",
    "area_formula_check",
    "bernstein_verdict",
    "build_parametrization",
    "change_of_variables_check",
    "check_axioms",
    "fit_quadratic",
    "inverse_map",
    "lagrangian_first_variation",
    "lagrangian_second_variation",
    "lagrangian_second_variation_terms",
    "profile_constraints_check",
]
