"""Fields, test functions and the area variations."""

from src.variation.bumps import TestBump, bump_grid, mollifier, mollifier_prime
from src.variation.fields import (
    ScalarField,
    custom_field,
    linear_t_field,
    plane_field,
    square_t_field,
)
from src.variation.functionals import (
    VariationReport,
    first_variation,
    first_variation_result,
    graph_area,
    graph_area_result,
    graph_normal,
    intrinsic_gradient,
    second_variation,
    second_variation_result,
    variation_fd_check,
    variation_report,
)

__all__ = [
    "ScalarField",
    "TestBump",
    "VariationReport",
    "bump_grid",
    "custom_field",
    "first_variation",
    "first_variation_result",
    "graph_area",
    "graph_area_result",
    "graph_normal",
    "intrinsic_gradient",
    "linear_t_field",
    "mollifier",
    "mollifier_prime",
    "plane_field",
    "second_variation",
    "second_variation_result",
    "square_t_field",
    "variation_fd_check",
    "variation_report",
]
