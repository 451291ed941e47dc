import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, RefusedEvaluation
from src.numerics import Rect
from src.surfaces import cantor_field, cone_eps, cone_field
from src.variation import (
    TestBump,
    bump_grid,
    custom_field,
    first_variation,
    graph_area,
    graph_normal,
    intrinsic_gradient,
    mollifier,
    plane_field,
    second_variation,
    variation_fd_check,
    variation_report,
)

BUMP = TestBump((0.0, 0.5), (0.5, 0.4))
CONE_BUMP = TestBump((1.0, 0.4), (0.3, 0.3))
slopes = st.floats(min_value=-3.0, max_value=3.0)


def test_mollifier_support_and_peak():
    assert mollifier(0.0) == pytest.approx(math.exp(-1.0))
    assert mollifier(1.0) == 0.0 and mollifier(-1.5) == 0.0


def test_bump_grid_covers_region():
    region = Rect(y0=-2.0, y1=2.0, t0=-1.0, t1=2.0)
    bumps = bump_grid(region, 5, 4, 0.3)
    assert len(bumps) == 20
    assert bumps[0].center == (-2.0, -1.0) and bumps[-1].center == (2.0, 2.0)


def test_plane_area():
    region = Rect(y0=0.0, y1=1.0, t0=-1.0, t1=1.0)
    assert graph_area(plane_field(0.3, 0.1), region) == pytest.approx(
        math.sqrt(1.09) * region.area, rel=1e-12
    )


def test_area_is_additive_across_a_seam():
    f, _ = cone_eps(0.1)
    whole = Rect(y0=-1.0, y1=1.5, t0=-0.5, t1=1.0)
    below = whole.model_copy(update={"t1": 0.0})
    above = whole.model_copy(update={"t0": 0.0})
    total = graph_area(f, whole)
    assert graph_area(f, below) + graph_area(f, above) == pytest.approx(total, abs=1e-7)


def test_area_is_monotone_under_inclusion():
    f, _ = cone_eps(0.1)
    outer = Rect(y0=-1.0, y1=1.5, t0=-0.5, t1=1.0)
    inner = Rect(y0=-0.5, y1=1.0, t0=0.0, t1=0.8)
    assert graph_area(f, inner) <= graph_area(f, outer)
    assert graph_area(f, inner) >= inner.area


@settings(max_examples=20, deadline=None)
@given(slopes, slopes)
def test_plane_is_stationary(a, b):
    assert abs(first_variation(plane_field(a, b), BUMP)) <= 1e-7


def test_plane_second_variation_is_positive():
    assert second_variation(plane_field(0.3, 0.1), BUMP) > 0.0


def test_plane_variations_match_finite_differences():
    err_first, err_second = variation_fd_check(plane_field(0.3, 0.1), BUMP)
    assert err_first <= 1e-4
    assert err_second <= 1e-4


def test_curved_field_matches_finite_differences():
    f = custom_field("sine", lambda y, t: 0.3 * np.sin(y + t))
    err_first, err_second = variation_fd_check(f, BUMP)
    assert err_first <= 1e-4
    assert err_second <= 1e-4


@pytest.mark.parametrize(
    "f",
    [custom_field("sine", lambda y, t: 0.3 * np.sin(y + t)), cone_eps(0.1)[0]],
    ids=["sine", "cone_eps"],
)
def test_difference_errors_are_second_order(f):
    bump = CONE_BUMP if f.kind == "cone_eps" else BUMP
    hs = 0.02 / 2.0 ** np.arange(4)
    errors = np.array([variation_fd_check(f, bump, h) for h in hs])
    for column in errors.T:
        assert np.polyfit(np.log(hs), np.log(column), 1)[0] >= 1.9


def test_cone_eps_first_variation_matches_differences():
    err_first, _ = variation_fd_check(cone_eps(0.1)[0], CONE_BUMP, h=1e-3)
    assert err_first <= 1e-4


def test_intrinsic_gradient_by_finite_differences():
    f = custom_field("yt", lambda y, t: y * t)
    assert intrinsic_gradient(f, 0.5, 0.7) == pytest.approx(0.7 * (1 + 0.25), abs=1e-8)


@given(st.floats(-2, 2), st.floats(-1, 2))
def test_normal_is_horizontal_unit(y, t):
    n = graph_normal(plane_field(0.3, 0.1), y, t)
    assert n.is_horizontal
    assert math.hypot(n.cx, n.cy) == pytest.approx(1.0)


def test_cone_is_stationary_off_axis():
    bump = TestBump((1.0, 0.5), (0.3, 0.3))
    assert abs(first_variation(cone_field(), bump)) <= 1e-6


@pytest.mark.slow
def test_cone_is_stationary_on_bump_family():
    region = Rect(y0=-2.0, y1=2.0, t0=-1.0, t1=2.0)
    for bump in bump_grid(region, 5, 4, 0.3):
        report = variation_report(cone_field(), bump)
        assert abs(report.I_value) <= 1e-6, bump.label
        assert report.II_value >= -1e-6, bump.label


def test_singular_limit_is_refused():
    with pytest.raises(RefusedEvaluation):
        first_variation(cantor_field(None), BUMP)


def test_bump_outside_domain():
    f = custom_field("small", lambda y, t: 0.0 * y, domain=Rect(y0=-1.0, y1=1.0, t0=0.0, t1=1.0))
    with pytest.raises(DomainError):
        first_variation(f, TestBump((0.0, 0.5), (1.0, 0.2)))


def test_report_fields():
    report = variation_report(plane_field(0.3, 0.1), BUMP)
    assert report.converged
    assert report.field == "plane(a=0.3,b=0.1)"
    assert report.II_value > 0.0
