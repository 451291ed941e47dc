import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.heisenberg import dilate, graph_map
from src.numerics import Rect
from src.strips import strip_field
from src.surfaces import (
    cone_calibration_check,
    cone_contains,
    cone_convergence,
    cone_eps,
    cone_eps_profile,
    cone_field,
    cone_stability_bound,
    g3_lp_integral,
)

ys = st.floats(min_value=-3.0, max_value=3.0)
ts = st.floats(min_value=-3.0, max_value=3.0)


@pytest.mark.parametrize(
    ("y", "t", "expected"),
    [(1.0, 0.25, 0.5), (-1.0, 0.25, -0.5), (1.0, 1.0, 1.0), (-2.0, 5.0, -2.0), (1.0, -1.0, 0.0)],
)
def test_cone_branches(y, t, expected):
    assert cone_field()(y, t) == pytest.approx(expected)


def test_cone_intrinsic_gradient_by_branch():
    f = cone_field()
    values = f.intrinsic(np.ones(3), np.array([-0.5, 0.25, 2.0]))
    np.testing.assert_allclose(values, [0.0, 0.5, 1.0])


def test_approximants_approach_cone():
    cone = cone_field()
    target = float(cone(1.0, 0.25))
    gaps = [abs(float(cone_eps(eps)[0](1.0, 0.25)) - target) for eps in (1e-1, 1e-2, 1e-3)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_approximant_is_the_strip_of_its_profile():
    f, profile = cone_eps(0.1)
    strip = strip_field(profile)
    Y, T = np.meshgrid(np.linspace(-2, 2, 21), np.linspace(-1, 2, 17))
    np.testing.assert_allclose(f(Y, T), strip(Y, T), atol=1e-10)


def test_cone_eps_rejects_nonpositive_eps():
    with pytest.raises(DomainError):
        cone_eps_profile(0.0)


def test_stability_bound_holds():
    ratios = []
    for eps in (1e-1, 1e-2):
        negative, bound = cone_stability_bound(eps)
        assert 0.0 < negative <= bound
        ratios.append(negative / bound)
    assert ratios[1] <= ratios[0] + 1e-12


@pytest.mark.parametrize("p", [1.5, 2.0])
def test_g3_integral_closed_form(p):
    closed, quad = g3_lp_integral(p, 1.0)
    assert abs(closed - quad) / closed <= 1e-3


def test_g3_exponent_range():
    with pytest.raises(DomainError):
        g3_lp_integral(3.0, 1.0)
    with pytest.raises(DomainError):
        cone_convergence((0.1,), p=0.5)


def test_calibrations_of_the_cone():
    rng = np.random.default_rng(7)
    pts = np.column_stack([rng.uniform(-2, 2, 200), rng.uniform(-1, 2, 200)])
    y, t = pts.T
    off_seams = (np.abs(y) > 1e-3) & (np.abs(t) > 1e-3) & (np.abs(t - 0.5 * y * y) > 1e-3)
    report = cone_calibration_check(pts[off_seams])
    assert report.samples == int(off_seams.sum())
    assert report.comparisons >= report.samples
    assert report.max_error <= 1e-8


@given(ys, ts, st.floats(min_value=0.1, max_value=10.0))
def test_graph_is_a_dilation_invariant_cone(y, t, lam):
    f = cone_field()
    p = graph_map(float(f(y, t)), y, t)
    assert cone_contains(p)
    assert cone_contains(dilate(lam, p))


def test_points_off_the_cone():
    assert not cone_contains(graph_map(1.0, 0.0, 1.0))


@pytest.mark.slow
def test_convergence_ladder():
    report = cone_convergence(
        (1e-1, 1e-2), p=2.0, region=Rect(y0=-2.0, y1=2.0, t0=-2.0, t1=2.0), samples=200
    )
    assert report.decreasing
    assert report.domination_violations == 0
    assert report.passed
