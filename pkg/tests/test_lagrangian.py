import numpy as np
import pytest

from src.core.errors import DomainError
from src.lagrangian import (
    PulledBackBump,
    area_formula_check,
    bernstein_verdict,
    build_parametrization,
    change_of_variables_check,
    check_axioms,
    fit_quadratic,
    inverse_map,
    lagrangian_first_variation,
    lagrangian_second_variation,
    profile_constraints_check,
)
from src.strips import strip_second_variation, tau_seams
from src.surfaces import cone_eps
from src.variation import TestBump, plane_field

TAUS = np.linspace(-0.5, 1.5, 81)
GRAPH_BUMP = TestBump((0.0, 0.5), (0.5, 0.3))


@pytest.fixture(scope="module")
def plane_map():
    return build_parametrization(plane_field(0.3, 0.1), (-2.0, 2.0), TAUS, steps=200)


@pytest.fixture(scope="module")
def cone_eps_map():
    f, _ = cone_eps(0.1)
    return build_parametrization(f, (-2.0, 2.0), TAUS, steps=200)


def test_plane_axioms(plane_map):
    report = check_axioms(plane_map)
    assert report.passed
    assert report.monotone_violations == 0
    assert report.normalized
    assert report.coverage > 0.0


def test_plane_profile_is_constant(plane_map):
    profile = fit_quadratic(plane_map)
    assert profile.max_residual <= 1e-10
    np.testing.assert_allclose(profile.a, 0.3, atol=1e-10)
    np.testing.assert_allclose(profile.b, 0.1, atol=1e-10)
    np.testing.assert_allclose(profile.c, TAUS, atol=1e-10)
    assert bernstein_verdict(profile) == "Plane"
    assert profile_constraints_check(profile).passed


def test_cone_eps_profile_is_not_planar(cone_eps_map):
    f, profile_fn = cone_eps(0.1)
    profile = fit_quadratic(cone_eps_map)
    np.testing.assert_allclose(profile.a, profile_fn(TAUS), atol=1e-10)
    np.testing.assert_allclose(profile.b, 0.0, atol=1e-10)
    assert bernstein_verdict(profile) == "NotPlane"
    report = profile_constraints_check(profile)
    assert report.violating_pairs == 0
    assert report.strict_pairs > 0


def test_ode_parametrization_matches_exact():
    f = plane_field(0.3, 0.1)
    m = build_parametrization(f, (-1.0, 1.0), np.linspace(0.0, 1.0, 11), steps=100, exact=False)
    assert not m.exact
    profile = fit_quadratic(m)
    assert profile.max_residual <= 1e-6
    np.testing.assert_allclose(profile.a, 0.3, atol=1e-6)
    assert check_axioms(m).passed


def test_s_range_must_contain_zero():
    with pytest.raises(DomainError):
        build_parametrization(plane_field(0.3, 0.1), (0.5, 1.0), TAUS)


def test_inverse_map(plane_map):
    s = np.array([-1.0, 0.0, 0.7])
    tau = np.array([0.2, 0.9, 0.4])
    t = plane_map.chi_at(s, tau)
    np.testing.assert_allclose(inverse_map(plane_map, s, t), tau, atol=1e-10)


def test_area_formula(plane_map, cone_eps_map):
    for m in (plane_map, cone_eps_map):
        lhs, rhs = area_formula_check(m, GRAPH_BUMP.value, GRAPH_BUMP.support)
        assert abs(lhs - rhs) <= 1e-5


def test_change_of_variables(plane_map, cone_eps_map):
    for m in (plane_map, cone_eps_map):
        report = change_of_variables_check(m, GRAPH_BUMP)
        assert report.points > 0
        assert report.max_residual <= 1e-4
    assert change_of_variables_check(plane_map, GRAPH_BUMP).min_jacobian == pytest.approx(1.0)


def test_lagrangian_first_variation_of_plane(plane_map):
    theta = TestBump((0.0, 0.5), (1.0, 0.5))
    assert abs(lagrangian_first_variation(plane_map, theta)) <= 1e-6


def test_pulled_back_bump_tracks_characteristics(plane_map):
    pulled = PulledBackBump(GRAPH_BUMP, plane_map)
    s, tau = 0.2, 0.4
    assert pulled.value(s, tau) == pytest.approx(
        GRAPH_BUMP.value(s, float(plane_map.chi_at(s, tau)))
    )
    support = pulled.support
    assert support.t0 < support.t1


def test_strip_second_variation_agrees_with_general_form():
    _, profile = cone_eps(0.1)
    theta = TestBump((0.0, 0.6), (1.0, 0.7))
    general = lagrangian_second_variation(
        profile.a,
        profile.derivative,
        lambda tau: np.zeros(np.shape(tau)),
        theta,
        seams=tau_seams(profile),
    )
    assert general == pytest.approx(strip_second_variation(profile, theta), rel=1e-12)


def test_plane_second_variation_in_parameters_is_positive():
    theta = TestBump((0.0, 0.5), (1.0, 0.5))
    zero = lambda tau: np.zeros(np.shape(tau))  # noqa: E731
    value = lagrangian_second_variation(lambda tau: np.full(np.shape(tau), 0.3), zero, zero, theta)
    assert value > 0.0
