import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import DomainError, RefusedEvaluation
from src.heisenberg import HPoint
from src.numerics import fd_partial
from src.strips import (
    calibration_check,
    calibration_nu,
    constant_profile,
    load_profile_table,
    nu_divergence,
    sample_points,
    strip_field,
    strip_forward,
    strip_second_variation_terms,
    strip_tau,
    table_profile,
)
from src.surfaces import cantor_limit_profile, cantor_profile, cone_eps_profile
from src.variation import TestBump, intrinsic_gradient, plane_field

PROFILES = [cone_eps_profile(0.1), cantor_profile(3), table_profile([0, 1, 2], [0.0, 0.5, 2.0])]

s_values = st.floats(min_value=-3.0, max_value=3.0)
tau_values = st.floats(min_value=-1.0, max_value=2.0)


@pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.label)
@given(s=s_values, tau=tau_values)
def test_inversion_recovers_tau(profile, s, tau):
    y, t = strip_forward(profile, s, tau)
    assert strip_tau(profile, y, t) == pytest.approx(tau, abs=1e-9 * (1 + abs(float(t))))


@pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.label)
def test_intrinsic_gradient_is_profile(profile):
    f = strip_field(profile)
    s = np.array([-1.5, -0.3, 0.8, 2.0])
    tau = np.array([0.05, 0.5, 0.9, 1.3])
    y, t = strip_forward(profile, s, tau)
    np.testing.assert_allclose(f(y, t), profile(tau) * s, atol=1e-9)
    np.testing.assert_allclose(intrinsic_gradient(f, y, t), profile(tau), atol=1e-9)


@pytest.mark.parametrize(
    "profile", [*PROFILES, cantor_profile(1), cantor_profile(6)], ids=lambda p: p.label
)
@given(
    y=st.floats(min_value=0.05, max_value=3.0),
    flip=st.booleans(),
    t1=st.floats(min_value=-1.0, max_value=5.0),
    t2=st.floats(min_value=-1.0, max_value=5.0),
)
def test_strip_is_lipschitz_in_t_off_the_axis(profile, y, flip, t1, t2):
    y = -y if flip else y
    f = strip_field(profile)
    gap = abs(float(f(y, t1)) - float(f(y, t2)))
    assert gap <= 2.0 / abs(y) * abs(t1 - t2) + 1e-7


def test_closed_form_partials_match_finite_differences():
    profile = cone_eps_profile(0.1)
    f = strip_field(profile)
    y, t = 0.7, 0.3
    assert f.d_t(y, t) == pytest.approx(fd_partial(f.value, y, t, "t", 1e-4), abs=1e-6)
    assert f.d_y(y, t) == pytest.approx(fd_partial(f.value, y, t, "y", 1e-4), abs=1e-6)


def test_constant_profile_is_a_plane():
    f = strip_field(constant_profile(0.4))
    plane = plane_field(0.4, 0.0)
    ys, ts = np.meshgrid(np.linspace(-2, 2, 9), np.linspace(-1, 2, 7))
    np.testing.assert_allclose(f(ys, ts), plane(ys, ts), atol=1e-14)


def test_table_validation():
    with pytest.raises(DomainError):
        table_profile([0.0, 1.0], [1.0, 0.5])
    with pytest.raises(DomainError):
        table_profile([1.0, 0.0], [0.0, 1.0])


def test_load_table_with_header(tmp_path):
    path = tmp_path / "profile.csv"
    path.write_text("tau,a\n0,0\n0.5,0.25\n1,1\n")
    profile = load_profile_table(path)
    assert profile(0.75) == pytest.approx(0.625)
    assert profile.breakpoints == (0.0, 0.5, 1.0)


def test_singular_profile_is_refused():
    with pytest.raises(RefusedEvaluation):
        strip_second_variation_terms(cantor_limit_profile(), TestBump((0.0, 0.5), (1.0, 0.5)))


def test_nu_is_divergence_free():
    points = sample_points(seed=0, count=100)
    assert points.shape == (100, 3)
    assert np.all(points[:, 0] ** 2 + points[:, 1] ** 2 > 0.01)
    assert np.max(np.abs(nu_divergence(points))) <= 1e-6


def test_nu_undefined_on_axis():
    with pytest.raises(DomainError):
        calibration_nu(HPoint(0.0, 0.0, 1.0))
    with pytest.raises(DomainError):
        nu_divergence(np.array([[0.0, 0.0, 1.0]]))


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_nu_is_horizontal_unit(x, y, z):
    if math.hypot(x, y) < 1e-3:
        return
    nu = calibration_nu(HPoint(x, y, z))
    assert nu.is_horizontal
    assert math.hypot(nu.cx, nu.cy) == pytest.approx(1.0)


@pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.label)
def test_nu_calibrates_strip(profile):
    rng = np.random.default_rng(3)
    samples = np.column_stack([rng.uniform(-2, 2, 50), rng.uniform(-0.5, 1.5, 50)])
    report = calibration_check(profile, sample_points(1, 20), samples)
    assert report.max_normal_error <= 1e-8
    assert report.orientation_flips == int(np.count_nonzero(samples[:, 0] < 0))
    assert report.passed
