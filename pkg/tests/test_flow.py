import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.numerics import flow_batch, flow_semigroup_check, flow_separation_check, ode_flow
from src.variation import linear_t_field, plane_field, square_t_field

taus = st.floats(min_value=-2.0, max_value=2.0)


def test_linear_field_grows_exponentially():
    curve = ode_flow(linear_t_field(), 0.0, 1.0, 1.0)
    assert not curve.blowup_flag
    assert curve.end == pytest.approx(math.e, rel=1e-9)
    assert curve.s[0] == 0.0 and curve.s[-1] == 1.0


def test_backward_integration():
    curve = ode_flow(linear_t_field(), 0.0, 1.0, -1.0)
    assert curve.end == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_square_field_matches_closed_form_before_pole():
    curve = ode_flow(square_t_field(), 0.0, 1.0, 0.5)
    assert curve.end == pytest.approx(2.0, rel=1e-8)


def test_square_field_blows_up_before_pole():
    curve = ode_flow(square_t_field(), 0.0, 1.0, 2.0)
    assert curve.blowup_flag
    assert curve.s[-1] < 1.0
    assert np.all(np.isfinite(curve.values))


def test_plane_flow_is_quadratic():
    f = plane_field(0.3, 0.1)
    curve = ode_flow(f, 0.0, 0.5, 2.0)
    assert curve.end == pytest.approx(float(f.flow(2.0, 0.5)), abs=1e-10)


def test_batch_keeps_input_order():
    s, values, blown, err = flow_batch(linear_t_field(), 0.0, [1.0, -2.0, 0.0], 0.5, steps=50)
    assert values.shape == (3, 51)
    np.testing.assert_allclose(values[:, -1], np.array([1.0, -2.0, 0.0]) * math.exp(0.5))
    assert not blown.any()
    assert np.all(err >= 0)


def test_zero_steps_rejected():
    with pytest.raises(DomainError):
        flow_batch(linear_t_field(), 0.0, [1.0], 1.0, steps=0)


@settings(max_examples=25, deadline=None)
@given(taus, taus)
def test_separation_obeys_gronwall(tau_a, tau_b):
    measured, bound = flow_separation_check(linear_t_field(), 1.0, tau_a, tau_b, 0.0, 1.0, 100)
    assert measured <= bound * (1.0 + 1e-9) + 1e-12


@pytest.mark.parametrize("field", [linear_t_field(), plane_field(0.3, 0.1)])
def test_semigroup(field):
    difference, allowance = flow_semigroup_check(field, 0.7, 0.0, 0.4, 1.0)
    assert difference <= allowance
