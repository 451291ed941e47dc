import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import DomainError, RefusedEvaluation
from src.surfaces import (
    cantor_a,
    cantor_convergence,
    cantor_dt_fn,
    cantor_field,
    cantor_l2_distance,
    cantor_level,
    cantor_sv_quantities,
    cy_sets,
)
from src.surfaces.cantor import _dt_l2_at
from src.variation import TestBump, second_variation

Q = 2.0 / 3.0


def test_level_indices():
    assert cantor_level(1).indices.tolist() == [0, 2]
    assert cantor_level(2).indices.tolist() == [0, 2, 6, 8]


@pytest.mark.parametrize("n", range(0, 11))
def test_level_combinatorics(n):
    level = cantor_level(n)
    k = level.indices
    assert k.size == 2**n
    assert np.all(np.diff(k) > 0)
    assert level.total_length == pytest.approx(Q**n)
    lo, hi = level.intervals()
    assert math.fsum((hi - lo).tolist()) == pytest.approx(Q**n, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_staircase_at_interval_ends(n):
    level = cantor_level(n)
    lo, _ = level.intervals()
    ranks = np.arange(level.count) / level.count
    assert np.max(np.abs(cantor_a(n, lo) - ranks)) <= 1e-12


@pytest.mark.parametrize(
    ("tau", "expected"),
    [(1 / 3, 0.5), (2 / 3, 0.5), (0.25, 1 / 3), (0.75, 2 / 3), (-1.0, 0.0), (2.0, 1.0)],
)
def test_cantor_function_values(tau, expected):
    assert cantor_a(None, tau) == pytest.approx(expected, abs=1e-10)


def test_first_level_is_piecewise_affine():
    assert cantor_a(1, 0.25) == pytest.approx(0.375)
    assert cantor_a(1, 0.5) == pytest.approx(0.5)


@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=20))
def test_staircase_is_monotone(taus):
    taus = np.sort(np.asarray(taus))
    for n in (3, None):
        assert np.all(np.diff(cantor_a(n, taus)) >= -1e-10)


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_uniform_distance_to_limit(n):
    taus = np.linspace(0.0, 1.0, 3**7 + 1)
    assert np.max(np.abs(cantor_a(n, taus) - cantor_a(None, taus))) <= 2.0**-n + 1e-12


@pytest.mark.parametrize("n", range(1, 9))
def test_tau_integral_is_constant(n):
    tau_integral, coefficient, bound = cantor_sv_quantities(n, M=1.0)
    assert tau_integral == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert coefficient == pytest.approx(math.sqrt(2 * Q**n) * math.pi)
    assert bound == pytest.approx(math.pi * Q ** (n / 2))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_level_set_measure(n):
    sets = cy_sets(n, 1.3)
    assert sets.measure == pytest.approx(sets.measure_formula, rel=1e-12)
    assert np.all(sets.hi > sets.lo)


def test_dt_on_and_off_level_set():
    sets = cy_sets(2, 1.0)
    inside = 0.5 * (sets.lo[0] + sets.hi[0])
    gap = 0.5 * (sets.hi[0] + sets.lo[1])
    assert cantor_dt_fn(2, 1.0, inside) == pytest.approx(1.0 / (0.5 + Q**2), rel=1e-12)
    assert cantor_dt_fn(2, 1.0, gap) == 0.0


def test_l2_distance_closed_form_first_level():
    closed, quad = cantor_l2_distance(1, 1.0)
    expected = 2 * math.sqrt(2) * math.sqrt(Q) * math.atan(1 / (math.sqrt(2) * math.sqrt(Q)))
    assert closed == pytest.approx(expected)
    assert abs(quad - closed) / closed <= 1e-4


@pytest.mark.parametrize("n", [2, 4, 6])
def test_l2_distance_quadrature(n):
    closed, quad = cantor_l2_distance(n, 1.0)
    assert abs(quad - closed) / closed <= 1e-4


def test_convergence_ladder():
    report = cantor_convergence((1, 2, 3, 4))
    assert report.decreasing
    assert report.domination_violations == 0
    assert set(report.rates) >= {"sup_a", "dt_l2_sq"}


def test_level_bounds():
    with pytest.raises(DomainError):
        cantor_level(-1)
    with pytest.raises(DomainError):
        cantor_level(41)
    with pytest.raises(DomainError):
        cantor_convergence((1, 9))


def test_limit_refuses_variations():
    with pytest.raises(RefusedEvaluation):
        second_variation(cantor_field(None), TestBump((1.0, 0.5), (0.3, 0.3)))


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("y", [0.3, 1.0, 1.7])
def test_t_integral_from_level_set_pieces(n, y):
    # A²(|C_y(n)| - |C_y|) + (A - 2/y)²|C_y| with A = y/(y²/2 + qⁿ) and |C_y| = y²/2.
    a = y / (0.5 * y * y + Q**n)
    expected = a * a * Q**n + (a - 2.0 / y) ** 2 * 0.5 * y * y
    assert _dt_l2_at(n, y) == pytest.approx(expected, rel=1e-9)


def test_l2_distance_beyond_listed_levels():
    with pytest.raises(DomainError):
        cantor_l2_distance(9, 1.0)
