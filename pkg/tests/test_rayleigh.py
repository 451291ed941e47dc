import pytest
from pydantic import ValidationError

from src.core.errors import DomainError
from src.numerics import RayleighProblem, rayleigh_closed_form, rayleigh_min


def test_closed_form_whole_line():
    assert rayleigh_closed_form(1.0) == pytest.approx(0.5)
    assert rayleigh_closed_form(2.0, None) == pytest.approx(1.0)


def test_closed_form_needs_positive_a():
    with pytest.raises(DomainError):
        rayleigh_closed_form(0.0, 10.0)


@pytest.mark.slow
def test_zero_b_matches_closed_form():
    lam = rayleigh_min(RayleighProblem(A=1.0, B=0.0, R=50.0, N=4000))
    closed = rayleigh_closed_form(1.0, 50.0)
    assert abs(lam - closed) / closed <= 1e-3
    assert lam < 2.0


def test_small_problem_is_nonnegative_and_bounded():
    lam = rayleigh_min(RayleighProblem(A=1.0, B=0.5, R=10.0, N=400))
    assert -1e-10 <= lam < 2.0


def test_double_root_of_weight():
    # B² = 2A: h = (t + 1)² vanishes on a grid node.
    lam = rayleigh_min(RayleighProblem(A=2.0, B=2.0, R=10.0, N=400))
    assert lam >= -1e-10


def test_discriminant_is_validated():
    with pytest.raises(ValidationError):
        RayleighProblem(A=1.0, B=2.0, R=10.0, N=100)
