import numpy as np
import pytest

from src.core.errors import QuadratureError
from src.numerics import (
    QuadratureSpec,
    Rect,
    SeamSet,
    integrate1d,
    integrate2d,
    parabola_seam,
    t_seam,
    y_seam,
)

UNIT = Rect(y0=0.0, y1=1.0, t0=0.0, t1=1.0)


def test_constant_gives_area():
    region = Rect(y0=-1.0, y1=2.0, t0=0.5, t1=1.5)
    result = integrate2d(lambda y, t: np.ones_like(y), region)
    assert result.value == pytest.approx(region.area, rel=1e-13)
    assert result.converged


@pytest.mark.parametrize(
    ("g", "expected"),
    [
        (lambda y, t: y * y * t, 2.0 / 3.0),
        (lambda y, t: np.sin(y) * np.exp(t), (1 - np.cos(1.0)) * (np.exp(2.0) - 1)),
    ],
)
def test_smooth_integrands(g, expected):
    region = Rect(y0=0.0, y1=1.0, t0=0.0, t1=2.0)
    assert integrate2d(g, region).value == pytest.approx(expected, rel=1e-10)


def test_indicator_split_along_parabola():
    region = Rect(y0=-1.0, y1=1.0, t0=0.0, t1=1.0)
    seams = SeamSet((parabola_seam(0.5, 0.0),))
    result = integrate2d(lambda y, t: np.where(t > 0.5 * y * y, 1.0, 0.0), region, seams)
    assert result.value == pytest.approx(5.0 / 3.0, abs=1e-10)


def test_kink_along_t_seam():
    seams = SeamSet((t_seam(0.3), y_seam(0.5)))
    result = integrate2d(lambda y, t: np.abs(t - 0.3) * np.abs(y - 0.5), UNIT, seams)
    expected = (0.3**2 / 2 + 0.7**2 / 2) * 0.25
    assert result.value == pytest.approx(expected, abs=1e-12)


def test_parabola_with_zero_curvature_is_a_t_seam():
    assert parabola_seam(0.0, 0.7) == t_seam(0.7)


def test_fixed_spec_is_not_adaptive():
    spec = QuadratureSpec().fixed(4)
    assert spec.max_depth == 0 and spec.panels == 4


def test_strict_mode_raises_when_unconverged():
    spec = QuadratureSpec(max_depth=1)
    jump = lambda y, t: np.where(t > 0.5 * y * y + 0.1, 1.0, 0.0)  # noqa: E731
    with pytest.raises(QuadratureError):
        integrate2d(jump, UNIT, spec=spec, strict=True)


def test_one_dimensional_with_break():
    result = integrate1d(np.abs, -1.0, 1.0, breaks=[0.0])
    assert result.value == pytest.approx(1.0, abs=1e-14)
    assert integrate1d(np.cos, 0.0, np.pi / 2).value == pytest.approx(1.0, rel=1e-12)


def test_result_unpacks_as_value_and_error():
    value, err = integrate1d(lambda x: x, 0.0, 1.0)
    assert value == pytest.approx(0.5)
    assert err >= 0.0
