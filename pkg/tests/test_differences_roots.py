import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import BracketError, SeamError
from src.numerics import SeamSet, bisect_monotone, fd_partial, t_seam


def test_central_difference_on_smooth_function():
    g = lambda y, t: np.sin(y) * t  # noqa: E731
    assert fd_partial(g, 0.3, 2.0, "y") == pytest.approx(2.0 * np.cos(0.3), abs=1e-8)
    assert fd_partial(g, 0.3, 2.0, "t") == pytest.approx(np.sin(0.3), abs=1e-8)


def test_fourth_order_is_sharper():
    g = lambda y, t: np.exp(y) + 0.0 * t  # noqa: E731
    second = abs(fd_partial(g, 1.0, 0.0, "y", h=1e-2) - np.e)
    fourth = abs(fd_partial(g, 1.0, 0.0, "y", h=1e-2, order=4) - np.e)
    assert fourth < second


def test_vectorized_shape():
    ys = np.linspace(0.0, 1.0, 6).reshape(2, 3)
    out = fd_partial(lambda y, t: y * y + t, ys, 0.0, "y")
    assert out.shape == (2, 3)
    np.testing.assert_allclose(out, 2.0 * ys, atol=1e-8)


def test_one_sided_next_to_seam():
    seams = SeamSet((t_seam(0.0),))
    g = lambda y, t: np.abs(t) + 0.0 * y  # noqa: E731
    assert fd_partial(g, 0.0, 1e-6, "t", h=1e-5, seams=seams) == pytest.approx(1.0, abs=1e-8)
    assert fd_partial(g, 0.0, -1e-6, "t", h=1e-5, seams=seams) == pytest.approx(-1.0, abs=1e-8)


def test_on_seam_raises():
    seams = SeamSet((t_seam(0.0),))
    with pytest.raises(SeamError):
        fd_partial(lambda y, t: np.abs(t), 0.5, 0.0, "t", seams=seams)


@given(st.floats(min_value=-8.0, max_value=8.0))
def test_bisection_inverts_cube(target):
    root = bisect_monotone(lambda x: x**3, -3.0, 3.0, target)
    assert abs(root**3 - target) <= 1e-10 * (1.0 + abs(target))


def test_bisection_vectorized():
    targets = np.array([-1.0, 0.0, 0.5, 2.0])
    roots = bisect_monotone(lambda x: x + np.sin(x) / 2, -5.0, 5.0, targets)
    np.testing.assert_allclose(roots + np.sin(roots) / 2, targets, atol=1e-11)


def test_bisection_needs_a_bracket():
    with pytest.raises(BracketError):
        bisect_monotone(lambda x: x, 0.0, 1.0, 2.0)
