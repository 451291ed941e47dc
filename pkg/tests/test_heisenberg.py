import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.heisenberg import (
    IDENTITY,
    HPoint,
    commutator_fd,
    dilate,
    graph_map,
    hgroup_inv,
    hgroup_mul,
    horizontal_frame,
)

coord = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
points = st.builds(HPoint, coord, coord, coord)
factors = st.floats(min_value=0.01, max_value=10)


def close(p: HPoint, q: HPoint, tol: float = 1e-9) -> bool:
    scale = 1.0 + max(abs(v) for v in (*p.as_tuple(), *q.as_tuple()))
    return all(abs(a - b) <= tol * scale**2 for a, b in zip(p.as_tuple(), q.as_tuple()))


@settings(max_examples=200)
@given(points, points, points)
def test_product_is_associative(p, q, r):
    assert close(hgroup_mul(hgroup_mul(p, q), r), hgroup_mul(p, hgroup_mul(q, r)))


@given(points)
def test_inverse_and_identity(p):
    assert hgroup_mul(p, hgroup_inv(p)) == IDENTITY
    assert hgroup_mul(IDENTITY, p) == p


@given(factors, points, points)
def test_dilation_is_a_homomorphism(lam, p, q):
    left = dilate(lam, hgroup_mul(p, q))
    right = hgroup_mul(dilate(lam, p), dilate(lam, q))
    assert close(left, right)


@given(coord, coord, coord)
def test_graph_map_is_product_with_x_axis(f, y, t):
    expected = hgroup_mul(HPoint(0.0, y, t), HPoint(f, 0.0, 0.0))
    assert close(graph_map(f, y, t), expected)


@pytest.mark.parametrize("p", [IDENTITY, HPoint(1.0, -2.0, 3.0), HPoint(-5.0, 4.0, 10.0)])
def test_commutator_is_vertical(p):
    cx, cy, cz = commutator_fd(p, h=1e-3)
    assert abs(cx) < 1e-6
    assert abs(cy) < 1e-6
    assert cz == pytest.approx(1.0, abs=1e-6)


def test_horizontal_frame_components():
    X, Y = horizontal_frame(HPoint(2.0, 4.0, 0.0))
    assert X.ambient() == (1.0, 0.0, -2.0)
    assert Y.ambient() == (0.0, 1.0, 1.0)
    assert X.is_horizontal and Y.is_horizontal


def test_rejects_bad_input():
    with pytest.raises(DomainError):
        HPoint(math.nan, 0.0, 0.0)
    with pytest.raises(DomainError):
        dilate(0.0, IDENTITY)
