"""Heisenberg group arithmetic in exponential coordinates.

Group law:
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + (x y' - x' y) / 2)

Horizontal frame:
    X = ∂x - (y/2) ∂z,   Y = ∂y + (x/2) ∂z,   Z = [X, Y] = ∂z
"""

import math
from dataclasses import dataclass

from src.core.errors import DomainError


@dataclass(frozen=True, slots=True)
class HPoint:
    """A point (x, y, z) of the Heisenberg group."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise DomainError(f"HPoint coordinates must be finite, got {self}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True, slots=True)
class HVector:
    """Tangent vector cx·X + cy·Y + cz·Z based at ``basepoint``."""

    cx: float
    cy: float
    cz: float
    basepoint: HPoint

    @property
    def is_horizontal(self) -> bool:
        return self.cz == 0.0

    def ambient(self) -> tuple[float, float, float]:
        """Components in the coordinate basis ∂x, ∂y, ∂z."""
        p = self.basepoint
        return (self.cx, self.cy, self.cz - 0.5 * self.cx * p.y + 0.5 * self.cy * p.x)


IDENTITY = HPoint(0.0, 0.0, 0.0)


def hgroup_mul(p: HPoint, q: HPoint) -> HPoint:
    """Group product p·q."""
    return HPoint(p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y))


def hgroup_inv(p: HPoint) -> HPoint:
    return HPoint(-p.x, -p.y, -p.z)


def dilate(lam: float, p: HPoint) -> HPoint:
    """Intrinsic dilation δ_λ(x, y, z) = (λx, λy, λ²z)."""
    if not lam > 0:
        raise DomainError(f"dilation factor must be positive, got {lam}")
    return HPoint(lam * p.x, lam * p.y, lam * lam * p.z)


def graph_map(fval: float, y: float, t: float) -> HPoint:
    """Point of the intrinsic graph over (y, t): (0, y, t)·(f, 0, 0)."""
    return HPoint(fval, y, t - 0.5 * y * fval)


def horizontal_frame(p: HPoint) -> tuple[HVector, HVector]:
    """X and Y at ``p`` (use ``.ambient()`` for coordinate components)."""
    return HVector(1.0, 0.0, 0.0, p), HVector(0.0, 1.0, 0.0, p)


def _frame_flow(p: HPoint, axis: str, h: float) -> HPoint:
    # X and Y generate one-parameter subgroups: exp(hX) = (h, 0, 0), exp(hY) = (0, h, 0).
    step = HPoint(h, 0.0, 0.0) if axis == "x" else HPoint(0.0, h, 0.0)
    return hgroup_mul(p, step)


def commutator_fd(p: HPoint, h: float = 1e-3) -> tuple[float, float, float]:
    """Finite-difference [X, Y] at ``p`` from the flow commutator.

    Flowing h along X, h along Y, back along X, back along Y lands at p·exp(h²[X,Y] + O(h³)),
    so dividing the displacement by h² recovers Z = (0, 0, 1).
    """
    q = _frame_flow(p, "x", h)
    q = _frame_flow(q, "y", h)
    q = _frame_flow(q, "x", -h)
    q = _frame_flow(q, "y", -h)
    return ((q.x - p.x) / h**2, (q.y - p.y) / h**2, (q.z - p.z) / h**2)
