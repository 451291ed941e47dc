"""Smooth compactly supported test functions."""

import math
from dataclasses import dataclass

import numpy as np

from src.core.errors import DomainError
from src.numerics import Rect


def mollifier(u):
    """b(u) = exp(-1/(1-u²)) on |u| < 1, zero elsewhere."""
    u = np.asarray(u, dtype=float)
    inside = np.abs(u) < 1.0
    w = np.where(inside, 1.0 - u * u, 1.0)
    return np.where(inside, np.exp(-1.0 / w), 0.0)


def mollifier_prime(u):
    """b'(u) = -2u/(1-u²)² · b(u)."""
    u = np.asarray(u, dtype=float)
    inside = np.abs(u) < 1.0
    w = np.where(inside, 1.0 - u * u, 1.0)
    return np.where(inside, -2.0 * u / (w * w) * np.exp(-1.0 / w), 0.0)


@dataclass(frozen=True)
class TestBump:
    """φ(u, v) = A·b((u - c₁)/r₁)·b((v - c₂)/r₂).

    The coordinates are (y, t) for graph-side integrals and (s, τ) for Lagrangian ones.
    """

    __test__ = False  # keep pytest from collecting this class

    center: tuple[float, float]
    radii: tuple[float, float]
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if not (self.radii[0] > 0 and self.radii[1] > 0):
            raise DomainError(f"bump radii must be positive, got {self.radii}")

    @property
    def support(self) -> Rect:
        (c1, c2), (r1, r2) = self.center, self.radii
        return Rect(y0=c1 - r1, y1=c1 + r1, t0=c2 - r2, t1=c2 + r2)

    @property
    def sup_squared(self) -> float:
        """M = sup φ²; the peak b(0)² = e⁻² per axis product."""
        return (self.amplitude * math.exp(-2.0)) ** 2

    @property
    def label(self) -> str:
        (c1, c2), (r1, r2) = self.center, self.radii
        return f"bump(c=({c1:g},{c2:g}),r=({r1:g},{r2:g}),A={self.amplitude:g})"

    def scaled(self, factor: float) -> "TestBump":
        return TestBump(self.center, self.radii, self.amplitude * factor)

    def _args(self, u, v):
        (c1, c2), (r1, r2) = self.center, self.radii
        return (np.asarray(u, dtype=float) - c1) / r1, (np.asarray(v, dtype=float) - c2) / r2

    def value(self, u, v):
        a, b = self._args(u, v)
        return self.amplitude * mollifier(a) * mollifier(b)

    def d_u(self, u, v):
        a, b = self._args(u, v)
        return self.amplitude * mollifier_prime(a) * mollifier(b) / self.radii[0]

    def d_v(self, u, v):
        a, b = self._args(u, v)
        return self.amplitude * mollifier(a) * mollifier_prime(b) / self.radii[1]


def bump_grid(
    region: Rect, ny: int, nt: int, radius: float, amplitude: float = 1.0
) -> list[TestBump]:
    """Bumps centred on an ny × nt grid spanning ``region`` (corners included)."""
    ys = np.linspace(region.y0, region.y1, ny)
    ts = np.linspace(region.t0, region.t1, nt)
    return [
        TestBump((float(y), float(t)), (radius, radius), amplitude) for y in ys for t in ts
    ]
