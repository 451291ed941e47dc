"""The horizontal unit field ν = (-y X + x Y)/√(x² + y²) that calibrates graphical strips."""

from dataclasses import dataclass

import numpy as np

from src.core.constants import tolerances
from src.core.errors import DomainError
from src.heisenberg import HPoint, HVector
from src.strips.profiles import StripProfile
from src.strips.strip import strip_field, strip_forward
from src.variation import graph_normal


def calibration_nu(p: HPoint) -> HVector:
    """ν at ``p``; undefined on the vertical axis x = y = 0."""
    r = float(np.hypot(p.x, p.y))
    if r == 0.0:
        raise DomainError(f"ν is undefined on the vertical axis, got {p}")
    return HVector(-p.y / r, p.x / r, 0.0, p)


def nu_ambient(x, y, z):
    """ν in the coordinate basis ∂x, ∂y, ∂z: (-y/r, x/r, r/2)."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    r = np.hypot(x, y)
    return -y / r, x / r, 0.5 * r


def nu_divergence(points: np.ndarray) -> np.ndarray:
    """Fourth-order central-difference divergence of ν at each row (x, y, z), h = 1e-3·r."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    x, y, z = points.T
    r = np.hypot(x, y)
    if np.any(r == 0.0):
        raise DomainError("divergence sample on the vertical axis")
    h = 1e-3 * r
    div = np.zeros_like(r)
    for axis in range(3):
        shift = np.zeros((3, r.size))
        shift[axis] = h

        def component(k):
            return nu_ambient(*(points.T + k * shift))[axis]

        div += (-component(2) + 8 * component(1) - 8 * component(-1) + component(-2)) / (12 * h)
    return div


@dataclass(frozen=True)
class CalibrationReport:
    points: int
    max_divergence: float
    strip_samples: int
    max_normal_error: float
    orientation_flips: int

    @property
    def passed(self) -> bool:
        return (
            self.max_divergence <= tolerances.divergence
            and self.max_normal_error <= tolerances.normal
        )


def sample_points(
    seed: int, count: int, half_width: float = 3.0, min_r2: float = 0.01
) -> np.ndarray:
    """``count`` points of the box [-w, w]³ with x² + y² > ``min_r2``."""
    rng = np.random.default_rng(seed)
    out = np.empty((0, 3))
    while out.shape[0] < count:
        batch = rng.uniform(-half_width, half_width, size=(2 * count, 3))
        batch = batch[batch[:, 0] ** 2 + batch[:, 1] ** 2 > min_r2]
        out = np.vstack([out, batch])
    return out[:count]


def calibration_check(
    profile: StripProfile, points: np.ndarray, strip_samples: np.ndarray
) -> CalibrationReport:
    """Divergence of ν at ``points`` and its agreement with the strip's graph normal.

    ``strip_samples`` are (s, τ) rows. At Γ(s, τ) = (a s, s, τ) the field ν equals
    sign(s)·(-1, a)/√(1+a²); s > 0 rows are compared directly, s < 0 rows only count
    orientation flips.
    """
    div = np.abs(nu_divergence(points))
    f = strip_field(profile)
    samples = np.atleast_2d(np.asarray(strip_samples, dtype=float))
    worst = 0.0
    flips = 0
    for s, tau in samples:
        if s == 0.0:
            continue
        y, t = strip_forward(profile, s, tau)
        normal = graph_normal(f, float(y), float(t))
        nu = calibration_nu(normal.basepoint)
        if s > 0:
            worst = max(worst, abs(nu.cx - normal.cx), abs(nu.cy - normal.cy))
        elif np.hypot(nu.cx + normal.cx, nu.cy + normal.cy) <= tolerances.normal:
            flips += 1
    return CalibrationReport(
        points=int(div.size),
        max_divergence=float(div.max()) if div.size else 0.0,
        strip_samples=int(samples.shape[0]),
        max_normal_error=worst,
        orientation_flips=flips,
    )
