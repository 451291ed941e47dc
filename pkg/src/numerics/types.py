"""Value types shared by the numerical kernels."""

from dataclasses import dataclass, field
from typing import Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.constants import quadrature_defaults


class Rect(BaseModel):
    """Axis-aligned rectangle [y0, y1] × [t0, t1]."""

    model_config = ConfigDict(frozen=True)

    y0: float
    y1: float
    t0: float
    t1: float

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if not (self.y0 < self.y1 and self.t0 < self.t1):
            raise ValueError(f"empty rectangle {self.y0, self.y1, self.t0, self.t1}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Rect":
        """Parse ``"y0,y1,t0,t1"``."""
        y0, y1, t0, t1 = (float(v) for v in text.split(","))
        return cls(y0=y0, y1=y1, t0=t0, t1=t1)

    @property
    def area(self) -> float:
        return (self.y1 - self.y0) * (self.t1 - self.t0)

    def contains(self, other: "Rect") -> bool:
        return (
            self.y0 <= other.y0
            and other.y1 <= self.y1
            and self.t0 <= other.t0
            and other.t1 <= self.t1
        )

    def intersect(self, other: "Rect") -> "Rect | None":
        y0, y1 = max(self.y0, other.y0), min(self.y1, other.y1)
        t0, t1 = max(self.t0, other.t0), min(self.t1, other.t1)
        if y0 >= y1 or t0 >= t1:
            return None
        return Rect(y0=y0, y1=y1, t0=t0, t1=t1)


WHOLE_PLANE = Rect(y0=-1e6, y1=1e6, t0=-1e6, t1=1e6)


class QuadratureSpec(BaseModel):
    """Gauss–Legendre order, panel count and adaptive stopping rule."""

    model_config = ConfigDict(frozen=True)

    points_per_cell: int = Field(default=quadrature_defaults.points_per_cell, ge=2)
    max_depth: int = Field(default=quadrature_defaults.max_depth, ge=0)
    abs_tol: float = Field(default=quadrature_defaults.abs_tol, gt=0)
    rel_tol: float = Field(default=quadrature_defaults.rel_tol, gt=0)
    panels: int = Field(
        default=quadrature_defaults.panels, ge=1, description="Uniform panels per smooth piece"
    )

    def fixed(self, panels: int) -> "QuadratureSpec":
        """Non-adaptive copy: the same node set for every integrand on a given region."""
        return self.model_copy(update={"max_depth": 0, "panels": panels})


# -----------------------------------------------------------------------------
# Seams
# -----------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Seam:
    """One seam curve.

    kind "t":        t = c
    kind "y":        y = c
    kind "parabola": t = c·y² + d
    """

    kind: Literal["t", "y", "parabola"]
    c: float
    d: float = 0.0

    def level(self, y, t):
        """Signed level function; the seam is its zero set."""
        if self.kind == "t":
            return t - self.c
        if self.kind == "y":
            return y - self.c
        return t - (self.c * y * y + self.d)

    def t_at(self, y):
        """t-coordinate of the seam above ``y`` (only for t-type and parabola seams)."""
        if self.kind == "t":
            return np.full_like(np.asarray(y, dtype=float), self.c)
        return self.c * np.asarray(y, dtype=float) ** 2 + self.d


def t_seam(c: float) -> Seam:
    return Seam("t", c)


def y_seam(c: float) -> Seam:
    return Seam("y", c)


def parabola_seam(c: float, d: float) -> Seam:
    if c == 0.0:
        return Seam("t", d)
    return Seam("parabola", c, d)


@dataclass(frozen=True)
class SeamSet:
    """Finite collection of seam curves."""

    curves: tuple[Seam, ...] = ()

    def __add__(self, other: "SeamSet") -> "SeamSet":
        return SeamSet(tuple(dict.fromkeys(self.curves + other.curves)))

    def __len__(self) -> int:
        return len(self.curves)

    @property
    def y_lines(self) -> list[float]:
        return [s.c for s in self.curves if s.kind == "y"]

    @property
    def t_curves(self) -> list[Seam]:
        return [s for s in self.curves if s.kind != "y"]

    def on_seam(self, y, t, tol: float = 1e-14):
        """Boolean mask of points lying on some seam."""
        y = np.asarray(y, dtype=float)
        t = np.asarray(t, dtype=float)
        mask = np.zeros(np.broadcast(y, t).shape, dtype=bool)
        for s in self.curves:
            scale = 1.0 + np.abs(t) + np.abs(y)
            mask |= np.abs(s.level(y, t)) <= tol * scale
        return mask

    def crosses(self, y0, t0, y1, t1):
        """Mask of segments (y0,t0)→(y1,t1) whose endpoints lie on opposite sides of a seam."""
        y0, t0, y1, t1 = (np.asarray(v, dtype=float) for v in (y0, t0, y1, t1))
        mask = np.zeros(np.broadcast(y0, t0, y1, t1).shape, dtype=bool)
        for s in self.curves:
            a = s.level(y0, t0)
            b = s.level(y1, t1)
            mask |= (a * b < 0) | (b == 0)
        return mask


NO_SEAMS = SeamSet()


# -----------------------------------------------------------------------------
# Curves and results
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Curve1D:
    """Samples of a characteristic s ↦ γ(s)."""

    s: np.ndarray
    values: np.ndarray
    blowup_flag: bool = False
    err_est: float = 0.0

    def __post_init__(self) -> None:
        if self.s.shape != self.values.shape:
            raise ValueError("s and values must have the same shape")
        steps = np.diff(self.s)
        if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("s samples must be strictly monotone")

    @property
    def end(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class QuadResult:
    """Value, error estimate and convergence flag of a quadrature."""

    value: float
    err_est: float
    converged: bool = True
    evaluations: int = field(default=0, compare=False)

    def __iter__(self):
        # Unpacks as (value, err_est).
        yield self.value
        yield self.err_est


class RayleighProblem(BaseModel):
    """Weighted Dirichlet quotient ∫φ'²h / ∫φ²/h with h(t) = A t²/2 + B t + 1."""

    model_config = ConfigDict(frozen=True)

    A: float
    B: float
    R: float = Field(gt=0, description="Half-width of the interval")
    N: int = Field(ge=4, description="Number of elements on [-R, R]")

    @model_validator(mode="after")
    def _check_discriminant(self) -> Self:
        if self.B**2 > 2 * self.A + 1e-12 * (1 + abs(self.A)):
            raise ValueError(f"requires B² ≤ 2A, got A={self.A}, B={self.B}")
        return self

    def h(self, t):
        return 0.5 * self.A * t * t + self.B * t + 1.0
