"""Nondecreasing continuous profiles a(τ) that generate graphical strips."""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from src.core.constants import tolerances
from src.core.errors import DomainError, RefusedEvaluation

ProfileKind = Literal["constant", "cone_eps", "cantor_n", "cantor_limit", "custom"]
ProfileFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class StripProfile:
    """a(τ) with exact evaluation, its a.e. derivative and the points where a' jumps.

    ``a_prime`` is None when a' is singular (Cantor limit); callers needing it are refused.
    """

    kind: ProfileKind
    a: ProfileFn
    a_prime: ProfileFn | None
    a_min: float
    a_max: float
    breakpoints: tuple[float, ...] = ()
    slope_max: float | None = None
    inversion_tol: float = tolerances.inversion
    params: dict[str, float] = field(default_factory=dict)

    def __call__(self, tau):
        return self.a(tau)

    def derivative(self, tau):
        if self.a_prime is None:
            raise RefusedEvaluation(f"profile {self.label} has no a.e. derivative to integrate")
        return self.a_prime(tau)

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.kind}({args})"


def constant_profile(c: float) -> StripProfile:
    """a ≡ c; the strip is the intrinsic plane f = c·y."""
    return StripProfile(
        kind="constant",
        a=lambda tau: np.full(np.shape(tau), c, dtype=float),
        a_prime=lambda tau: np.zeros(np.shape(tau)),
        a_min=c,
        a_max=c,
        slope_max=0.0,
        params={"c": c},
    )


def table_profile(taus, values) -> StripProfile:
    """Piecewise-linear a through (τ_i, a_i), extended as constants outside the table."""
    taus = np.asarray(taus, dtype=float)
    values = np.asarray(values, dtype=float)
    if taus.ndim != 1 or taus.shape != values.shape or taus.size < 2:
        raise DomainError("profile table needs two equally long columns with ≥ 2 rows")
    if np.any(np.diff(taus) <= 0):
        raise DomainError("profile table τ column must be strictly increasing")
    if np.any(np.diff(values) < 0):
        raise DomainError("profile table a column must be nondecreasing")
    slopes = np.diff(values) / np.diff(taus)

    def a(tau):
        return np.interp(tau, taus, values)

    def a_prime(tau):
        tau = np.asarray(tau, dtype=float)
        idx = np.searchsorted(taus, tau, side="right") - 1
        inside = (idx >= 0) & (idx < slopes.size)
        return np.where(inside, slopes[np.clip(idx, 0, slopes.size - 1)], 0.0)

    return StripProfile(
        kind="custom",
        a=a,
        a_prime=a_prime,
        a_min=float(values[0]),
        a_max=float(values[-1]),
        breakpoints=tuple(float(t) for t in taus),
        slope_max=float(slopes.max()),
    )


def load_profile_table(path) -> StripProfile:
    """Read a two-column CSV (τ, a) with an optional header row."""
    rows = np.genfromtxt(path, delimiter=",", dtype=float)
    if rows.ndim == 2 and np.isnan(rows[0]).any():
        rows = rows[1:]
    if rows.ndim != 2 or rows.shape[1] < 2:
        raise DomainError(f"{path}: expected two columns τ, a")
    return table_profile(rows[:, 0], rows[:, 1])
