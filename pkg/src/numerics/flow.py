"""Characteristic flow γ'(s) = f(s, γ(s)).

Classical RK4 on a fixed output grid. Each output step is checked by step doubling
(one step of size H against two of size H/2, error ≈ |difference| / 15); steps that miss the
local tolerance are halved recursively, so the output grid stays fixed while the integrator
resolves fast growth. |γ| above HEIS_BLOWUP_BOUND marks a blow-up and stops that curve.
"""

from collections.abc import Callable
from typing import Any

import numpy as np

from src.core.constants import flow_config
from src.core.errors import DomainError, FlowError
from src.core.settings import logger, settings
from src.numerics.types import Curve1D

Rhs = Callable[[np.ndarray, np.ndarray], np.ndarray]

_LOCAL_TOL = 1e-12
_MAX_HALVINGS = 48


def _rhs(f: Any) -> Rhs:
    """Accept a ScalarField (anything with ``.value``) or a bare callable f(y, t)."""
    return getattr(f, "value", f)


class _RK4:
    def __init__(self, rhs: Rhs, bound: float):
        self.rhs = rhs
        self.bound = bound

    def _eval(self, s: float, g: np.ndarray, bad: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        bad = bad | ~np.isfinite(g) | (np.abs(np.nan_to_num(g)) > self.bound)
        arg = np.where(bad, 0.0, g)
        k = np.asarray(self.rhs(np.full_like(arg, s), arg), dtype=float)
        k = np.broadcast_to(k, arg.shape)
        if np.any(~np.isfinite(k) & ~bad):
            i = int(np.argmax(~np.isfinite(k) & ~bad))
            raise FlowError(f"non-finite field value at (s, γ) = ({s}, {arg[i]})")
        return np.where(bad, 0.0, k), bad

    def step(self, s: float, g: np.ndarray, h: float, bad: np.ndarray):
        k1, bad = self._eval(s, g, bad)
        k2, bad = self._eval(s + 0.5 * h, g + 0.5 * h * k1, bad)
        k3, bad = self._eval(s + 0.5 * h, g + 0.5 * h * k2, bad)
        k4, bad = self._eval(s + h, g + h * k3, bad)
        out = g + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        bad = bad | ~np.isfinite(out) | (np.abs(np.nan_to_num(out)) > self.bound)
        return out, bad

    def advance(self, s: float, g: np.ndarray, h: float, bad: np.ndarray, depth: int = 0):
        """One output step with recursive halving; returns (value, err, bad)."""
        full, bad_full = self.step(s, g, h, bad)
        mid, bad_mid = self.step(s, g, 0.5 * h, bad)
        half, bad_half = self.step(s + 0.5 * h, mid, 0.5 * h, bad_mid)
        bad_now = bad_full | bad_half
        err = np.where(bad_now, 0.0, np.abs(half - full) / flow_config.richardson_factor)
        ok = bad_now | (err <= _LOCAL_TOL * (1.0 + np.abs(np.where(bad_now, 0.0, half))))
        if np.all(ok):
            return half, err, bad_now
        if depth >= _MAX_HALVINGS:
            # Unresolvable growth is reported as a blow-up.
            return half, err, bad_now | ~ok
        g1, e1, b1 = self.advance(s, g, 0.5 * h, bad, depth + 1)
        g2, e2, b2 = self.advance(s + 0.5 * h, np.where(b1, 0.0, g1), 0.5 * h, b1, depth + 1)
        return g2, e1 + e2, b1 | b2


def flow_batch(
    f: Any,
    s0: float,
    taus,
    s1: float,
    steps: int = flow_config.steps,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Integrate one characteristic per entry of ``taus`` from γ(s0) = tau to s1.

    Returns (s_grid, values[m, steps+1], blown[m], err_est[m]); samples after a blow-up are NaN.
    """
    if steps < 1:
        raise DomainError(f"steps must be ≥ 1, got {steps}")
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    s_grid = np.linspace(s0, s1, steps + 1)
    values = np.full((taus.size, steps + 1), np.nan)
    values[:, 0] = taus
    err = np.zeros(taus.size)
    blown = np.zeros(taus.size, dtype=bool)
    if s0 == s1:
        return s_grid[:1], values[:, :1], blown, err

    rk = _RK4(_rhs(f), settings.BLOWUP_BOUND)
    g = taus.copy()
    h = (s1 - s0) / steps
    for i in range(steps):
        g, e, now = rk.advance(float(s_grid[i]), g, h, blown)
        newly = now & ~blown
        if np.any(newly):
            logger.warning(
                f"blow-up of {int(newly.sum())} characteristic(s) between "
                f"s={s_grid[i]:.6g} and s={s_grid[i + 1]:.6g}"
            )
        blown |= now
        err += np.where(blown, 0.0, e)
        g = np.where(blown, np.nan, g)
        values[:, i + 1] = g
        if np.all(blown):
            break
    return s_grid, values, blown, err


def ode_flow(
    f: Any,
    s0: float,
    tau: float,
    s1: float,
    steps: int = flow_config.steps,
) -> Curve1D:
    """Characteristic through (s0, tau), sampled on ``steps`` uniform steps towards s1.

    A blow-up truncates the curve at the last finite sample and sets ``blowup_flag``.
    """
    s_grid, values, blown, err = flow_batch(f, s0, [tau], s1, steps)
    row = values[0]
    finite = np.isfinite(row)
    last = len(row) if finite.all() else int(np.argmin(finite))
    return Curve1D(
        s=s_grid[:last].copy(),
        values=row[:last].copy(),
        blowup_flag=bool(blown[0]),
        err_est=float(err[0]),
    )


def flow_separation_check(
    f: Any,
    L: float,
    tau_a: float,
    tau_b: float,
    s0: float,
    s1: float,
    steps: int = flow_config.steps,
) -> tuple[float, float]:
    """(|γ_a(s1) - γ_b(s1)|, |tau_a - tau_b|·exp(L|s1 - s0|)).

    ``L`` must dominate the Lipschitz constant of f in t on the traversed region.
    """
    ca = ode_flow(f, s0, tau_a, s1, steps)
    cb = ode_flow(f, s0, tau_b, s1, steps)
    if ca.blowup_flag or cb.blowup_flag:
        raise FlowError("blow-up during the separation check")
    measured = abs(ca.end - cb.end)
    bound = abs(tau_a - tau_b) * float(np.exp(L * abs(s1 - s0)))
    return measured, bound


def flow_semigroup_check(
    f: Any,
    tau: float,
    s0: float,
    sm: float,
    s1: float,
    steps: int = flow_config.steps,
) -> tuple[float, float]:
    """Compare s0 → sm → s1 against s0 → s1.

    Returns (difference, allowance) with allowance ten times the combined step-doubling
    estimates plus a rounding floor.
    """
    direct = ode_flow(f, s0, tau, s1, steps)
    first = ode_flow(f, s0, tau, sm, steps)
    if first.blowup_flag:
        raise FlowError("blow-up on the first leg")
    second = ode_flow(f, sm, first.end, s1, steps)
    if direct.blowup_flag or second.blowup_flag:
        raise FlowError("blow-up during the semigroup check")
    difference = abs(direct.end - second.end)
    allowance = 10.0 * (direct.err_est + first.err_est + second.err_est)
    allowance += 1e-12 * (1.0 + abs(direct.end))
    return difference, allowance
