"""Lagrangian parametrizations Ψ(s, τ) = (s, χ(s, τ)) and their axiom checks.

Each column τ of a map is the characteristic s ↦ χ(s, τ) of ∇^f = ∂_y + f∂_t through (0, τ),
so χ(0, τ) = τ. Fields with a closed-form flow are sampled exactly; all others are integrated
with RK4 in both directions from s = 0.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import RectBivariateSpline

from src.core.constants import flow_config, tolerances
from src.core.errors import DomainError, FlowError, JacobianError
from src.core.settings import logger, settings
from src.core.workers import parallel_map
from src.numerics import (
    NO_SEAMS,
    QuadratureSpec,
    Rect,
    SeamSet,
    bisect_monotone,
    fd_partial,
    flow_batch,
    integrate2d,
    t_seam,
)
from src.variation import ScalarField, TestBump, intrinsic_gradient


@dataclass(frozen=True)
class LagrangianMap:
    """χ sampled on tau × s (rows are characteristics)."""

    field: ScalarField
    s: np.ndarray
    tau: np.ndarray
    chi: np.ndarray
    exact: bool = False
    normalized: bool = True
    err_est: np.ndarray | None = None
    tau_seams: SeamSet = NO_SEAMS

    def __post_init__(self) -> None:
        if self.chi.shape != (self.tau.size, self.s.size):
            raise DomainError(f"chi must have shape (len(tau), len(s)), got {self.chi.shape}")
        if np.any(np.diff(self.s) <= 0) or np.any(np.diff(self.tau) <= 0):
            raise DomainError("s and tau grids must be strictly increasing")

    @property
    def parameter_rect(self) -> Rect:
        return Rect(y0=self.s[0], y1=self.s[-1], t0=self.tau[0], t1=self.tau[-1])

    @cached_property
    def _spline(self) -> RectBivariateSpline:
        kx = min(3, self.tau.size - 1)
        ky = min(3, self.s.size - 1)
        return RectBivariateSpline(self.tau, self.s, self.chi, kx=kx, ky=ky)

    def chi_at(self, s, tau):
        """χ(s, τ) off the grid: the exact flow when available, a bicubic spline otherwise."""
        if self.exact and self.field.flow is not None:
            return self.field.flow(s, tau)
        s, tau = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(tau, dtype=float))
        return self._spline.ev(tau, s)

    def dchi_dtau(self, s, tau, h: float = tolerances.tau_spacing):
        """∂_τχ by finite differences in τ (one-sided next to τ-seams)."""
        return fd_partial(lambda u, v: self.chi_at(u, v), s, tau, "t", h, self.tau_seams)


def _tau_seams_for(f: ScalarField) -> SeamSet:
    if f.profile is not None:
        return SeamSet(tuple(t_seam(tk) for tk in f.profile.breakpoints))
    # Where a seam crosses s = 0 its characteristic carries the kink.
    levels = [s.c if s.kind == "t" else s.d for s in f.seams.t_curves]
    return SeamSet(tuple(t_seam(v) for v in dict.fromkeys(levels)))


def _split_steps(s_min: float, s_max: float, steps: int) -> tuple[int, int]:
    n_neg = round(steps * (-s_min) / (s_max - s_min))
    n_pos = steps - n_neg
    n_neg = max(1, n_neg) if s_min < 0 else 0
    n_pos = max(1, n_pos) if s_max > 0 else 0
    return n_neg, n_pos


def _ode_columns(f: ScalarField, taus: np.ndarray, s_min: float, s_max: float, steps: int):
    n_neg, n_pos = _split_steps(s_min, s_max, steps)
    chunks = np.array_split(taus, max(1, min(settings.THREADS, taus.size)))

    def run(chunk: np.ndarray):
        parts, err, blown = [], np.zeros(chunk.size), np.zeros(chunk.size, dtype=bool)
        s_parts = []
        if n_neg:
            s_b, v_b, bl, e = flow_batch(f, 0.0, chunk, s_min, n_neg)
            s_parts.append(s_b[::-1])
            parts.append(v_b[:, ::-1])
            err, blown = err + e, blown | bl
        if n_pos:
            s_f, v_f, bl, e = flow_batch(f, 0.0, chunk, s_max, n_pos)
            start = 1 if n_neg else 0
            s_parts.append(s_f[start:])
            parts.append(v_f[:, start:])
            err, blown = err + e, blown | bl
        return np.concatenate(s_parts), np.concatenate(parts, axis=1), err, blown

    results = parallel_map(run, [c for c in chunks if c.size])
    s_grid = results[0][0]
    chi = np.concatenate([r[1] for r in results], axis=0)
    err = np.concatenate([r[2] for r in results])
    blown = np.concatenate([r[3] for r in results])
    return s_grid, chi, err, blown


def build_parametrization(
    f: ScalarField,
    s_range: tuple[float, float],
    tau_samples,
    steps: int = flow_config.steps,
    exact: bool = True,
) -> LagrangianMap:
    """One characteristic per τ-sample through (0, τ), normalized so χ(0, τ) = τ.

    ``s_range`` must contain 0. With ``exact`` and a closed-form flow the grid is sampled
    from it directly.
    """
    s_min, s_max = (float(v) for v in s_range)
    if not (s_min <= 0.0 <= s_max and s_min < s_max):
        raise DomainError(f"s_range must contain 0, got {s_range}")
    taus = np.asarray(tau_samples, dtype=float)
    seams = _tau_seams_for(f)

    if exact and f.flow is not None:
        n_neg, n_pos = _split_steps(s_min, s_max, steps)
        s_grid = np.concatenate(
            [np.linspace(s_min, 0.0, n_neg + 1)[:-1], np.linspace(0.0, s_max, n_pos + 1)]
        )
        chi = np.asarray(f.flow(s_grid[None, :], taus[:, None]), dtype=float)
        chi = np.broadcast_to(chi, (taus.size, s_grid.size)).copy()
        chi[:, np.searchsorted(s_grid, 0.0)] = taus
        return LagrangianMap(f, s_grid, taus, chi, exact=True, tau_seams=seams)

    s_grid, chi, err, blown = _ode_columns(f, taus, s_min, s_max, steps)
    if np.any(blown):
        raise FlowError(
            f"{int(blown.sum())} characteristic(s) of {f.label} blow up inside s ∈ {s_range}"
        )
    logger.debug(f"built {f.label} map: {taus.size} characteristics, max err {err.max():.2e}")
    return LagrangianMap(f, s_grid, taus, chi, exact=False, err_est=err, tau_seams=seams)


# -----------------------------------------------------------------------------
# Axioms
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    monotone_violations: int
    min_tau_increment: float
    ode_residual: float
    coverage: float
    normalized: bool

    @property
    def passed(self) -> bool:
        return (
            self.monotone_violations == 0
            and self.ode_residual <= tolerances.axiom_residual
            and self.normalized
        )


def _coverage(m: LagrangianMap, target: Rect | None, samples: int = 64) -> float:
    lower, upper = m.chi.min(axis=0), m.chi.max(axis=0)
    if target is None:
        t0, t1 = float(lower.max()), float(upper.min())
        if t0 >= t1:
            t0, t1 = float(m.tau[0]), float(m.tau[-1])
        target = Rect(y0=m.s[0], y1=m.s[-1], t0=t0, t1=t1)
    ys = np.linspace(target.y0, target.y1, samples)
    ts = np.linspace(target.t0, target.t1, samples)
    lo = np.interp(ys, m.s, lower)
    hi = np.interp(ys, m.s, upper)
    inside_s = (ys >= m.s[0]) & (ys <= m.s[-1])
    covered = inside_s[:, None] & (ts[None, :] >= lo[:, None]) & (ts[None, :] <= hi[:, None])
    return float(covered.mean())


def check_axioms(m: LagrangianMap, target: Rect | None = None) -> AxiomReport:
    """Monotonicity in τ, the characteristic ODE residual and grid coverage.

    Coverage is the fraction of a uniform grid over ``target`` lying between the lowest and
    highest characteristic (default target: the band every characteristic spans).
    """
    steps = np.diff(m.chi, axis=0)
    noise = tolerances.monotone_noise * (1.0 + np.abs(m.chi[1:]))
    violations = int(np.count_nonzero(steps < -noise))
    edge = 2 if m.s.size >= 3 else 1
    dchi_ds = np.gradient(m.chi, m.s, axis=1, edge_order=edge)
    S = np.broadcast_to(m.s[None, :], m.chi.shape)
    residual = float(np.max(np.abs(dchi_ds - m.field.value(S, m.chi))))
    zero = np.flatnonzero(m.s == 0.0)
    normalized = bool(zero.size) and bool(np.all(m.chi[:, zero[0]] == m.tau))
    return AxiomReport(
        monotone_violations=violations,
        min_tau_increment=float(steps.min()) if steps.size else 0.0,
        ode_residual=residual,
        coverage=_coverage(m, target),
        normalized=normalized,
    )


# -----------------------------------------------------------------------------
# Area formula and change of variables
# -----------------------------------------------------------------------------


def area_formula_check(
    m: LagrangianMap, eta, eta_support: Rect, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """(∫ η(Ψ)·∂_τχ ds dτ over the parameter rectangle, ∫ η dy dt over ``eta_support``)."""

    def pulled(s, tau):
        return eta(s, m.chi_at(s, tau)) * m.dchi_dtau(s, tau)

    lhs = integrate2d(pulled, m.parameter_rect, m.tau_seams, spec).value
    rhs = integrate2d(eta, eta_support, NO_SEAMS, spec).value
    return lhs, rhs


@dataclass(frozen=True)
class ChangeOfVariablesReport:
    dt_rule: float
    dy_rule: float
    gradient_rule: float
    jacobian_rule: float
    min_jacobian: float
    points: int

    @property
    def max_residual(self) -> float:
        return max(self.dt_rule, self.dy_rule, self.gradient_rule, self.jacobian_rule)


def change_of_variables_check(
    m: LagrangianMap,
    phi: TestBump,
    h: float = tolerances.tau_spacing,
    samples: int = 41,
) -> ChangeOfVariablesReport:
    """Residuals of the change-of-variables rules on a grid over the parameter rectangle.

    With φ̃ = φ∘Ψ and f̃ = f∘Ψ:
        (∂_tφ)~ = ∂_τφ̃/∂_τχ
        (∂_yφ)~ = ∂_sφ̃ - f̃·∂_τφ̃/∂_τχ
        (∇^fφ)~ = ∂_sφ̃
        ∂_s∂_τχ = (∂_tf)~·∂_τχ
    Grid points on a τ-seam are skipped.
    """
    s = np.linspace(m.s[0], m.s[-1], samples)[1:-1]
    tau = np.linspace(m.tau[0], m.tau[-1], samples)[1:-1]
    S, T = np.meshgrid(s, tau)
    keep = ~m.tau_seams.on_seam(S, T, tol=1e-12) if len(m.tau_seams) else np.ones(S.shape, bool)
    S, T = S[keep], T[keep]
    # Stencils must stay inside the sampled parameter rectangle.
    inner = (S - 2 * h > m.s[0]) & (S + 2 * h < m.s[-1]) & (T - 2 * h > m.tau[0]) & (
        T + 2 * h < m.tau[-1]
    )
    S, T = S[inner], T[inner]

    def phi_t(u, v):
        return phi.value(u, m.chi_at(u, v))

    chi = m.chi_at(S, T)
    jac = fd_partial(lambda u, v: m.chi_at(u, v), S, T, "t", h, m.tau_seams, order=4)
    min_jac = float(np.min(jac)) if jac.size else float("inf")
    if min_jac < tolerances.jacobian_floor:
        raise JacobianError(f"∂_τχ = {min_jac:.3e} below the floor {tolerances.jacobian_floor}")

    dphi_ds = fd_partial(phi_t, S, T, "y", h, NO_SEAMS, order=4)
    dphi_dtau = fd_partial(phi_t, S, T, "t", h, m.tau_seams, order=4)
    f_tilde = m.field.value(S, chi)
    py, pt = phi.d_u(S, chi), phi.d_v(S, chi)

    def jac_at(u, v):
        return fd_partial(lambda a, b: m.chi_at(a, b), u, v, "t", h, m.tau_seams, order=4)

    mixed = fd_partial(jac_at, S, T, "y", h, NO_SEAMS, order=4)
    ft = m.field.d_t(S, chi)

    def worst(residual) -> float:
        return float(np.max(np.abs(residual))) if residual.size else 0.0

    return ChangeOfVariablesReport(
        dt_rule=worst(pt - dphi_dtau / jac),
        dy_rule=worst(py - (dphi_ds - f_tilde * dphi_dtau / jac)),
        gradient_rule=worst(py + f_tilde * pt - dphi_ds),
        jacobian_rule=worst(mixed - ft * jac),
        min_jacobian=min_jac,
        points=int(S.size),
    )


# -----------------------------------------------------------------------------
# Inverse map and pulled-back test functions
# -----------------------------------------------------------------------------


def inverse_map(m: LagrangianMap, y, t):
    """ρ(y, t): the τ whose characteristic passes through (y, t)."""
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    shape = y.shape
    yf, tf = y.ravel(), t.ravel()
    lo = np.full(yf.shape, m.tau[0])
    hi = np.full(yf.shape, m.tau[-1])
    tau = bisect_monotone(lambda v: m.chi_at(yf, v), lo, hi, tf)
    tau = np.asarray(tau, dtype=float).reshape(shape)
    return float(tau) if tau.ndim == 0 else tau


class PulledBackBump:
    """φ̃(s, τ) = φ(s, χ(s, τ)) for a map with an exact flow.

    ∂_sφ̃ = ∂_yφ + f·∂_tφ along the characteristic and ∂_τφ̃ = ∂_tφ·∂_τχ.
    """

    def __init__(self, phi: TestBump, m: LagrangianMap):
        if not m.exact:
            raise DomainError("pulling back a bump needs a map with an exact flow")
        self.phi = phi
        self.map = m

    @property
    def label(self) -> str:
        return f"pullback[{self.phi.label}]"

    @property
    def sup_squared(self) -> float:
        return self.phi.sup_squared

    @property
    def support(self) -> Rect:
        box = self.phi.support
        ys = np.linspace(box.y0, box.y1, 65)
        lo = inverse_map(self.map, ys, np.full_like(ys, box.t0))
        hi = inverse_map(self.map, ys, np.full_like(ys, box.t1))
        return Rect(y0=box.y0, y1=box.y1, t0=float(np.min(lo)), t1=float(np.max(hi)))

    def value(self, s, tau):
        return self.phi.value(s, self.map.chi_at(s, tau))

    def d_u(self, s, tau):
        chi = self.map.chi_at(s, tau)
        f = self.map.field.value(s, chi)
        return self.phi.d_u(s, chi) + f * self.phi.d_v(s, chi)

    def d_v(self, s, tau):
        chi = self.map.chi_at(s, tau)
        return self.phi.d_v(s, chi) * self.map.dchi_dtau(s, tau)


# -----------------------------------------------------------------------------
# Lagrangian first variation
# -----------------------------------------------------------------------------


def lagrangian_first_variation(
    m: LagrangianMap, theta: TestBump, spec: QuadratureSpec | None = None
) -> float:
    """∫∫ ∂_s²χ/√(1+(∂_s²χ)²)·∂_sθ ds dτ with ∂_s²χ = ∇^f f along the characteristic."""

    def integrand(s, tau):
        g = intrinsic_gradient(m.field, s, m.chi_at(s, tau))
        return g / np.sqrt(1.0 + g * g) * theta.d_u(s, tau)

    return integrate2d(integrand, theta.support, m.tau_seams, spec).value

