"""The dilation cone: a stable non-planar field that is not locally Lipschitz at the origin.

    f(y, t) = 0        for t ≤ 0
              2t/y     for 0 < t ≤ y²/2
              y        for t > y²/2

and its Lipschitz approximants f_ε, the strips of a_ε(τ) = clip(τ/ε, 0, 1).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import hyp2f1

from src.core.errors import DomainError
from src.core.settings import logger
from src.core.workers import parallel_map
from src.heisenberg import HPoint
from src.numerics import QuadratureSpec, Rect, SeamSet, integrate2d, parabola_seam, t_seam, y_seam
from src.strips import StripProfile, calibration_nu, strip_second_variation_terms
from src.surfaces.convergence import ConvergenceReport, fitted_rates
from src.variation import ScalarField, TestBump, graph_normal, intrinsic_gradient

CONE_SEAMS = SeamSet((t_seam(0.0), parabola_seam(0.5, 0.0)))

# (s, τ) bump whose τ-profile rises across [0, 0.1], used for the stability ladder.
STABILITY_BUMP = TestBump(center=(0.0, 0.6), radii=(1.0, 0.7))


def _div(num, den):
    num, den = np.broadcast_arrays(np.asarray(num, dtype=float), np.asarray(den, dtype=float))
    return np.divide(num, den, out=np.zeros(num.shape), where=den != 0)


def _branches(y, t, width):
    """(lower, middle, upper) masks for the seams t = 0 and t = (y² + 2ε)/2."""
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    top = 0.5 * (y * y + width)
    lower = t <= 0
    upper = ~lower & (t > top)
    return y, t, lower, ~lower & ~upper, upper


def cone_field() -> ScalarField:
    """The cone with closed-form ∂_y f, ∂_t f and ∇^f f = 0, 2t/y², 1 by branch."""

    def value(y, t):
        y, t, _, mid, up = _branches(y, t, 0.0)
        return np.where(mid, _div(2 * t, y), np.where(up, y, 0.0))

    def d_y(y, t):
        y, t, _, mid, up = _branches(y, t, 0.0)
        return np.where(mid, -_div(2 * t, y * y), np.where(up, 1.0, 0.0))

    def d_t(y, t):
        y, t, _, mid, _ = _branches(y, t, 0.0)
        return np.where(mid, _div(2.0, y), 0.0)

    def intrinsic(y, t):
        y, t, _, mid, up = _branches(y, t, 0.0)
        return np.where(mid, _div(2 * t, y * y), np.where(up, 1.0, 0.0))

    return ScalarField(
        name="cone",
        kind="cone",
        value=value,
        seams=CONE_SEAMS,
        partial_y=d_y,
        partial_t=d_t,
        intrinsic=intrinsic,
        flow=lambda s, tau: np.where(np.asarray(tau) > 0, 0.5 * np.asarray(s) ** 2, 0.0) + tau,
    )


def cone_eps_profile(eps: float) -> StripProfile:
    """a_ε(τ) = 0, τ/ε, 1 on τ ≤ 0, [0, ε], τ ≥ ε."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return StripProfile(
        kind="cone_eps",
        a=lambda tau: np.clip(np.asarray(tau, dtype=float) / eps, 0.0, 1.0),
        a_prime=lambda tau: np.where(
            (np.asarray(tau) > 0) & (np.asarray(tau) < eps), 1.0 / eps, 0.0
        ),
        a_min=0.0,
        a_max=1.0,
        breakpoints=(0.0, eps),
        slope_max=1.0 / eps,
        params={"eps": eps},
    )


def cone_eps(eps: float) -> tuple[ScalarField, StripProfile]:
    """f_ε with seams t = 0 and t = (y² + 2ε)/2, paired with its profile a_ε."""
    profile = cone_eps_profile(eps)
    width = 2.0 * eps

    def value(y, t):
        y, t, _, mid, up = _branches(y, t, width)
        return np.where(mid, 2 * y * t / (y * y + width), np.where(up, y, 0.0))

    def d_y(y, t):
        y, t, _, mid, up = _branches(y, t, width)
        den = y * y + width
        return np.where(mid, -2 * t * (y * y - width) / den**2, np.where(up, 1.0, 0.0))

    def d_t(y, t):
        y, t, _, mid, _ = _branches(y, t, width)
        return np.where(mid, 2 * y / (y * y + width), 0.0)

    def intrinsic(y, t):
        y, t, _, mid, up = _branches(y, t, width)
        return np.where(mid, 2 * t / (y * y + width), np.where(up, 1.0, 0.0))

    field = ScalarField(
        name="cone_eps",
        kind="cone_eps",
        value=value,
        seams=SeamSet((t_seam(0.0), parabola_seam(0.5, eps))),
        partial_y=d_y,
        partial_t=d_t,
        intrinsic=intrinsic,
        flow=lambda s, tau: 0.5 * profile(tau) * np.asarray(s, dtype=float) ** 2 + tau,
        profile=profile,
        lipschitz_t=1.0 / math.sqrt(2.0 * eps),
        params={"eps": eps},
    )
    return field, profile


# -----------------------------------------------------------------------------
# Stability
# -----------------------------------------------------------------------------


def cone_stability_bound(
    eps: float,
    phi_tilde=STABILITY_BUMP,
    spec: QuadratureSpec | None = None,
    M: float | None = None,
) -> tuple[float, float]:
    """(negative term, Mπ√ε) for a bump in (s, τ); M defaults to sup φ̃².

    negative = ∫∫ φ̃²a_ε'/((1+a_ε²)^{3/2}(a_ε's²/2 + 1)) ds dτ. Substituting s = √(2ε)v,
    τ = εw bounds it by √(2ε)·M·∫dv/(1+v²)·∫₀¹(1+w²)^{-3/2}dw = Mπ√ε.
    """
    profile = cone_eps_profile(eps)
    m = phi_tilde.sup_squared if M is None else M
    _, negative = strip_second_variation_terms(profile, phi_tilde, spec)
    return negative, m * math.pi * math.sqrt(eps)


# -----------------------------------------------------------------------------
# Convergence of f_ε → f
# -----------------------------------------------------------------------------


def _g3(y, t):
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    half = 0.5 * y * y
    mid = (t > 0) & (t <= half)
    tail = (t > half) & (t < half + 1.0)
    return np.where(mid, _div(2.0, np.abs(y)), np.where(tail, np.sqrt(_div(2.0, t)), 0.0))


def _lp_distance(g, region: Rect, seams: SeamSet, p: float, spec) -> tuple[float, bool]:
    result = integrate2d(lambda y, t: np.abs(g(y, t)) ** p, region, seams, spec)
    return result.value ** (1.0 / p), result.converged


def cone_convergence(
    eps_ladder,
    p: float = 2.0,
    region: Rect | None = None,
    spec: QuadratureSpec | None = None,
    seed: int = 0,
    samples: int = 1000,
) -> ConvergenceReport:
    """L^p distances of f_ε, ∂_y f_ε, ∂_t f_ε and ∇^{f_ε}f_ε to the cone's, along ``eps_ladder``.

    Pointwise dominations |f_ε| ≤ |y|, |∂_y f_ε| ≤ 1 and |∂_t f_ε| ≤ g₃ are checked on
    ``samples`` seeded points of ``region``.
    """
    if not 1.0 <= p < 3.0:
        raise DomainError(f"p must lie in [1, 3), got {p}")
    region = region or Rect(y0=-2.0, y1=2.0, t0=-2.0, t1=2.0)
    if not all(math.isfinite(v) for v in (region.y0, region.y1, region.t0, region.t1)):
        raise DomainError("cone_convergence needs a bounded region")
    ladder = tuple(sorted((float(e) for e in eps_ladder), reverse=True))
    cone = cone_field()
    rng = np.random.default_rng(seed)
    ys = rng.uniform(region.y0, region.y1, samples)
    ts = rng.uniform(region.t0, region.t1, samples)

    def one(eps: float):
        f_eps, _ = cone_eps(eps)
        seams = cone.seams + f_eps.seams + SeamSet((y_seam(0.0),))
        parts = {
            "f": lambda y, t: f_eps(y, t) - cone(y, t),
            "d_y": lambda y, t: f_eps.d_y(y, t) - cone.d_y(y, t),
            "d_t": lambda y, t: f_eps.d_t(y, t) - cone.d_t(y, t),
            "intrinsic": lambda y, t: intrinsic_gradient(f_eps, y, t)
            - intrinsic_gradient(cone, y, t),
        }
        norms, ok = {}, True
        for name, g in parts.items():
            norms[name], conv = _lp_distance(g, region, seams, p, spec)
            ok &= conv
        norms["sup_f"] = float(np.max(np.abs(parts["f"](ys, ts))))
        violations = int(
            np.count_nonzero(np.abs(f_eps(ys, ts)) > np.abs(ys) + 1e-12)
            + np.count_nonzero(np.abs(f_eps.d_y(ys, ts)) > 1.0 + 1e-12)
            + np.count_nonzero(np.abs(f_eps.d_t(ys, ts)) > _g3(ys, ts) + 1e-12)
        )
        return norms, ok, violations

    results = parallel_map(one, ladder)
    names = list(results[0][0])
    norms = {name: tuple(r[0][name] for r in results) for name in names}
    report = ConvergenceReport(
        parameter="eps",
        ladder=ladder,
        norms=norms,
        rates=fitted_rates(ladder, norms),
        converged=all(r[1] for r in results),
        domination_violations=sum(r[2] for r in results),
        samples=samples,
        checked=("f", "d_y", "d_t", "intrinsic"),
    )
    if not report.passed:
        logger.warning(f"cone convergence ladder {ladder} failed for p={p}")
    return report


def g3_lp_integral(
    p: float, L: float, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """(closed form, quadrature) of ∫_{|y|≤L} ∫_ℝ g₃^p dt dy.

    Per y the t-integral is -p2^{p-1}/(2-p)|y|^{2-p} + 2^p/(2-p)(y²+2)^{(2-p)/2}, and
    2 + 2ln(y²+2) - 2ln y² at p = 2.
    """
    if not 1.0 <= p < 3.0:
        raise DomainError(f"p must lie in [1, 3), got {p}")
    if not L > 0:
        raise DomainError(f"L must be positive, got {L}")
    if p == 2.0:
        closed = (
            4 * L
            + 4 * L * math.log(L * L + 2)
            - 8 * L
            + 8 * math.sqrt(2) * math.atan(L / math.sqrt(2))
            - 8 * L * math.log(L)
            + 8 * L
        )
    else:
        k = (2.0 - p) / 2.0
        power = 2 * L ** (3 - p) / (3 - p)
        shifted = 2 * 2**k * L * float(hyp2f1(-k, 0.5, 1.5, -L * L / 2))
        closed = -p * 2 ** (p - 1) / (2 - p) * power + 2**p / (2 - p) * shifted
    region = Rect(y0=-L, y1=L, t0=0.0, t1=0.5 * L * L + 1.0)
    seams = SeamSet((parabola_seam(0.5, 0.0), parabola_seam(0.5, 1.0), y_seam(0.0)))
    quad = integrate2d(lambda y, t: _g3(y, t) ** p, region, seams, spec).value
    return closed, quad


# -----------------------------------------------------------------------------
# Calibrations and the surface Γ₁ ∪ Γ₂ ∪ Γ₃
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeCalibrationReport:
    samples: int
    comparisons: int
    max_error: float

    @property
    def passed(self) -> bool:
        return self.max_error <= 1e-8


def _oriented_error(normal, cx: float, cy: float) -> float:
    return min(
        math.hypot(normal.cx - cx, normal.cy - cy), math.hypot(normal.cx + cx, normal.cy + cy)
    )


def cone_calibration_check(samples) -> ConeCalibrationReport:
    """Graph normals of the cone against ν (y ≠ 0), X (z < 0) and (X - Y)/√2 (z > 0).

    ``samples`` are (y, t) rows off the seams; agreement is up to orientation.
    """
    f = cone_field()
    rows = np.atleast_2d(np.asarray(samples, dtype=float))
    worst, compared = 0.0, 0
    diagonal = 1.0 / math.sqrt(2.0)
    for y, t in rows:
        normal = graph_normal(f, float(y), float(t))
        p = normal.basepoint
        if p.x != 0.0 or p.y != 0.0:
            nu = calibration_nu(p)
            worst = max(worst, _oriented_error(normal, nu.cx, nu.cy))
            compared += 1
        # Γ₂ has z = 0 up to rounding of t - y·f/2.
        z_tol = 1e-12 * (1.0 + abs(t))
        if p.z < -z_tol:
            worst = max(worst, _oriented_error(normal, 1.0, 0.0))
            compared += 1
        elif p.z > z_tol:
            worst = max(worst, _oriented_error(normal, diagonal, -diagonal))
            compared += 1
    return ConeCalibrationReport(samples=int(rows.shape[0]), comparisons=compared, max_error=worst)


def cone_contains(p: HPoint, tol: float = 1e-9) -> bool:
    """Membership in Γ₁ ∪ Γ₂ ∪ Γ₃ with tolerance relative to |p|.

    Γ₁ = {x = 0, z ≤ 0}, Γ₂ = {z = 0, x between 0 and y}, Γ₃ = {x = y, z ≥ 0}.
    """
    eps = tol * (1.0 + math.sqrt(p.x * p.x + p.y * p.y + p.z * p.z))
    on_first = abs(p.x) <= eps and p.z <= eps
    between = (-eps <= p.x <= p.y + eps) or (p.y - eps <= p.x <= eps)
    on_second = abs(p.z) <= eps and between
    on_third = abs(p.x - p.y) <= eps and p.z >= -eps
    return on_first or on_second or on_third
