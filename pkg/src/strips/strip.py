"""Graphical strips: the field f with f(s, a(τ)s²/2 + τ) = a(τ)·s."""

import numpy as np

from src.core.errors import RefusedEvaluation
from src.lagrangian.profile import lagrangian_second_variation_terms
from src.numerics import QuadratureSpec, SeamSet, bisect_monotone, parabola_seam, t_seam
from src.strips.profiles import StripProfile
from src.variation import ScalarField, TestBump
from src.variation.fields import FieldFn


def strip_forward(profile: StripProfile, s, tau):
    """(s, τ) ↦ (y, t) = (s, a(τ)s²/2 + τ)."""
    s = np.asarray(s, dtype=float)
    return s, 0.5 * profile(tau) * s * s + tau


def strip_tau(profile: StripProfile, y, t):
    """τ(y, t): the unique root of a(τ)y²/2 + τ = t."""
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    shape = y.shape
    half = 0.5 * y.ravel() ** 2
    t = t.ravel()
    if profile.a_min == profile.a_max:
        tau = t - profile.a_min * half
    else:
        tau = bisect_monotone(
            lambda tau: profile(tau) * half + tau,
            t - profile.a_max * half,
            t - profile.a_min * half,
            t,
            tol=profile.inversion_tol,
        )
    tau = np.asarray(tau, dtype=float).reshape(shape)
    return float(tau) if tau.ndim == 0 else tau


class _Inverter:
    """One-entry cache: an integrand asks for f, ∂f and ∇^f f on the same node arrays."""

    def __init__(self, profile: StripProfile):
        self.profile = profile
        self._last: tuple | None = None

    def __call__(self, y, t):
        last = self._last
        if (
            last is not None
            and np.shape(y) == np.shape(last[0])
            and np.shape(t) == np.shape(last[1])
            and np.array_equal(y, last[0])
            and np.array_equal(t, last[1])
        ):
            return last[2]
        tau = strip_tau(self.profile, y, t)
        self._last = (np.array(y, dtype=float), np.array(t, dtype=float), tau)
        return tau


def strip_seams(profile: StripProfile) -> SeamSet:
    """Images of the profile breakpoints: t = a(τ_k)y²/2 + τ_k."""
    curves = [parabola_seam(0.5 * float(profile(tk)), tk) for tk in profile.breakpoints]
    return SeamSet(tuple(dict.fromkeys(curves)))


def strip_field(
    profile: StripProfile, name: str = "strip", partial_t: FieldFn | None = None
) -> ScalarField:
    """The strip field of ``profile``; partials follow from differentiating the inversion.

    With D = a'(τ)y²/2 + 1:  ∂_t f = a'y/D,  ∂_y f = a - a·a'y²/D,  ∇^f f = a(τ).
    ``partial_t`` overrides the closed form when a' is singular.
    """
    tau_of = _Inverter(profile)

    def value(y, t):
        return profile(tau_of(y, t)) * np.asarray(y, dtype=float)

    def intrinsic(y, t):
        return profile(tau_of(y, t)) * np.ones_like(np.asarray(y, dtype=float))

    def d_t(y, t):
        tau = tau_of(y, t)
        y = np.asarray(y, dtype=float)
        ap = profile.derivative(tau)
        return ap * y / (0.5 * ap * y * y + 1.0)

    def d_y(y, t):
        tau = tau_of(y, t)
        y = np.asarray(y, dtype=float)
        a, ap = profile(tau), profile.derivative(tau)
        return a - a * ap * y * y / (0.5 * ap * y * y + 1.0)

    singular = profile.a_prime is None
    lipschitz = None if profile.slope_max is None else float(np.sqrt(0.5 * profile.slope_max))
    return ScalarField(
        name=name,
        kind="strip",
        value=value,
        seams=strip_seams(profile),
        partial_y=None if singular else d_y,
        partial_t=partial_t if singular else d_t,
        intrinsic=intrinsic,
        flow=lambda s, tau: 0.5 * profile(tau) * np.asarray(s, dtype=float) ** 2 + tau,
        profile=profile,
        lipschitz_t=lipschitz,
        refuse_variation=singular,
        params=dict(profile.params),
    )


def tau_seams(profile: StripProfile) -> SeamSet:
    """Breakpoints as constant-τ seams in Lagrangian coordinates."""
    return SeamSet(tuple(t_seam(tk) for tk in profile.breakpoints))


def strip_second_variation_terms(
    profile: StripProfile, phi_tilde, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """(positive, negative) with II = positive - 2·negative in (s, τ) coordinates.

    negative = ∫∫ φ̃²a'/((1+a²)^{3/2}(a's²/2+1)).
    """
    if profile.a_prime is None:
        raise RefusedEvaluation(f"{profile.label}: a' is singular, use the level-n approximants")
    zero = lambda tau: np.zeros(np.shape(tau))  # noqa: E731
    return lagrangian_second_variation_terms(
        profile.a, profile.derivative, zero, phi_tilde, spec, tau_seams(profile)
    )


def strip_second_variation(
    profile: StripProfile, phi_tilde: TestBump, spec: QuadratureSpec | None = None
) -> float:
    """∫ (∂_sφ̃)²(a's²/2+1)/(1+a²)^{3/2} - 2φ̃²a'/((1+a²)^{3/2}(a's²/2+1)) ds dτ."""
    positive, negative = strip_second_variation_terms(profile, phi_tilde, spec)
    return positive - 2.0 * negative
