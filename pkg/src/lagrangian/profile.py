"""Quadratic structure of characteristics and the profile constraints of stable fields."""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from src.core.constants import tolerances
from src.core.errors import DomainError
from src.lagrangian.parametrization import LagrangianMap
from src.numerics import NO_SEAMS, QuadratureSpec, SeamSet, integrate2d

Verdict = Literal["Plane", "NotPlane"]


@dataclass(frozen=True)
class QuadraticProfile:
    """χ(s, τ) ≈ a(τ)(s-ŝ)²/2 + b(τ)(s-ŝ) + c(τ), one least-squares fit per τ."""

    tau: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    residuals: np.ndarray
    s_hat: float = 0.0

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    def write_csv(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["tau", "a", "b", "c", "residual"])
            for row in zip(self.tau, self.a, self.b, self.c, self.residuals, strict=True):
                writer.writerow([f"{v:.12g}" for v in row])
        return path


def fit_quadratic(m: LagrangianMap, s_hat: float = 0.0) -> QuadraticProfile:
    """Least squares per τ against the basis {1, s-ŝ, (s-ŝ)²/2}."""
    if m.s.size < 4:
        raise DomainError(f"fit_quadratic needs ≥ 4 s-samples, got {m.s.size}")
    ds = m.s - s_hat
    basis = np.column_stack([np.ones_like(ds), ds, 0.5 * ds * ds])
    coef, _, rank, _ = np.linalg.lstsq(basis, m.chi.T, rcond=None)
    if rank < 3:
        raise DomainError("degenerate s-grid for the quadratic fit")
    residuals = np.max(np.abs(basis @ coef - m.chi.T), axis=0)
    return QuadraticProfile(
        tau=m.tau.copy(), a=coef[2], b=coef[1], c=coef[0], residuals=residuals, s_hat=s_hat
    )


@dataclass(frozen=True)
class ProfileReport:
    pairs: int
    equal_pairs: int
    strict_pairs: int
    violating_pairs: int
    a_prime: np.ndarray
    b_prime: np.ndarray
    flagged_samples: np.ndarray

    @property
    def passed(self) -> bool:
        return self.violating_pairs == 0 and self.flagged_samples.size == 0


def profile_constraints_check(profile: QuadraticProfile, tol: float | None = None) -> ProfileReport:
    """Pairwise: a and b agree, or 2(a₁-a₂)(τ₁-τ₂) > (b₁-b₂)². Pointwise: a' = b' = 0 or 2a' > b'².

    Equality tolerance is max(1e-10, 10·max_residual) unless ``tol`` is given.
    """
    eq = tol if tol is not None else max(tolerances.profile_equality, 10 * profile.max_residual)
    i, j = np.triu_indices(profile.tau.size, k=1)
    da = profile.a[i] - profile.a[j]
    db = profile.b[i] - profile.b[j]
    dt = profile.tau[i] - profile.tau[j]
    equal = (np.abs(da) <= eq) & (np.abs(db) <= eq)
    strict = ~equal & (2.0 * da * dt > db * db)

    if profile.tau.size >= 2:
        edge = 2 if profile.tau.size >= 3 else 1
        a_prime = np.gradient(profile.a, profile.tau, edge_order=edge)
        b_prime = np.gradient(profile.b, profile.tau, edge_order=edge)
    else:
        a_prime = b_prime = np.zeros_like(profile.a)
    # Derivatives of fitted data carry noise of order eq / Δτ.
    slack = eq / max(float(np.min(np.diff(profile.tau))), 1e-300) if profile.tau.size >= 2 else eq
    flat = (np.abs(a_prime) <= slack) & (np.abs(b_prime) <= slack)
    convex = 2.0 * a_prime > b_prime**2 - slack
    flagged = np.flatnonzero(~flat & ~convex)
    return ProfileReport(
        pairs=int(i.size),
        equal_pairs=int(equal.sum()),
        strict_pairs=int(strict.sum()),
        violating_pairs=int((~equal & ~strict).sum()),
        a_prime=a_prime,
        b_prime=b_prime,
        flagged_samples=flagged,
    )


def bernstein_verdict(profile: QuadraticProfile, tol: float = tolerances.plane) -> Verdict:
    """Plane iff a and b are constant over the samples within ``tol``."""
    if profile.tau.size == 0:
        raise DomainError("empty profile")
    a_range = float(np.ptp(profile.a))
    b_range = float(np.ptp(profile.b))
    return "Plane" if a_range <= tol and b_range <= tol else "NotPlane"


# -----------------------------------------------------------------------------
# Second variation in Lagrangian coordinates
# -----------------------------------------------------------------------------


def lagrangian_second_variation_terms(
    a,
    a_prime,
    b_prime,
    phi_tilde,
    spec: QuadratureSpec | None = None,
    seams: SeamSet = NO_SEAMS,
) -> tuple[float, float]:
    """(positive, negative) with II = positive - 2·negative, where with D = a's²/2 + b's + 1

    positive = ∫∫ (∂_sφ̃)²·D/(1+a²)^{3/2}
    negative = ∫∫ φ̃²(2a' - b'²)/(2·D·(1+a²)^{3/2})

    ``a``, ``a_prime`` and ``b_prime`` are functions of τ; ``phi_tilde`` lives in (s, τ).
    """
    region = phi_tilde.support

    def weights(s, tau):
        av, ap, bp = a(tau), a_prime(tau), b_prime(tau)
        d = 0.5 * ap * s * s + bp * s + 1.0
        return d, (1.0 + av * av) ** 1.5, ap, bp

    def positive(s, tau):
        d, w, _, _ = weights(s, tau)
        return phi_tilde.d_u(s, tau) ** 2 * d / w

    def negative(s, tau):
        d, w, ap, bp = weights(s, tau)
        return phi_tilde.value(s, tau) ** 2 * (2.0 * ap - bp * bp) / (2.0 * d * w)

    pos = integrate2d(positive, region, seams, spec).value
    neg = integrate2d(negative, region, seams, spec).value
    return pos, neg


def lagrangian_second_variation(
    a,
    a_prime,
    b_prime,
    phi_tilde,
    spec: QuadratureSpec | None = None,
    seams: SeamSet = NO_SEAMS,
) -> float:
    """∫∫ (∂_sφ̃)²D/(1+a²)^{3/2} - φ̃²(2a'-b'²)/(D(1+a²)^{3/2}) ds dτ, D = a's²/2 + b's + 1."""
    pos, neg = lagrangian_second_variation_terms(a, a_prime, b_prime, phi_tilde, spec, seams)
    return pos - 2.0 * neg
