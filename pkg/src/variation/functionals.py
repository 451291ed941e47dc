"""Intrinsic gradient, graph area and the first and second variation of the area."""

from dataclasses import dataclass

import numpy as np

from src.core.errors import DomainError, RefusedEvaluation
from src.heisenberg import HVector, graph_map
from src.numerics import QuadratureSpec, QuadResult, Rect, integrate2d
from src.variation.bumps import TestBump
from src.variation.fields import ScalarField


@dataclass(frozen=True)
class VariationReport:
    field: str
    bump: str
    I_value: float
    II_value: float
    I_err: float
    II_err: float
    converged: bool


def intrinsic_gradient(f: ScalarField, y, t):
    """∇^f f = ∂_y f + f·∂_t f (closed form when the field has one)."""
    if f.intrinsic is not None:
        return f.intrinsic(y, t)
    return f.d_y(y, t) + f.value(y, t) * f.d_t(y, t)


def graph_normal(f: ScalarField, y: float, t: float) -> HVector:
    """Horizontal unit normal (-X + ∇^f f·Y)/√(1 + (∇^f f)²) at the graph point over (y, t)."""
    g = float(intrinsic_gradient(f, y, t))
    norm = float(np.hypot(1.0, g))
    return HVector(-1.0 / norm, g / norm, 0.0, graph_map(float(f.value(y, t)), y, t))


def graph_area_result(
    f: ScalarField, region: Rect, spec: QuadratureSpec | None = None
) -> QuadResult:
    if not f.domain.contains(region):
        raise DomainError(f"region {region} is not inside the domain of {f.label}")

    def integrand(y, t):
        return np.sqrt(1.0 + intrinsic_gradient(f, y, t) ** 2)

    return integrate2d(integrand, region, f.seams, spec)


def graph_area(f: ScalarField, region: Rect, spec: QuadratureSpec | None = None) -> float:
    """𝒜_f(E) = ∫_E √(1 + (∇^f f)²)."""
    return graph_area_result(f, region, spec).value


# -----------------------------------------------------------------------------
# Variations
# -----------------------------------------------------------------------------


def _check_variation(f: ScalarField, phi: TestBump) -> Rect:
    if f.refuse_variation:
        raise RefusedEvaluation(
            f"{f.label} has a singular ∂_t; use its approximants for variation integrals"
        )
    support = phi.support
    d = f.domain
    if not (d.y0 < support.y0 and support.y1 < d.y1 and d.t0 < support.t0 and support.t1 < d.t1):
        raise DomainError(f"{phi.label} is not supported in the interior of {f.label}'s domain")
    return support


def _terms(f: ScalarField, phi: TestBump, y, t):
    fv = f.value(y, t)
    g = intrinsic_gradient(f, y, t)
    ft = f.d_t(y, t)
    p = phi.value(y, t)
    pt = phi.d_v(y, t)
    grad_phi = phi.d_u(y, t) + fv * pt
    return g, ft, p, pt, grad_phi


def first_variation_result(
    f: ScalarField, phi: TestBump, spec: QuadratureSpec | None = None
) -> QuadResult:
    support = _check_variation(f, phi)

    def integrand(y, t):
        g, ft, p, _, grad_phi = _terms(f, phi, y, t)
        return -g / np.sqrt(1.0 + g * g) * (grad_phi + ft * p)

    return integrate2d(integrand, support, f.seams, spec)


def second_variation_result(
    f: ScalarField, phi: TestBump, spec: QuadratureSpec | None = None
) -> QuadResult:
    support = _check_variation(f, phi)

    def integrand(y, t):
        g, ft, p, pt, grad_phi = _terms(f, phi, y, t)
        w = 1.0 + g * g
        return (grad_phi + ft * p) ** 2 / w**1.5 + g / np.sqrt(w) * 2.0 * p * pt

    return integrate2d(integrand, support, f.seams, spec)


def first_variation(f: ScalarField, phi: TestBump, spec: QuadratureSpec | None = None) -> float:
    """I_f(φ) = -∫ ∇^f f/√(1+(∇^f f)²) · (∇^f φ + ∂_t f·φ)."""
    return first_variation_result(f, phi, spec).value


def second_variation(f: ScalarField, phi: TestBump, spec: QuadratureSpec | None = None) -> float:
    """II_f(φ) = ∫ (∇^f φ + ∂_t f·φ)²/(1+(∇^f f)²)^{3/2} + ∇^f f/√(1+(∇^f f)²)·2φ∂_tφ."""
    return second_variation_result(f, phi, spec).value


def variation_report(
    f: ScalarField, phi: TestBump, spec: QuadratureSpec | None = None
) -> VariationReport:
    first = first_variation_result(f, phi, spec)
    second = second_variation_result(f, phi, spec)
    return VariationReport(
        field=f.label,
        bump=phi.label,
        I_value=first.value,
        II_value=second.value,
        I_err=first.err_est,
        II_err=second.err_est,
        converged=first.converged and second.converged,
    )


# -----------------------------------------------------------------------------
# Finite-difference consistency
# -----------------------------------------------------------------------------


def _perturbed_area(f: ScalarField, phi: TestBump, h: float, support: Rect, spec) -> float:
    def integrand(y, t):
        fv = f.value(y, t) + h * phi.value(y, t)
        fy = f.d_y(y, t) + h * phi.d_u(y, t)
        ft = f.d_t(y, t) + h * phi.d_v(y, t)
        return np.sqrt(1.0 + (fy + fv * ft) ** 2)

    return integrate2d(integrand, support, f.seams, spec).value


def variation_fd_check(
    f: ScalarField,
    phi: TestBump,
    h: float = 1e-3,
    spec: QuadratureSpec | None = None,
    panels: int = 16,
) -> tuple[float, float]:
    """(errI, errII): variations against central differences of 𝒜_{f+hφ} over supp φ.

    All integrals share one fixed node set, so what remains is the O(h²) difference error.
    """
    support = _check_variation(f, phi)
    fixed = (spec or QuadratureSpec()).fixed(panels)
    plus = _perturbed_area(f, phi, h, support, fixed)
    zero = _perturbed_area(f, phi, 0.0, support, fixed)
    minus = _perturbed_area(f, phi, -h, support, fixed)
    first = first_variation_result(f, phi, fixed).value
    second = second_variation_result(f, phi, fixed).value
    # first_variation carries the opposite sign to d/dh 𝒜_{f+hφ}.
    err_first = abs(first + (plus - minus) / (2.0 * h))
    err_second = abs(second - (plus - 2.0 * zero + minus) / (h * h))
    return err_first, err_second
