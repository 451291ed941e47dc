"""Smallest eigenvalue of the weighted Dirichlet quotient ∫φ'²h / ∫φ²/h on (-R, R).

Piecewise-linear finite elements on N uniform elements with φ(±R) = 0 give a symmetric
tridiagonal pencil (K, M). The stiffness weight h is quadratic, so K is exact; M uses a
six-point Gauss rule per element. The smallest eigenvalue of K v = λ M v is found by
bisection on the Sturm count: the number of negative pivots in the LDLᵀ factorization of
K - σM equals the number of eigenvalues below σ.
"""

import math

import numpy as np

from src.core.errors import DomainError
from src.numerics.types import RayleighProblem

_GAUSS_POINTS = 6


def _assemble(prob: RayleighProblem) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = prob.N
    nodes = np.linspace(-prob.R, prob.R, n + 1)
    dx = nodes[1] - nodes[0]
    x, w = np.polynomial.legendre.leggauss(_GAUSS_POINTS)

    left, right = nodes[:-1], nodes[1:]
    # Simpson is exact for the quadratic weight.
    h_int = dx / 6.0 * (prob.h(left) + 4.0 * prob.h(0.5 * (left + right)) + prob.h(right))

    u = 0.5 * (x + 1.0)  # local coordinate on [0, 1]
    pts = left[:, None] + dx * u[None, :]
    hv = prob.h(pts)
    # A double root of h (B² = 2A) may sit on a node; 1/h is only sampled at Gauss points.
    if np.any(hv <= 0) or np.any(prob.h(nodes) < 0):
        raise DomainError(f"h ≤ 0 inside [-R, R] for A={prob.A}, B={prob.B}, R={prob.R}")
    inv_h = 0.5 * dx * w[None, :] / hv
    m_ll = np.sum(inv_h * (1.0 - u) ** 2, axis=1)
    m_rr = np.sum(inv_h * u**2, axis=1)
    m_lr = np.sum(inv_h * u * (1.0 - u), axis=1)

    # Interior nodes 1..N-1.
    k_diag = (h_int[:-1] + h_int[1:]) / dx**2
    k_off = -h_int[1:-1] / dx**2
    m_diag = m_rr[:-1] + m_ll[1:]
    m_off = m_lr[1:-1]
    return k_diag, k_off, m_diag, m_off


def _count_below(sigma: float, k_diag, k_off, m_diag, m_off) -> int:
    a = k_diag - sigma * m_diag
    b2 = (k_off - sigma * m_off) ** 2
    count = 0
    d = a[0]
    tiny = 1e-300
    for i in range(len(a)):
        if i:
            d = a[i] - b2[i - 1] / d
        if d == 0.0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def rayleigh_min(prob: RayleighProblem, rel_tol: float = 1e-12) -> float:
    """λ_min of the discretized pencil; nonnegative, decreasing under nested refinement."""
    k_diag, k_off, m_diag, m_off = _assemble(prob)

    # Upper bound from a positive trial vector.
    interior = np.linspace(-prob.R, prob.R, prob.N + 1)[1:-1]
    v = np.cos(0.5 * math.pi * interior / prob.R)
    kv = k_diag * v
    kv[:-1] += k_off * v[1:]
    kv[1:] += k_off * v[:-1]
    mv = m_diag * v
    mv[:-1] += m_off * v[1:]
    mv[1:] += m_off * v[:-1]
    hi = float(v @ kv / (v @ mv))
    lo = 0.0
    while hi - lo > rel_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _count_below(mid, k_diag, k_off, m_diag, m_off) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def rayleigh_closed_form(A: float, R: float | None = None) -> float:
    """Exact infimum for B = 0, A > 0.

    Substituting t = √(2/A)·tan θ turns the quotient into the Dirichlet problem on
    (-θ_R, θ_R) with θ_R = arctan(R√(A/2)), so λ = (A/2)(π / 2θ_R)². ``R=None`` is the
    whole line (θ_R = π/2, λ = A/2).
    """
    if A <= 0:
        raise DomainError(f"closed form needs A > 0, got {A}")
    theta = math.pi / 2 if R is None else math.atan(R * math.sqrt(A / 2))
    return 0.5 * A * (math.pi / (2.0 * theta)) ** 2
