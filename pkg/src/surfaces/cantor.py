"""The Cantor-staircase strip and its piecewise-affine approximants.

C(0) = [0, 1] and C(n+1) = C(n)/3 ∪ (2/3 + C(n)/3). a_n has slope q⁻ⁿ (q = 2/3) on C(n)
and is flat elsewhere; its limit a is the Cantor function. Interval indices k of
C(n, k) = [k/3ⁿ, (k+1)/3ⁿ] are exact integers; the rank j of k in J_n gives a(k/3ⁿ) = j/2ⁿ.
"""

import math
from dataclasses import dataclass
from functools import cache, cached_property

import numpy as np

from src.core.constants import cantor_config
from src.core.errors import DomainError
from src.core.settings import logger
from src.numerics import QuadratureSpec, integrate1d
from src.strips import StripProfile, strip_field, strip_tau
from src.surfaces.convergence import ConvergenceReport, fitted_rates
from src.variation import ScalarField

Q = cantor_config.q


def _check_n(n: int) -> int:
    if not (isinstance(n, int | np.integer) and 0 <= n <= cantor_config.n_max):
        raise DomainError(f"n must be an integer in [0, {cantor_config.n_max}], got {n}")
    return int(n)


@dataclass(frozen=True)
class CantorLevel:
    """C(n) as the index set J_n ⊂ {0, …, 3ⁿ - 1}."""

    n: int

    @property
    def denominator(self) -> int:
        return 3**self.n

    @property
    def count(self) -> int:
        return 2**self.n

    @property
    def total_length(self) -> float:
        return Q**self.n

    @cached_property
    def indices(self) -> np.ndarray:
        """J_n in increasing order (position = rank j)."""
        if self.n > cantor_config.list_n_cap:
            raise DomainError(f"listing 2^{self.n} intervals is not supported")
        J = np.zeros(1, dtype=np.int64)
        for m in range(self.n):
            J = np.concatenate([J, 2 * 3**m + J])
        return J

    def intervals(self) -> tuple[np.ndarray, np.ndarray]:
        k = self.indices
        return k / self.denominator, (k + 1) / self.denominator

    def contains(self, tau):
        return _in_cantor(tau, self.n)


def cantor_level(n: int) -> CantorLevel:
    return CantorLevel(_check_n(n))


def _in_cantor(tau, depth: int):
    """τ ∈ C(depth), with slack on the gap edges that grows with the digit position."""
    x = np.asarray(tau, dtype=float)
    inside = (x >= 0.0) & (x <= 1.0)
    x = np.clip(x, 0.0, 1.0)
    slack = 1e-15
    for _ in range(depth):
        y = 3.0 * x
        left = y <= 1.0 + slack
        right = y >= 2.0 - slack
        inside &= left | right
        x = np.where(left, np.clip(y, 0.0, 1.0), np.clip(y - 2.0, 0.0, 1.0))
        slack *= 3.0
    return inside


def _staircase(tau, depth: int):
    """Ternary digit traversal of a_depth: ½ per digit 2, stop at the first digit 1, and
    finish with the affine piece left after ``depth`` digits.
    """
    tau = np.asarray(tau, dtype=float)
    x = np.clip(tau, 0.0, 1.0)
    value = np.zeros_like(x)
    scale = np.ones_like(x)
    done = np.zeros(x.shape, dtype=bool)
    for _ in range(depth):
        y = 3.0 * x
        middle = ~done & (y >= 1.0) & (y <= 2.0)
        right = ~done & (y > 2.0)
        value = np.where(middle | right, value + 0.5 * scale, value)
        done |= middle
        x = np.where(right, y - 2.0, np.where(done, x, y))
        scale = np.where(done, scale, 0.5 * scale)
    value = np.where(done, value, value + scale * x)
    return float(value) if value.ndim == 0 else value


def cantor_a(n: int | None, tau):
    """a_n(τ), or the Cantor function for ``n=None``; 0 for τ ≤ 0 and 1 for τ ≥ 1."""
    if n is None:
        return _staircase(tau, cantor_config.limit_depth)
    return _staircase(tau, _check_n(n))


@cache
def cantor_profile(n: int) -> StripProfile:
    """a_n with a' = q⁻ⁿ on C(n); breakpoints are listed up to the dense cap."""
    n = _check_n(n)
    slope = Q**-n
    breakpoints: tuple[float, ...] = ()
    if n <= cantor_config.dense_n_cap:
        lo, hi = cantor_level(n).intervals()
        breakpoints = tuple(sorted(set(lo.tolist()) | set(hi.tolist())))
    return StripProfile(
        kind="cantor_n",
        a=lambda tau: cantor_a(n, tau),
        a_prime=lambda tau: np.where(_in_cantor(tau, n), slope, 0.0),
        a_min=0.0,
        a_max=1.0,
        breakpoints=breakpoints,
        slope_max=slope,
        params={"n": n},
    )


@cache
def cantor_limit_profile() -> StripProfile:
    """The Cantor function; a' is singular so variation integrals are refused."""
    return StripProfile(
        kind="cantor_limit",
        a=lambda tau: cantor_a(None, tau),
        a_prime=None,
        a_min=0.0,
        a_max=1.0,
        inversion_tol=0.0,
    )


def cantor_field(n: int | None = None) -> ScalarField:
    """f_n from a_n, or the limit strip with ∂_t f = 2/y on C_y when ``n`` is None."""
    if n is None:
        return strip_field(
            cantor_limit_profile(),
            name="cantor",
            partial_t=lambda y, t: cantor_dt_fn(None, y, t),
        )
    return strip_field(cantor_profile(n), name="cantor")


# -----------------------------------------------------------------------------
# Level sets C_y(n) and ∂_t f_n
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CySets:
    """C_y(n) = ⊔ [a(k/3ⁿ)y²/2 + k/3ⁿ, a((k+1)/3ⁿ)y²/2 + (k+1)/3ⁿ] and its measures."""

    n: int
    y: float
    lo: np.ndarray
    hi: np.ndarray

    @property
    def measure(self) -> float:
        return math.fsum((self.hi - self.lo).tolist())

    @property
    def measure_formula(self) -> float:
        return 0.5 * self.y**2 + Q**self.n

    @property
    def limit_measure(self) -> float:
        return 0.5 * self.y**2

    @property
    def piece_length(self) -> float:
        return (0.5 * self.y**2 + Q**self.n) / 2**self.n


def cy_sets(n: int, y: float) -> CySets:
    level = cantor_level(n)
    k = level.indices
    j = np.arange(k.size)
    half = 0.5 * y * y
    lo = j / level.count * half + k / level.denominator
    hi = (j + 1) / level.count * half + (k + 1) / level.denominator
    return CySets(n=level.n, y=float(y), lo=lo, hi=hi)


def cantor_dt_fn(n: int | None, y, t):
    """∂_t f_n = y/(y²/2 + qⁿ) on C_y(n), else 0; the limit is 2/y on C_y, else 0."""
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    if n is None:
        tau = strip_tau(cantor_limit_profile(), y, t)
        on = _in_cantor(tau, cantor_config.membership_depth) & (y != 0)
        out = np.where(on, 2.0 / np.where(y == 0, 1.0, y), 0.0)
    else:
        n = _check_n(n)
        tau = strip_tau(cantor_profile(n), y, t)
        out = np.where(_in_cantor(tau, n), y / (0.5 * y * y + Q**n), 0.0)
    return float(out) if out.ndim == 0 else out


def _limit_overlap(outer: CySets, y: float) -> np.ndarray:
    """|C_y ∩ C_y(n, k)| per piece k of ``outer``.

    C_y(m) ∩ C_y(n, k) exceeds C_y ∩ C_y(n, k) by a term that shrinks by exactly q per level,
    so two deeper levels extrapolate to the limit set.
    """
    overlaps = []
    for depth in (outer.n + 2, outer.n + 3):
        inner = cy_sets(depth, y)
        cut = np.minimum(outer.hi[:, None], inner.hi[None, :]) - np.maximum(
            outer.lo[:, None], inner.lo[None, :]
        )
        overlaps.append(np.clip(cut, 0.0, None).sum(axis=1))
    return (overlaps[1] - Q * overlaps[0]) / (1.0 - Q)


def _dt_l2_at(n: int, y: float) -> float:
    """∫ |∂_t f_n - ∂_t f|² dt at a fixed y > 0, one piece of C_y(n) at a time.

    On C_y(n, k) both derivatives are sampled: ∂_t f_n at the piece midpoint and ∂_t f at the
    image of τ = (k + 1/4)/3ⁿ, a point of the Cantor set. Gaps of C_y(n) are sampled at
    their midpoints.
    """
    outer = cy_sets(n, y)
    k = cantor_level(n).indices
    length = outer.hi - outer.lo
    on_limit = np.clip(_limit_overlap(outer, y), 0.0, length)

    dt_n = cantor_dt_fn(n, y, 0.5 * (outer.lo + outer.hi))
    tau_c = (k + 0.25) / 3.0**n
    dt_limit = cantor_dt_fn(None, y, cantor_a(None, tau_c) * (0.5 * y * y) + tau_c)
    pieces = (dt_n - dt_limit) ** 2 * on_limit + dt_n**2 * (length - on_limit)

    total = math.fsum(pieces.tolist())
    if n == 0:
        return total
    gap_lo, gap_hi = outer.hi[:-1], outer.lo[1:]
    gap_mid = 0.5 * (gap_lo + gap_hi)
    gaps = (cantor_dt_fn(n, y, gap_mid) - cantor_dt_fn(None, y, gap_mid)) ** 2 * (gap_hi - gap_lo)
    return total + math.fsum(gaps.tolist())


def cantor_l2_distance(
    n: int, ell: float, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """(closed, quadrature) for ∫₀^ℓ ∫ |∂_t f_n - ∂_t f|² dt dy.

    closed = 2√2·q^{n/2}·arctan(ℓ q^{-n/2}/√2). The quadrature integrates the t-integral of
    _dt_l2_at over y ∈ (0, ℓ) with integrate1d; the t-integral itself is exact per piece.
    """
    n = _check_n(n)
    if not ell > 0:
        raise DomainError(f"ell must be positive, got {ell}")
    if n > cantor_config.dense_n_cap:
        raise DomainError(f"level sets are listed up to n = {cantor_config.dense_n_cap}")
    Qn = Q**n
    closed = 2.0 * math.sqrt(2.0) * Qn**0.5 * math.atan(ell / (math.sqrt(2.0) * Qn**0.5))

    def per_y(ys):
        return np.array([_dt_l2_at(n, float(y)) for y in np.atleast_1d(ys)])

    quad = integrate1d(per_y, 0.0, ell, spec=spec).value
    return closed, quad


def cantor_sv_quantities(n: int, M: float = 1.0) -> tuple[float, float, float]:
    """(∫ a_n'/(1+a_n²)^{3/2} dτ, √(2qⁿ)π, Mπq^{n/2}).

    On C(n, k) the substitution v = a_n(τ) maps onto [j/2ⁿ, (j+1)/2ⁿ], so the τ-integral is a
    sum of antiderivative increments v/√(1+v²); it equals 1/√2 for every n.
    """
    n = _check_n(n)
    count = 2**n
    if n <= cantor_config.list_n_cap:
        v = np.arange(count + 1) / count
        anti = v / np.sqrt(1.0 + v * v)
        tau_integral = math.fsum(np.diff(anti).tolist())
    else:
        tau_integral = 1.0 / math.sqrt(2.0)
    Qn = Q**n
    return tau_integral, math.sqrt(2.0 * Qn) * math.pi, M * math.pi * Qn**0.5


# -----------------------------------------------------------------------------
# Convergence a_n → a
# -----------------------------------------------------------------------------


def cantor_convergence(
    n_ladder=(1, 2, 3, 4, 5, 6),
    ell: float = 1.0,
    spec: QuadratureSpec | None = None,
    grid: int = 41,
) -> ConvergenceReport:
    """sup|a_n - a| on a 3^{N+2}-point grid, sup|∇^{f_n}f_n - ∇^f f| on a (y, t) grid and the
    squared L² distance of ∂_t f_n, along ``n_ladder`` (N its largest entry).

    Both sup-norms must stay below 2⁻ⁿ.
    """
    ladder = tuple(sorted(_check_n(n) for n in n_ladder))
    if ladder and ladder[-1] > cantor_config.dense_n_cap:
        raise DomainError(f"dense grids are capped at n = {cantor_config.dense_n_cap}")
    taus = np.linspace(0.0, 1.0, 3 ** (ladder[-1] + 2) + 1)
    limit = cantor_a(None, taus)
    ys, ts = np.meshgrid(np.linspace(-2.0, 2.0, grid), np.linspace(-0.5, 3.0, grid))
    limit_grad = cantor_a(None, strip_tau(cantor_limit_profile(), ys, ts))

    norms: dict[str, list[float]] = {"sup_a": [], "sup_intrinsic": [], "dt_l2_sq": []}
    violations = 0
    for n in ladder:
        sup_a = float(np.max(np.abs(cantor_a(n, taus) - limit)))
        grad = cantor_a(n, strip_tau(cantor_profile(n), ys, ts))
        sup_grad = float(np.max(np.abs(grad - limit_grad)))
        _, l2 = cantor_l2_distance(n, ell, spec)
        norms["sup_a"].append(sup_a)
        norms["sup_intrinsic"].append(sup_grad)
        norms["dt_l2_sq"].append(l2)
        bound = 2.0**-n + 1e-12
        violations += int(sup_a > bound) + int(sup_grad > bound)

    frozen = {k: tuple(v) for k, v in norms.items()}
    report = ConvergenceReport(
        parameter="n",
        ladder=tuple(float(n) for n in ladder),
        norms=frozen,
        rates=fitted_rates([Q**n for n in ladder], frozen),
        domination_violations=violations,
        samples=int(taus.size + ys.size),
        checked=("sup_a", "dt_l2_sq"),
    )
    if not report.passed:
        logger.warning(f"cantor convergence ladder {ladder} failed")
    return report
