"""Seam-aware Gauss–Legendre quadrature.

The region is first cut along y-values where the ordering of the seam curves changes
(declared y-lines, intersections of curves with each other and with the region's t-edges).
Inside each y-slab every t-piece lies between two curves of the form t = c·y² + d, and it is
mapped to a unit square (y, u) with t = lo(y) + u·(hi(y) - lo(y)). Integrands that are smooth
between seams are therefore smooth on every cell.

Cells are refined globally: the cell with the largest error estimate (|Q_n - Q_{n-2}|) is
split into four until the total estimate meets max(abs_tol, rel_tol·|value|) or every cell
reaches max_depth. Non-convergence is reported through QuadResult.converged and logged.
"""

import heapq
import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np

from src.core.errors import QuadratureError
from src.core.settings import logger
from src.numerics.types import NO_SEAMS, QuadratureSpec, QuadResult, Rect, SeamSet

Integrand2D = Callable[[np.ndarray, np.ndarray], np.ndarray]
Integrand1D = Callable[[np.ndarray], np.ndarray]

_MAX_CELLS = 200_000
_BATCH = 16


@lru_cache(maxsize=16)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _orders(spec: QuadratureSpec) -> tuple[int, int]:
    n = spec.points_per_cell
    return n, max(1, n - 2)


def _dedupe_sorted(values: list[float], scale: float) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > 1e-13 * scale:
            out.append(v)
    return out


# -----------------------------------------------------------------------------
# Slab / piece decomposition
# -----------------------------------------------------------------------------


def _boundary_curves(region: Rect, seams: SeamSet) -> list[tuple[float, float]]:
    """All t-boundaries as (c, d) with t = c·y² + d, region edges included."""
    curves = [(0.0, region.t0), (0.0, region.t1)]
    for s in seams.t_curves:
        curves.append((0.0, s.c) if s.kind == "t" else (s.c, s.d))
    return list(dict.fromkeys(curves))


def _y_breaks(region: Rect, seams: SeamSet) -> list[float]:
    ys = [region.y0, region.y1]
    ys += [c for c in seams.y_lines if region.y0 < c < region.y1]
    curves = _boundary_curves(region, seams)
    for i, (c1, d1) in enumerate(curves):
        for c2, d2 in curves[i + 1 :]:
            if c1 == c2:
                continue
            y2 = (d2 - d1) / (c1 - c2)
            if y2 < 0:
                continue
            r = math.sqrt(y2)
            ys += [y for y in (-r, r) if region.y0 < y < region.y1]
    scale = 1.0 + abs(region.y0) + abs(region.y1)
    return _dedupe_sorted(ys, scale)


def _pieces(region: Rect, seams: SeamSet) -> list[tuple[float, float, tuple, tuple]]:
    """(ya, yb, lo_curve, hi_curve) for every smooth curvilinear piece."""
    ys = _y_breaks(region, seams)
    curves = _boundary_curves(region, seams)
    pieces = []
    for ya, yb in zip(ys[:-1], ys[1:], strict=True):
        ym = 0.5 * (ya + yb)
        inside = [
            (c * ym * ym + d, (c, d))
            for c, d in curves
            if region.t0 <= c * ym * ym + d <= region.t1
        ]
        inside.sort(key=lambda item: item[0])
        ordered = [cd for _, cd in inside]
        for lo, hi in zip(ordered[:-1], ordered[1:], strict=True):
            if (hi[0] - lo[0]) * ym * ym + (hi[1] - lo[1]) > 0:
                pieces.append((ya, yb, lo, hi))
    return pieces


# -----------------------------------------------------------------------------
# Cell evaluation
# -----------------------------------------------------------------------------


class _Cells2D:
    """Batched tensor-rule evaluation on curvilinear cells."""

    def __init__(self, g: Integrand2D, spec: QuadratureSpec):
        self.g = g
        self.n, self.m = _orders(spec)
        self.evaluations = 0

    def _rule(self, cells: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        # cells columns: ya, yb, ua, ub, lo_c, lo_d, hi_c, hi_d
        x, w = _gauss(order)
        ya, yb, ua, ub, lc, ld, hc, hd = cells.T
        hy = 0.5 * (yb - ya)
        hu = 0.5 * (ub - ua)
        Y = (0.5 * (ya + yb))[:, None, None] + hy[:, None, None] * x[None, :, None]
        U = (0.5 * (ua + ub))[:, None, None] + hu[:, None, None] * x[None, None, :]
        lo = lc[:, None, None] * Y * Y + ld[:, None, None]
        width = (hc - lc)[:, None, None] * Y * Y + (hd - ld)[:, None, None]
        T = lo + U * width
        Y, T = np.broadcast_arrays(Y, T)
        weights = (
            (hy * hu)[:, None, None] * w[None, :, None] * w[None, None, :] * width
        )
        return Y, T, weights

    def evaluate(self, cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        Yn, Tn, Wn = self._rule(cells, self.n)
        Ym, Tm, Wm = self._rule(cells, self.m)
        Y = np.concatenate([Yn.ravel(), Ym.ravel()])
        T = np.concatenate([Tn.ravel(), Tm.ravel()])
        vals = np.asarray(self.g(Y, T), dtype=float)
        vals = np.broadcast_to(vals, Y.shape)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("integrand returned non-finite values")
        self.evaluations += Y.size
        k = Yn.size
        qn = np.sum((vals[:k].reshape(Yn.shape) * Wn), axis=(1, 2))
        qm = np.sum((vals[k:].reshape(Ym.shape) * Wm), axis=(1, 2))
        return qn, np.abs(qn - qm)


def _split4(cell: np.ndarray) -> np.ndarray:
    ya, yb, ua, ub = cell[:4]
    ym, um = 0.5 * (ya + yb), 0.5 * (ua + ub)
    rest = cell[4:]
    quads = [(ya, ym, ua, um), (ya, ym, um, ub), (ym, yb, ua, um), (ym, yb, um, ub)]
    return np.array([[*q, *rest] for q in quads])


def _initial_cells(pieces, panels: int) -> np.ndarray:
    rows = []
    for ya, yb, lo, hi in pieces:
        ys = np.linspace(ya, yb, panels + 1)
        us = np.linspace(0.0, 1.0, panels + 1)
        for i in range(panels):
            for j in range(panels):
                rows.append([ys[i], ys[i + 1], us[j], us[j + 1], *lo, *hi])
    return np.array(rows, dtype=float).reshape(-1, 8)


def _refine(evaluate, split, cells: np.ndarray, spec: QuadratureSpec) -> QuadResult:
    """Global adaptive refinement shared by the 1D and 2D drivers."""
    if len(cells) == 0:
        return QuadResult(0.0, 0.0, True)
    values, errors = evaluate(cells)
    store = {i: (cells[i], float(values[i]), float(errors[i]), 0) for i in range(len(cells))}
    next_id = len(cells)
    heap = [(-store[i][2], i) for i in store]
    heapq.heapify(heap)

    def totals() -> tuple[float, float]:
        vals = [store[i][1] for i in sorted(store)]
        errs = [store[i][2] for i in sorted(store)]
        return math.fsum(vals), math.fsum(errs)

    value, err = totals()
    while spec.max_depth > 0 and heap and len(store) < _MAX_CELLS:
        target = max(spec.abs_tol, spec.rel_tol * abs(value))
        if err <= target:
            break
        batch = []
        threshold = target / max(1, len(store))
        while heap and len(batch) < _BATCH:
            neg_err, idx = heap[0]
            if batch and -neg_err <= threshold:
                break
            heapq.heappop(heap)
            # Cells at max_depth leave the heap but keep contributing to the totals.
            if store[idx][3] < spec.max_depth:
                batch.append(idx)
        if not batch:
            break
        children = np.concatenate([split(store[idx][0]) for idx in batch])
        child_vals, child_errs = evaluate(children)
        fan = len(children) // len(batch)
        for k, idx in enumerate(batch):
            depth = store.pop(idx)[3]
            for row in range(k * fan, (k + 1) * fan):
                cv, ce = float(child_vals[row]), float(child_errs[row])
                store[next_id] = (children[row], cv, ce, depth + 1)
                heapq.heappush(heap, (-ce, next_id))
                next_id += 1
        value, err = totals()

    target = max(spec.abs_tol, spec.rel_tol * abs(value))
    converged = err <= target
    return QuadResult(value, err, converged)


# -----------------------------------------------------------------------------
# Public API
# -----------------------------------------------------------------------------


def integrate2d(
    g: Integrand2D,
    region: Rect,
    seams: SeamSet = NO_SEAMS,
    spec: QuadratureSpec | None = None,
    strict: bool = False,
) -> QuadResult:
    """∫∫_region g(y, t) dy dt with cells split along ``seams``.

    ``g`` must accept equally-shaped arrays (y, t) and return an array of values.
    With ``strict`` a non-converged result raises QuadratureError instead of being flagged.
    """
    spec = spec or QuadratureSpec()
    cells = _initial_cells(_pieces(region, seams), spec.panels)
    engine = _Cells2D(g, spec)
    result = _refine(engine.evaluate, _split4, cells, spec)
    result = QuadResult(result.value, result.err_est, result.converged, engine.evaluations)
    if not result.converged:
        message = (
            f"integrate2d: tolerance not reached on {region.y0, region.y1, region.t0, region.t1}"
            f" (err_est={result.err_est:.3e})"
        )
        if strict:
            raise QuadratureError(message)
        if spec.max_depth > 0:
            logger.warning(message)
    return result


def _split2(cell: np.ndarray) -> np.ndarray:
    a, b = cell
    m = 0.5 * (a + b)
    return np.array([[a, m], [m, b]])


def integrate1d(
    g: Integrand1D,
    a: float,
    b: float,
    breaks: list[float] | tuple[float, ...] = (),
    spec: QuadratureSpec | None = None,
) -> QuadResult:
    """∫_a^b g(x) dx, splitting at interior ``breaks``."""
    spec = spec or QuadratureSpec()
    n, m = _orders(spec)
    xn, wn = _gauss(n)
    xm, wm = _gauss(m)

    def evaluate(cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = cells[:, 0], cells[:, 1]
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        Xn = mid[:, None] + half[:, None] * xn[None, :]
        Xm = mid[:, None] + half[:, None] * xm[None, :]
        vals = np.asarray(g(np.concatenate([Xn.ravel(), Xm.ravel()])), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("integrand returned non-finite values")
        qn = half * np.sum(vals[: Xn.size].reshape(Xn.shape) * wn, axis=1)
        qm = half * np.sum(vals[Xn.size :].reshape(Xm.shape) * wm, axis=1)
        return qn, np.abs(qn - qm)

    points = _dedupe_sorted([a, b, *[x for x in breaks if a < x < b]], 1.0 + abs(a) + abs(b))
    rows = []
    for lo, hi in zip(points[:-1], points[1:], strict=True):
        edges = np.linspace(lo, hi, spec.panels + 1)
        rows += [[edges[i], edges[i + 1]] for i in range(spec.panels)]
    result = _refine(evaluate, _split2, np.array(rows, dtype=float).reshape(-1, 2), spec)
    if not result.converged and spec.max_depth > 0:
        logger.warning(
            f"integrate1d: tolerance not reached on [{a}, {b}] (err_est={result.err_est:.3e})"
        )
    return result
