"""Bisection for nondecreasing functions, vectorized over independent targets."""

from collections.abc import Callable

import numpy as np

from src.core.constants import tolerances
from src.core.errors import BracketError


def bisect_monotone(
    g: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    target,
    tol: float = tolerances.inversion,
    max_iter: int = 200,
):
    """Solve g(root) = target for nondecreasing ``g`` inside [lo, hi].

    Stops per entry when |g(mid) - target| ≤ tol·(1 + |target|) or the bracket is narrower
    than ``tol``. ``lo``, ``hi`` and ``target`` broadcast against each other; scalars in,
    scalar out.
    """
    scalar = all(np.ndim(v) == 0 for v in (lo, hi, target))
    lo, hi, target = (
        np.array(v, dtype=float) for v in np.broadcast_arrays(lo, hi, target)
    )
    lo, hi, target = lo.ravel(), hi.ravel(), target.ravel()
    slack = tol * (1.0 + np.abs(target))

    glo, ghi = np.asarray(g(lo), dtype=float), np.asarray(g(hi), dtype=float)
    bad = (lo > hi) | (glo > target + slack) | (ghi < target - slack)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise BracketError(
            f"target {target[i]} not bracketed by g({lo[i]})={glo[i]}, g({hi[i]})={ghi[i]}"
        )

    root = np.where(np.abs(glo - target) <= slack, lo, np.nan)
    root = np.where(np.isnan(root) & (np.abs(ghi - target) <= slack), hi, root)
    active = np.isnan(root)
    for _ in range(max_iter):
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        gm = np.asarray(g(mid), dtype=float)
        # mid == lo or mid == hi: float resolution reached.
        hit = active & (
            (np.abs(gm - target) <= slack) | (hi - lo <= tol) | (mid == lo) | (mid == hi)
        )
        root = np.where(hit, mid, root)
        active &= ~hit
        below = gm < target
        lo = np.where(active & below, mid, lo)
        hi = np.where(active & ~below, mid, hi)
    root = np.where(np.isnan(root), 0.5 * (lo + hi), root)
    return float(root[0]) if scalar else root
