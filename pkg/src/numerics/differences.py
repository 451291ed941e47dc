"""Seam-aware finite differences."""

from collections.abc import Callable
from typing import Literal

import numpy as np

from src.core.errors import SeamError
from src.numerics.types import NO_SEAMS, SeamSet

Axis = Literal["y", "t"]

# Central stencils (offsets, weights) and the one-sided 3-point stencil.
_CENTRAL = {
    2: ((-1, 1), (-0.5, 0.5)),
    4: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
}
_FORWARD = ((0, 1, 2), (-1.5, 2.0, -0.5))


def _stencil(g, y, t, axis: Axis, h, offsets, weights):
    total = np.zeros(np.broadcast(y, t, h).shape)
    for k, w in zip(offsets, weights, strict=True):
        if axis == "y":
            total = total + w * g(y + k * h, t)
        else:
            total = total + w * g(y, t + k * h)
    return total / h


def _crosses(seams: SeamSet, y, t, axis: Axis, reach):
    if axis == "y":
        return seams.crosses(y, t, y + reach, t)
    return seams.crosses(y, t, y, t + reach)


def fd_partial(
    g: Callable[[np.ndarray, np.ndarray], np.ndarray],
    y,
    t,
    axis: Axis,
    h: float = 1e-5,
    seams: SeamSet = NO_SEAMS,
    order: Literal[2, 4] = 2,
):
    """∂g/∂axis at (y, t).

    Central differences where the stencil stays on one side of every seam; the one-sided
    second-order stencil on the free side otherwise. Points on a seam raise SeamError.
    Accepts scalars or arrays; returns the same shape.
    """
    scalar = np.ndim(y) == 0 and np.ndim(t) == 0
    y, t = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    shape = y.shape
    y, t = y.ravel(), t.ravel()
    if len(seams) and np.any(seams.on_seam(y, t)):
        raise SeamError(f"fd_partial requested on a seam along {axis}")

    offsets, weights = _CENTRAL[order]
    reach = max(offsets) * h
    hh = np.full(y.shape, h)
    result = _stencil(g, y, t, axis, hh, offsets, weights)
    if not len(seams):
        return float(result[0]) if scalar else result.reshape(shape)

    blocked = _crosses(seams, y, t, axis, reach) | _crosses(seams, y, t, axis, -reach)
    for _ in range(4):
        if not np.any(blocked):
            break
        fwd_free = ~_crosses(seams, y, t, axis, 2 * hh)
        bwd_free = ~_crosses(seams, y, t, axis, -2 * hh)
        fwd = blocked & fwd_free
        bwd = blocked & ~fwd_free & bwd_free
        if np.any(fwd):
            result[fwd] = _stencil(g, y[fwd], t[fwd], axis, hh[fwd], *_FORWARD)
        if np.any(bwd):
            offs, wts = _FORWARD
            result[bwd] = _stencil(g, y[bwd], t[bwd], axis, -hh[bwd], offs, wts)
        # Seams on both sides: shrink the step and retry.
        blocked = blocked & ~fwd_free & ~bwd_free
        hh = np.where(blocked, 0.25 * hh, hh)
        if np.any(blocked):
            small = blocked & ~_crosses(seams, y, t, axis, hh) & ~_crosses(seams, y, t, axis, -hh)
            if np.any(small):
                result[small] = _stencil(g, y[small], t[small], axis, hh[small], *_CENTRAL[2])
                blocked = blocked & ~small
    if np.any(blocked):
        raise SeamError(f"seams on both sides of the {axis}-stencil even after step reduction")
    return float(result[0]) if scalar else result.reshape(shape)
