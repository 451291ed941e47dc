"""Scalar fields f(y, t) with seams and optional closed forms."""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from src.core.constants import flow_config
from src.numerics import NO_SEAMS, WHOLE_PLANE, Rect, SeamSet, fd_partial

FieldFn = Callable[[Any, Any], Any]
FieldKind = Literal["plane", "cone", "cone_eps", "strip", "custom"]


@dataclass(frozen=True)
class ScalarField:
    """A function on a rectangle with declared seams and branch metadata.

    ``partial_y``, ``partial_t`` and ``intrinsic`` are closed forms when known; missing ones
    fall back to seam-aware finite differences. ``flow`` is the exact characteristic map
    χ(s, τ) with χ(0, τ) = τ when the field comes with one.
    """

    name: str
    kind: FieldKind
    value: FieldFn
    domain: Rect = WHOLE_PLANE
    seams: SeamSet = NO_SEAMS
    partial_y: FieldFn | None = None
    partial_t: FieldFn | None = None
    intrinsic: FieldFn | None = None
    flow: FieldFn | None = None
    profile: Any = None
    lipschitz_on: Rect | None = None
    lipschitz_t: float | None = None
    refuse_variation: bool = False
    params: dict[str, float] = field(default_factory=dict)

    def __call__(self, y, t):
        return self.value(y, t)

    def d_y(self, y, t):
        if self.partial_y is not None:
            return self.partial_y(y, t)
        return fd_partial(self.value, y, t, "y", flow_config.fd_step, self.seams)

    def d_t(self, y, t):
        if self.partial_t is not None:
            return self.partial_t(y, t)
        return fd_partial(self.value, y, t, "t", flow_config.fd_step, self.seams)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({args})"


def _full(value: float) -> FieldFn:
    def fn(y, t):
        return np.full(np.broadcast(np.asarray(y), np.asarray(t)).shape, value)

    return fn


def plane_field(a: float, b: float) -> ScalarField:
    """f(y, t) = a·y + b, an intrinsic plane."""
    return ScalarField(
        name="plane",
        kind="plane",
        value=lambda y, t: a * np.asarray(y, dtype=float) + b + 0.0 * np.asarray(t),
        partial_y=_full(a),
        partial_t=_full(0.0),
        intrinsic=_full(a),
        flow=lambda s, tau: 0.5 * a * np.asarray(s) ** 2 + b * np.asarray(s) + tau,
        lipschitz_on=WHOLE_PLANE,
        lipschitz_t=0.0,
        params={"a": a, "b": b},
    )


def linear_t_field(scale: float = 1.0) -> ScalarField:
    """f(y, t) = scale·t; characteristics grow exponentially."""
    return ScalarField(
        name="t",
        kind="custom",
        value=lambda y, t: scale * np.asarray(t, dtype=float) + 0.0 * np.asarray(y),
        partial_y=_full(0.0),
        partial_t=_full(scale),
        lipschitz_on=WHOLE_PLANE,
        lipschitz_t=abs(scale),
        params={"scale": scale} if scale != 1.0 else {},
    )


def square_t_field() -> ScalarField:
    """f(y, t) = t²; characteristics blow up in finite time."""
    return ScalarField(
        name="t2",
        kind="custom",
        value=lambda y, t: np.asarray(t, dtype=float) ** 2 + 0.0 * np.asarray(y),
        partial_y=_full(0.0),
        partial_t=lambda y, t: 2.0 * np.asarray(t, dtype=float) + 0.0 * np.asarray(y),
    )


def custom_field(
    name: str,
    value: FieldFn,
    seams: SeamSet = NO_SEAMS,
    domain: Rect = WHOLE_PLANE,
    lipschitz_t: float | None = None,
) -> ScalarField:
    """Wrap an arbitrary vectorized f(y, t); partials come from finite differences."""
    return ScalarField(
        name=name,
        kind="custom",
        value=value,
        domain=domain,
        seams=seams,
        lipschitz_on=domain if lipschitz_t is not None else None,
        lipschitz_t=lipschitz_t,
    )
