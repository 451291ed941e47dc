"""Ladder reports shared by the cone and Cantor convergence runs."""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ConvergenceReport:
    """Norms of the differences to the limit field, one column per ladder entry.

    ``rates`` are slopes of log(norm) against log(parameter); for the Cantor ladder the
    parameter is qⁿ.
    """

    parameter: str
    ladder: tuple[float, ...]
    norms: dict[str, tuple[float, ...]]
    rates: dict[str, float] = field(default_factory=dict)
    converged: bool = True
    domination_violations: int = 0
    samples: int = 0
    checked: tuple[str, ...] = ()

    @property
    def decreasing(self) -> bool:
        """Strict decrease of every series in ``checked`` (all series when empty)."""
        names = self.checked or tuple(self.norms)
        return all(np.all(np.diff(self.norms[name]) < 0) for name in names)

    @property
    def passed(self) -> bool:
        return self.decreasing and self.domination_violations == 0

    def rows(self) -> list[dict[str, float]]:
        out = []
        for i, value in enumerate(self.ladder):
            row = {self.parameter: value}
            row.update({name: values[i] for name, values in self.norms.items()})
            out.append(row)
        return out


def fitted_rates(scale, norms: dict[str, tuple[float, ...]]) -> dict[str, float]:
    """Least-squares slope of log(norm) against log(scale) for each all-positive series."""
    x = np.log(np.asarray(scale, dtype=float))
    rates = {}
    if x.size < 2:
        return rates
    for name, values in norms.items():
        v = np.asarray(values, dtype=float)
        if np.all(v > 0) and np.all(np.isfinite(v)):
            rates[name] = float(np.polyfit(x, np.log(v), 1)[0])
    return rates
