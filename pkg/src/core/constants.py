"""Constants and configuration.

Centralized location for command names, numerical defaults and acceptance tolerances.
To add a new command:
1. Add it to COMMANDS list
2. Create the node method in src/suite/nodes.py (dashes become underscores)
3. Add its argparse wiring in main.py if it needs new flags
"""

from dataclasses import dataclass

# -----------------------------------------------------------------------------
# Command Registry
# -----------------------------------------------------------------------------
# The suite graph registers one node per entry.

COMMANDS: list[str] = [
    "area",
    "first-variation",
    "second-variation",
    "flow",
    "fit-quadratic",
    "verdict",
    "calibration",
    "cone-suite",
    "cantor-suite",
    "rayleigh",
    "mesh",
]


# -----------------------------------------------------------------------------
# Quadrature
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureDefaults:
    """Default Gauss–Legendre settings."""

    points_per_cell: int = 8
    max_depth: int = 12
    abs_tol: float = 1e-8
    rel_tol: float = 1e-10
    panels: int = 1


quadrature_defaults = QuadratureDefaults()


# -----------------------------------------------------------------------------
# Characteristic Flow
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowConfig:
    """Fixed-step RK4 settings."""

    steps: int = 400
    fd_step: float = 1e-5
    richardson_factor: float = 15.0  # 2**4 - 1 for a fourth-order method


flow_config = FlowConfig()


# -----------------------------------------------------------------------------
# Tolerances
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Tolerances:
    """Acceptance thresholds shared by library checks and suites."""

    stationarity: float = 1e-6
    plane: float = 1e-4
    inversion: float = 1e-12
    fit_residual: float = 1e-6
    axiom_residual: float = 1e-7
    monotone_noise: float = 1e-12
    profile_equality: float = 1e-10
    jacobian_floor: float = 1e-8
    tau_spacing: float = 1e-3
    divergence: float = 1e-6
    normal: float = 1e-8
    mesh_membership: float = 1e-9


tolerances = Tolerances()


# -----------------------------------------------------------------------------
# Cantor Staircase
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CantorConfig:
    """Cantor construction constants."""

    q: float = 2.0 / 3.0
    n_max: int = 40
    dense_n_cap: int = 8
    list_n_cap: int = 20
    limit_depth: int = 34  # 3**-34 is below double resolution on [0, 1]
    membership_depth: int = 24


cantor_config = CantorConfig()
