"""Run configuration, report and graph state schemas.

LangGraph state is a TypedDict; the configuration and reports are pydantic models so they
validate on input and serialize deterministically on output.
"""

import hashlib
from pathlib import Path
from typing import Literal, Self, TypedDict

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from src.core.constants import COMMANDS
from src.numerics import QuadratureSpec, Rect

FieldName = Literal["plane", "cone", "cone_eps", "cantor", "cantor_limit", "t", "t2", "strip"]


class BumpFamily(BaseModel):
    """Test functions centred on an ny × nt grid over ``region``."""

    model_config = ConfigDict(frozen=True)

    region: Rect = Field(default=Rect(y0=-2.0, y1=2.0, t0=-1.0, t1=2.0))
    ny: int = Field(default=5, ge=1)
    nt: int = Field(default=4, ge=1)
    radius: float = Field(default=0.3, gt=0)
    amplitude: float = 1.0


class RayleighParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: float = 1.0
    B: float = 0.0
    R: float = Field(default=50.0, gt=0)
    N: int = Field(default=4000, ge=4)


class RunConfig(BaseModel):
    """Everything a command needs; loaded from a JSON file and overridden by CLI flags."""

    model_config = ConfigDict(frozen=True)

    command: str = Field(description="One of COMMANDS")
    field: FieldName = Field(default="plane", description="Field selector")
    a: float = Field(default=0.3, description="Plane slope a in f = a·y + b")
    b: float = Field(default=0.1, description="Plane offset b in f = a·y + b")
    eps: float = Field(default=0.1, gt=0, description="Cone mollification parameter")
    n: int | None = Field(default=4, ge=0, description="Cantor level; None for the limit")
    profile: Path | None = Field(default=None, description="CSV table (τ, a) for field=strip")
    region: Rect = Field(default=Rect(y0=-2.0, y1=2.0, t0=-1.0, t1=2.0))
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    bumps: BumpFamily = Field(default_factory=BumpFamily)
    tol: float | None = Field(default=None, gt=0, description="Override for the main threshold")
    seed: int = 0
    out: Path = Path("out")

    # flow
    tau: float = 1.0
    to: float = 0.5
    horizon: float | None = Field(default=None, description="Blow-up search end; default 2·to")
    steps: int = Field(default=400, ge=1)

    # parametrization, fit and mesh
    s_range: tuple[float, float] = (-2.0, 2.0)
    tau_range: tuple[float, float] = (-0.5, 1.5)
    tau_samples: int = Field(default=200, ge=2)
    exact: bool = Field(default=True, description="Sample closed-form flows instead of RK4")
    grid: tuple[int, int] = (100, 100)

    # suites
    eps_ladder: tuple[float, ...] = (1e-1, 1e-2, 1e-3)
    n_ladder: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    p: float = Field(default=2.0, ge=1.0, lt=3.0)
    samples: int = Field(default=100, ge=1)
    rayleigh: RayleighParams = Field(default_factory=RayleighParams)

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value!r}; available: {COMMANDS}")
        return value

    @field_validator("region", mode="before")
    @classmethod
    def _parse_region(cls, value):
        return Rect.parse(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_files(self) -> Self:
        if self.field == "strip":
            if self.profile is None:
                raise ValueError("field=strip needs a profile table")
            if not self.profile.is_file():
                raise ValueError(f"profile table {self.profile} does not exist")
        if min(self.grid) < 2:
            raise ValueError(f"mesh grid sizes must be ≥ 2, got {self.grid}")
        return self

    def config_hash(self) -> str:
        """Stable digest of the numerical content (output directory excluded)."""
        payload = self.model_dump_json(exclude={"out"})
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


class Check(BaseModel):
    """One contract: measured value against its threshold."""

    name: str
    value: float | str | None = None
    threshold: float | str | None = None
    passed: bool
    anchor: str = Field(default="", description="The identity or bound being checked")


class SuiteReport(BaseModel):
    command: str
    field: str
    config_hash: str
    checks: list[Check] = Field(default_factory=list)
    artifacts: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class SuiteState(TypedDict, total=False):
    """Graph state: routing key in, report (or captured error) out."""

    command: str
    config: RunConfig
    report: SuiteReport
    error: str
