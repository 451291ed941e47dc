"""Core module exports."""

from src.core.constants import (
    COMMANDS,
    cantor_config,
    flow_config,
    quadrature_defaults,
    tolerances,
)
from src.core.context import RunContext
from src.core.errors import HeisError
from src.core.middleware import DEFAULT_MIDDLEWARE, apply_middleware
from src.core.settings import logger, settings
from src.core.workers import parallel_map

__all__ = [
    "COMMANDS",
    "DEFAULT_MIDDLEWARE",
    "HeisError",
    "RunContext",
    "apply_middleware",
    "cantor_config",
    "flow_config",
    "logger",
    "parallel_map",
    "quadrature_defaults",
    "settings",
    "tolerances",
]
