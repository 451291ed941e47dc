"""Application settings."""

import logging
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuration from environment variables (``HEIS_`` prefix).

    Numerical defaults are in constants.py.
    """

    model_config = SettingsConfigDict(env_prefix="HEIS_")

    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    # Workers
    THREADS: int = Field(default=4, ge=1, description="Cap on worker threads")

    # Command wrappers
    ENABLE_TIMING: bool = Field(default=True, description="Log elapsed time per command")
    ENABLE_ERROR_CAPTURE: bool = Field(
        default=True, description="Turn library errors into failed checks"
    )

    # Flow
    BLOWUP_BOUND: float = Field(default=1e6, gt=0, description="|γ| above this is a blow-up")


settings = Settings()

logging.basicConfig(level=getattr(logging, settings.LOG_LEVEL))
logger = logging.getLogger("heis")
