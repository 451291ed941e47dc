"""Runtime context for dependency injection.

Passed as the suite graph's context_schema; nodes read it as ``runtime.context``.
"""

from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class RunContext:
    """Run-scoped data that is not part of the numerical configuration.

    ``config_hash`` identifies the RunConfig that produced an artifact and is written
    into every report and mesh header.
    """

    seed: int = 0
    out_dir: Path = field(default_factory=lambda: Path("out"))
    config_hash: str = ""

    def path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / name
