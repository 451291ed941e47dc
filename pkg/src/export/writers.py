"""Report and table writers with fixed formatting."""

import csv
from collections.abc import Iterable, Mapping
from pathlib import Path

from pydantic import BaseModel

FLOAT_FORMAT = "{:.12g}"


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return FLOAT_FORMAT.format(value)
    return str(value)


def write_json(model: BaseModel, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n")
    return path


def write_csv(rows: Iterable[Mapping[str, object]], path: Path) -> Path:
    """Rows share the keys of the first row; floats are written with 12 significant digits."""
    rows = list(rows)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        if not rows:
            return path
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
    return path
