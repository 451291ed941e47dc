"""Command-line entry point for the verification suites.

Runs one command of the suite graph:
- builds a RunConfig from an optional JSON file plus flag overrides
- invokes the graph with a RunContext (seed, output directory, config hash)
- exits 0 iff every check in the report passed

Example:
    python main.py verdict --field plane --a 0.3 --b 0.1
    python main.py cantor-suite --n 4 --out out/cantor
"""

import argparse
import json
import sys
from pathlib import Path
from typing import get_args

from pydantic import ValidationError

from src import COMMANDS, RunConfig, RunContext, graph, logger
from src.suite.state import FieldName


def _pair(text: str, cast=float) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
    return tuple(cast(p) for p in parts)


def _level(text: str) -> int | str:
    return text if text == "limit" else int(text)


def _rayleigh(text: str) -> dict:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 4):
        raise argparse.ArgumentTypeError("expected A,B or A,B,R,N")
    keys = ("A", "B", "R", "N")
    casts = (float, float, float, int)
    return {k: c(v) for k, c, v in zip(keys, casts, parts, strict=False)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        description="Verify variation, characteristic and calibration identities for intrinsic "
        "graphs in the Heisenberg group."
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, help="JSON file with RunConfig fields")
    p.add_argument("--field", choices=get_args(FieldName))
    p.add_argument("--region", help="y0,y1,t0,t1")
    p.add_argument("--a", type=float, help="plane slope")
    p.add_argument("--b", type=float, help="plane offset")
    p.add_argument("--eps", type=float, help="cone mollification parameter")
    p.add_argument("--n", type=_level, help="Cantor level, or 'limit'")
    p.add_argument("--profile", type=Path, help="CSV table τ,a for --field strip")
    p.add_argument("--tol", type=float, help="override the main threshold")
    p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--tau", type=float, help="flow: starting value γ(0)")
    p.add_argument("--to", type=float, help="flow: end of the integration range")
    p.add_argument("--horizon", type=float, help="flow: end of the blow-up search")
    p.add_argument("--p", type=float, help="cone-suite: L^p exponent")
    p.add_argument("--samples", type=int, help="random samples or trials")
    p.add_argument("--grid", type=lambda s: _pair(s, int), help="mesh: nu,nv")
    p.add_argument("--s-range", dest="s_range", type=_pair, help="s0,s1")
    p.add_argument("--tau-range", dest="tau_range", type=_pair, help="τ0,τ1")
    p.add_argument("--tau-samples", dest="tau_samples", type=int)
    p.add_argument(
        "--ode",
        dest="exact",
        action="store_const",
        const=False,
        help="integrate characteristics with RK4 even when a closed form exists",
    )
    p.add_argument("--rayleigh", type=_rayleigh, help="A,B[,R,N]")
    return p


def load_config(args: argparse.Namespace) -> RunConfig:
    """JSON config first, then every flag that was given."""
    data: dict = {}
    if args.config is not None:
        data = json.loads(args.config.read_text())
    overrides = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    if overrides.get("n") == "limit":
        overrides["n"] = None
    if "rayleigh" in overrides:
        data["rayleigh"] = {**data.get("rayleigh", {}), **overrides.pop("rayleigh")}
    data.update(overrides)
    return RunConfig.model_validate(data)


def run(config: RunConfig) -> int:
    context = RunContext(seed=config.seed, out_dir=config.out, config_hash=config.config_hash())
    result = graph.invoke({"command": config.command, "config": config}, context=context)
    report = result["report"]
    status = "passed" if report.passed else "FAILED"
    logger.info(f"{config.command}: {status} ({len(report.checks)} checks) -> {config.out}")
    return 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except (ValidationError, json.JSONDecodeError, OSError) as e:
        logger.error(f"invalid configuration: {e}")
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
