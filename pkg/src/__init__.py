"""Numerical verification toolkit for stable intrinsic graphs in the Heisenberg group.

Quick Start:
    from src import RunConfig, RunContext, graph

    config = RunConfig(command="verdict", field="plane", a=0.3, b=0.1)
    result = graph.invoke(
        {"command": config.command, "config": config},
        context=RunContext(config_hash=config.config_hash()),
    )
    result["report"].passed

Library entry points live in the subpackages: heisenberg, numerics, variation, lagrangian,
strips and surfaces.

Adding a new command:
    1. Add its name to src/core/constants.py COMMANDS list
    2. Create the node method in src/suite/nodes.py Nodes class
"""

from src.core import COMMANDS, DEFAULT_MIDDLEWARE, RunContext, logger, settings
from src.suite import Check, RunConfig, SuiteReport, SuiteState, build_graph, compile_graph, graph

__all__ = [
    "COMMANDS",
    "DEFAULT_MIDDLEWARE",
    "Check",
    "RunConfig",
    "RunContext",
    "SuiteReport",
    "SuiteState",
    "build_graph",
    "compile_graph",
    "graph",
    "logger",
    "settings",
]
