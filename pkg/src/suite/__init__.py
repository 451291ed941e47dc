"""Verification commands wired as a LangGraph workflow."""

from src.suite.fields import select_field, select_profile
from src.suite.graph import build_graph, compile_graph, graph, node_name
from src.suite.nodes import Nodes, nodes
from src.suite.state import Check, RunConfig, SuiteReport, SuiteState

__all__ = [
    "Check",
    "Nodes",
    "RunConfig",
    "SuiteReport",
    "SuiteState",
    "build_graph",
    "compile_graph",
    "graph",
    "node_name",
    "nodes",
    "select_field",
    "select_profile",
]
