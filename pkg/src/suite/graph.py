"""LangGraph workflow for verification commands.

Builds a graph where:
- START routes to the command node named by state["command"]
- Each command node computes its checks and writes its artifacts
- finalize turns a captured error into a failed check and writes report.json

Runs are one-shot and deterministic, so the graph is compiled without a checkpointer.
"""

from langgraph.graph import END, START, StateGraph
from langgraph.runtime import Runtime

from src.core.constants import COMMANDS
from src.core.context import RunContext
from src.core.middleware import apply_middleware
from src.export import write_json
from src.suite.nodes import nodes
from src.suite.state import Check, SuiteReport, SuiteState


def node_name(command: str) -> str:
    """Command names use dashes; node methods use underscores."""
    return command.replace("-", "_")


def route_to_command(state: SuiteState) -> str:
    return node_name(state["command"])


def finalize(state: SuiteState, runtime: Runtime[RunContext]) -> dict:
    """Write report.json; a captured error becomes the single failed check."""
    context = runtime.context or RunContext()
    report = state.get("report")
    if "error" in state or report is None:
        config = state["config"]
        report = SuiteReport(
            command=config.command,
            field=config.field,
            config_hash=context.config_hash,
            checks=[Check(name="error", value=state.get("error", "no report"), passed=False)],
        )
    write_json(report, context.path("report.json"))
    return {"report": report}


def build_graph() -> StateGraph:
    """Build the suite graph.

    Returns:
        Uncompiled StateGraph ready for customization or compilation.
    """
    graph = StateGraph(SuiteState, context_schema=RunContext)

    names = [node_name(c) for c in COMMANDS]
    for name in names:
        graph.add_node(name, apply_middleware(getattr(nodes, name)))
    graph.add_node("finalize", finalize)

    graph.add_conditional_edges(START, route_to_command, {n: n for n in names})
    for name in names:
        graph.add_edge(name, "finalize")
    graph.add_edge("finalize", END)

    return graph


def compile_graph():
    return build_graph().compile()


# Default compiled instance
graph = compile_graph()
