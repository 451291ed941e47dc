"""Wrappers around suite nodes.

Every command node is a callable ``node(state, runtime) -> dict``. The wrappers here add
behaviour around it without touching the numerics:
- timed: log start and elapsed time per command
- capture_errors: turn a library error into an ``error`` entry in the state so the
  report is still written and the run exits nonzero

Both are switched by settings (HEIS_ENABLE_TIMING, HEIS_ENABLE_ERROR_CAPTURE).
DEFAULT_MIDDLEWARE lists them in application order (outermost last).
"""

import functools
import time
from collections.abc import Callable
from typing import Any

from src.core.errors import HeisError
from src.core.settings import logger, settings

Node = Callable[[dict, Any], dict]


def timed(node: Node) -> Node:
    """Log start and elapsed time of a command node."""

    @functools.wraps(node)
    def wrapper(state: dict, runtime: Any) -> dict:
        if not settings.ENABLE_TIMING:
            return node(state, runtime)
        command = state.get("command", node.__name__)
        logger.info(f"[{command}] start")
        start = time.perf_counter()
        try:
            return node(state, runtime)
        finally:
            logger.info(f"[{command}] {time.perf_counter() - start:.2f}s")

    return wrapper


def capture_errors(node: Node) -> Node:
    """Return ``{"error": ...}`` instead of raising a HeisError.

    Anything that is not a HeisError is a bug and propagates.
    """

    @functools.wraps(node)
    def wrapper(state: dict, runtime: Any) -> dict:
        try:
            return node(state, runtime)
        except HeisError as e:
            if not settings.ENABLE_ERROR_CAPTURE:
                raise
            message = f"{type(e).__name__}: {e}"
            logger.error(f"[{state.get('command', node.__name__)}] {message}")
            return {"error": message}

    return wrapper


DEFAULT_MIDDLEWARE: list[Callable[[Node], Node]] = [capture_errors, timed]


def apply_middleware(node: Node, middleware: list[Callable[[Node], Node]] | None = None) -> Node:
    for wrap in middleware if middleware is not None else DEFAULT_MIDDLEWARE:
        node = wrap(node)
    return node
