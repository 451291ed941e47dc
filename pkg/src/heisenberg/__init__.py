"""Heisenberg group module exports."""

from src.heisenberg.group import (
    IDENTITY,
    HPoint,
    HVector,
    commutator_fd,
    dilate,
    graph_map,
    hgroup_inv,
    hgroup_mul,
    horizontal_frame,
)

__all__ = [
    "IDENTITY",
    "HPoint",
    "HVector",
    "commutator_fd",
    "dilate",
    "graph_map",
    "hgroup_inv",
    "hgroup_mul",
    "horizontal_frame",
]
