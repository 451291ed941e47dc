"""Artifact writers: JSON reports, CSV tables and OBJ meshes."""

from src.export.mesh import (
    Mesh,
    graph_mesh,
    grid_triangles,
    max_graph_deviation,
    strip_mesh,
    write_obj,
)
from src.export.writers import write_csv, write_json

__all__ = [
    "Mesh",
    "graph_mesh",
    "grid_triangles",
    "max_graph_deviation",
    "strip_mesh",
    "write_csv",
    "write_json",
    "write_obj",
]
