"""Triangle meshes of intrinsic graphs Γ_f.

Strips are sampled in their ruled form (0, 0, τ)·s(a(τ), 1, 0) = (a(τ)s, s, τ) on an (s, τ)
grid; any other field goes through graph_map on a (y, t) grid. Vertex order is row-major in
the first grid coordinate, so the same config always yields the same file.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.core.errors import DomainError
from src.heisenberg import HPoint
from src.numerics import Rect
from src.strips import StripProfile
from src.variation import ScalarField

VERTEX_FORMAT = "v {:.9g} {:.9g} {:.9g}\n"


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (m, 3) group coordinates
    triangles: np.ndarray  # (k, 3) zero-based indices
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise DomainError(f"vertices must have shape (m, 3), got {self.vertices.shape}")
        if self.triangles.size and (
            self.triangles.min() < 0 or self.triangles.max() >= self.vertices.shape[0]
        ):
            raise DomainError("triangle index out of range")

    def hpoints(self) -> list[HPoint]:
        return [HPoint(*map(float, row)) for row in self.vertices]

    def degenerate_count(self, tol: float = 0.0) -> int:
        """Triangles whose Euclidean area in coordinates is ≤ ``tol``."""
        p = self.vertices[self.triangles]
        cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
        return int(np.count_nonzero(0.5 * np.linalg.norm(cross, axis=1) <= tol))


def grid_triangles(nu: int, nv: int) -> np.ndarray:
    """Two triangles per cell of an nu × nv vertex grid indexed i·nv + j."""
    if nu < 2 or nv < 2:
        raise DomainError(f"grid sizes must be ≥ 2, got {nu} × {nv}")
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    p = (i * nv + j).ravel()
    lower = np.column_stack([p, p + nv, p + 1])
    upper = np.column_stack([p + 1, p + nv, p + nv + 1])
    return np.stack([lower, upper], axis=1).reshape(-1, 3)


def strip_mesh(
    profile: StripProfile,
    s_range: tuple[float, float],
    tau_range: tuple[float, float],
    shape: tuple[int, int],
    provenance: str = "",
) -> Mesh:
    """Ruled form of the strip on an ns × nτ grid."""
    ns, nt = shape
    s = np.linspace(*s_range, ns)
    tau = np.linspace(*tau_range, nt)
    S, T = np.meshgrid(s, tau, indexing="ij")
    vertices = np.column_stack([(profile(T) * S).ravel(), S.ravel(), T.ravel()])
    return Mesh(vertices, grid_triangles(ns, nt), provenance)


def graph_mesh(
    f: ScalarField, region: Rect, shape: tuple[int, int], provenance: str = ""
) -> Mesh:
    """graph_map(f(y, t), y, t) on an ny × nt grid over ``region``."""
    if not all(np.isfinite([region.y0, region.y1, region.t0, region.t1])):
        raise DomainError("meshing needs a bounded region")
    ny, nt = shape
    ys = np.linspace(region.y0, region.y1, ny)
    ts = np.linspace(region.t0, region.t1, nt)
    Y, T = np.meshgrid(ys, ts, indexing="ij")
    F = np.asarray(f(Y, T), dtype=float)
    # Same formula as graph_map, vectorized.
    vertices = np.column_stack([F.ravel(), Y.ravel(), (T - 0.5 * Y * F).ravel()])
    return Mesh(vertices, grid_triangles(ny, nt), provenance)


def max_graph_deviation(mesh: Mesh, f: ScalarField) -> float:
    """Largest coordinate distance between a vertex and graph_map over its (y, t)."""
    x, y, z = mesh.vertices.T
    # The graph point over y with first coordinate x sits at t = z + y·x/2.
    t = z + 0.5 * y * x
    fv = np.asarray(f(y, t), dtype=float)
    return float(np.max(np.maximum(np.abs(fv - x), np.abs(t - 0.5 * y * fv - z))))


def write_obj(mesh: Mesh, path: Path) -> Path:
    """ASCII OBJ with 9 significant digits and one-based faces."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n") as fh:
        if mesh.provenance:
            fh.write(f"# config {mesh.provenance}\n")
        fh.write(f"# vertices {mesh.vertices.shape[0]} triangles {mesh.triangles.shape[0]}\n")
        for x, y, z in mesh.vertices:
            fh.write(VERTEX_FORMAT.format(x, y, z))
        for a, b, c in mesh.triangles + 1:
            fh.write(f"f {a} {b} {c}\n")
    return path
