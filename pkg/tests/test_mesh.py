import numpy as np
import pytest

from src.core.errors import DomainError
from src.export import (
    Mesh,
    graph_mesh,
    grid_triangles,
    max_graph_deviation,
    strip_mesh,
    write_csv,
    write_json,
    write_obj,
)
from src.numerics import WHOLE_PLANE, Rect
from src.strips import strip_field
from src.suite import Check
from src.surfaces import cantor_profile, cone_field
from src.variation import plane_field

REGION = Rect(y0=-1.0, y1=1.0, t0=0.0, t1=1.0)


def test_grid_triangles_count_and_range():
    tris = grid_triangles(4, 3)
    assert tris.shape == (2 * 3 * 2, 3)
    assert tris.min() == 0 and tris.max() == 11


def test_grid_needs_two_rows():
    with pytest.raises(DomainError):
        grid_triangles(1, 5)


def test_mesh_validates_indices():
    with pytest.raises(DomainError):
        Mesh(np.zeros((3, 3)), np.array([[0, 1, 3]]))


def test_graph_mesh_lies_on_graph():
    f = plane_field(0.3, 0.1)
    mesh = graph_mesh(f, REGION, (11, 7))
    assert mesh.vertices.shape == (77, 3)
    assert max_graph_deviation(mesh, f) <= 1e-12
    assert mesh.degenerate_count() == 0


def test_graph_mesh_needs_bounded_region():
    with pytest.raises(DomainError):
        graph_mesh(plane_field(0.3, 0.1), WHOLE_PLANE.model_copy(update={"y1": np.inf}), (3, 3))


def test_ruled_strip_mesh_lies_on_graph():
    profile = cantor_profile(4)
    mesh = strip_mesh(profile, (-2.0, 2.0), (-0.5, 1.5), (20, 30))
    assert mesh.triangles.shape == (2 * 19 * 29, 3)
    assert max_graph_deviation(mesh, strip_field(profile)) <= 1e-9
    assert mesh.degenerate_count() == 0


def test_cone_mesh_vertices_are_graph_points():
    mesh = graph_mesh(cone_field(), REGION, (9, 9))
    assert max_graph_deviation(mesh, cone_field()) <= 1e-9


def test_obj_is_deterministic(tmp_path):
    mesh = graph_mesh(plane_field(0.3, 0.1), REGION, (3, 2), provenance="abc123")
    first = write_obj(mesh, tmp_path / "a.obj").read_bytes()
    second = write_obj(mesh, tmp_path / "b.obj").read_bytes()
    assert first == second
    lines = first.decode().splitlines()
    assert lines[0] == "# config abc123"
    assert lines[1] == "# vertices 6 triangles 4"
    assert sum(line.startswith("v ") for line in lines) == 6
    assert lines[-1].startswith("f ")
    assert min(int(v) for line in lines if line.startswith("f ") for v in line.split()[1:]) == 1


def test_csv_formatting(tmp_path):
    path = write_csv([{"x": 1 / 3, "ok": True, "name": "a"}], tmp_path / "t.csv")
    assert path.read_text() == "x,ok,name\n0.333333333333,true,a\n"


def test_json_round_trip(tmp_path):
    check = Check(name="c", value=1.5, threshold=2.0, passed=True)
    text = write_json(check, tmp_path / "c.json").read_text()
    assert Check.model_validate_json(text) == check
