import json

import pytest
from pydantic import ValidationError

import main
from src.suite import RunConfig, build_graph, node_name


def check(report: dict, name: str) -> dict:
    matches = [c for c in report["checks"] if c["name"] == name]
    assert matches, f"no check {name!r} in {[c['name'] for c in report['checks']]}"
    return matches[0]


def test_every_command_has_a_node():
    graph = build_graph()
    for command in main.COMMANDS:
        assert node_name(command) in graph.nodes
    assert "finalize" in graph.nodes


def test_config_hash_ignores_output_directory():
    base = RunConfig(command="area", out="a")
    assert base.config_hash() == RunConfig(command="area", out="b").config_hash()
    assert base.config_hash() != RunConfig(command="area", a=0.5).config_hash()


def test_config_validation(tmp_path):
    with pytest.raises(ValidationError):
        RunConfig(command="nope")
    with pytest.raises(ValidationError):
        RunConfig(command="verdict", field="strip")
    with pytest.raises(ValidationError):
        RunConfig(command="mesh", grid=(1, 10))
    assert RunConfig(command="area", region="0,1,2,3").region.t1 == 3.0


def test_json_config_with_flag_overrides(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"command": "verdict", "field": "cone_eps", "eps": 0.05}))
    args = main.build_parser().parse_args(["verdict", "--config", str(path), "--eps", "0.2"])
    config = main.load_config(args)
    assert config.field == "cone_eps"
    assert config.eps == 0.2


def test_cli_parsing():
    args = main.build_parser().parse_args(
        ["cantor-suite", "--n", "limit", "--grid", "5,6", "--rayleigh", "2,1", "--ode"]
    )
    config = main.load_config(args)
    assert config.n is None
    assert config.grid == (5, 6)
    assert config.rayleigh.A == 2.0 and config.rayleigh.B == 1.0
    assert config.exact is False


def test_invalid_config_exits_2(tmp_path):
    assert main.main(["verdict", "--field", "strip", "--out", str(tmp_path)]) == 2


def test_verdict_plane(run_command):
    code, report, out = run_command("verdict", "--field", "plane", "--a", "0.3", "--b", "0.1")
    assert code == 0
    assert report["passed"]
    assert check(report, "verdict")["value"] == "Plane"
    assert (out / "profile.csv").exists()


def test_verdict_cone_eps(run_command):
    code, report, _ = run_command("verdict", "--field", "cone_eps", "--eps", "0.1")
    assert code == 0
    assert check(report, "verdict")["value"] == "NotPlane"


def test_verdict_from_profile_table(run_command, tmp_path):
    table = tmp_path / "a.csv"
    table.write_text("tau,a\n0,0\n1,1\n")
    code, report, _ = run_command("verdict", "--field", "strip", "--profile", str(table))
    assert code == 0
    assert check(report, "verdict")["value"] == "NotPlane"


def test_area_plane(run_command):
    code, report, _ = run_command("area", "--field", "plane", "--region", "0,1,0,1")
    assert code == 0
    assert check(report, "plane_closed_form")["passed"]


def test_fit_quadratic_plane(run_command):
    code, report, _ = run_command("fit-quadratic", "--field", "plane")
    assert code == 0, [c for c in report["checks"] if not c["passed"]]
    assert check(report, "a_recovery")["value"] <= 1e-6
    assert check(report, "area_formula")["passed"]


def test_fit_quadratic_cone_eps(run_command):
    _, report, _ = run_command("fit-quadratic", "--field", "cone_eps", "--eps", "0.1")
    assert check(report, "a_recovery")["value"] <= 1e-6
    assert check(report, "b_recovery")["value"] <= 1e-6
    for rule in ("dt", "dy", "gradient", "jacobian"):
        assert check(report, f"change_of_variables_{rule}")["passed"]


def test_flow_blowup(run_command):
    code, report, out = run_command(
        "flow", "--field", "t2", "--tau", "1", "--to", "0.5", "--horizon", "2"
    )
    assert code == 0
    assert check(report, "blowup_detected")["passed"]
    assert check(report, "blowup_before_pole")["value"] < 1.0
    assert check(report, "flow_vs_exact")["passed"]
    assert (out / "flow.csv").read_text().startswith("s,gamma\n")


def test_flow_lipschitz_field(run_command):
    code, report, _ = run_command("flow", "--field", "t", "--samples", "20")
    assert code == 0
    assert check(report, "separation_violations")["value"] == 0
    assert check(report, "family_separation_violations")["value"] == 0


def test_calibration_strip(run_command):
    code, report, _ = run_command("calibration", "--field", "cantor", "--n", "3")
    assert code == 0
    assert check(report, "orientation_flips")["passed"]


def test_calibration_cone(run_command):
    code, report, _ = run_command("calibration", "--field", "cone")
    assert code == 0
    assert check(report, "max_normal_error")["value"] <= 1e-8


def test_library_error_becomes_failed_check(run_command):
    code, report, _ = run_command("calibration", "--field", "t")
    assert code == 1
    assert not report["passed"]
    assert check(report, "error")["value"].startswith("DomainError")


def test_rayleigh(run_command):
    code, report, _ = run_command("rayleigh")
    assert code == 0
    assert check(report, "closed_form")["passed"]
    assert check(report, "below_two")["passed"]


def test_mesh_is_reproducible(run_command, tmp_path):
    argv = ("mesh", "--field", "cantor", "--n", "4", "--grid", "20,30")
    code, report, first = run_command(*argv, out=tmp_path / "one")
    _, _, second = run_command(*argv, out=tmp_path / "two")
    assert code == 0
    assert check(report, "vertex_count")["value"] == 600
    assert check(report, "triangle_count")["value"] == 2 * 19 * 29
    assert (first / "mesh.obj").read_bytes() == (second / "mesh.obj").read_bytes()
    assert (first / "report.json").read_bytes() == (second / "report.json").read_bytes()


def test_cone_mesh_dilation_invariance(run_command):
    code, report, _ = run_command("mesh", "--field", "cone", "--grid", "20,20")
    assert code == 0
    assert check(report, "dilation_invariance")["value"] == 0


@pytest.mark.slow
def test_cantor_suite(run_command):
    code, report, out = run_command("cantor-suite", "--n", "4")
    assert code == 0, [c for c in report["checks"] if not c["passed"]]
    assert check(report, "tau_integral[n=4]")["value"] == pytest.approx(2**-0.5, abs=1e-12)
    assert check(report, "second_variation[n=4]")["anchor"] == "II ≥ -2Mπq^{n/2}"
    assert (out / "cantor.csv").exists()


@pytest.mark.slow
def test_cone_suite(run_command):
    code, report, _ = run_command("cone-suite")
    assert code == 0, [c for c in report["checks"] if not c["passed"]]


def test_variation_commands_on_plane(run_command):
    for command in ("first-variation", "second-variation"):
        code, report, _ = run_command(command, "--field", "plane")
        assert code == 0, [c for c in report["checks"] if not c["passed"]]
