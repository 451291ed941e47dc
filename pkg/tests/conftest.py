import json

import pytest

import main


@pytest.fixture
def run_command(tmp_path):
    """Run the CLI into a fresh output directory; returns (exit code, report.json, out dir)."""

    def run(*argv: str, out=None):
        out = out or tmp_path / "out"
        code = main.main([*argv, "--out", str(out)])
        report_path = out / "report.json"
        report = json.loads(report_path.read_text()) if report_path.exists() else None
        return code, report, out

    return run

