import json

import pytest

from biamalg import __version__
from biamalg.cli import main

from .conftest import DUPLICATION_SCRIPT, EXAMPLE_SCRIPT


@pytest.fixture
def script(tmp_path):
    def write(text, name="script.bia"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_run(script, capsys):
    assert main(["run", script(EXAMPLE_SCRIPT)]) == 0
    assert capsys.readouterr().out == "gaussian: true\n"


def test_run_writes_a_json_report(script, tmp_path):
    path = script(DUPLICATION_SCRIPT + "check R gaussian;\n")
    report_path = tmp_path / "report.json"
    assert main(["run", path, "--json", str(report_path)]) == 1
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["meta"]["exit_code"] == 1
    assert report["meta"]["version"] == __version__
    assert report["results"][0]["passed"] == 0


def test_run_input_errors(script, tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.bia")]) == 2
    assert "cannot read" in capsys.readouterr().err
    assert main(["run", script("ring A = Z/4 Z/6;")]) == 2
    assert "1:14: parse error" in capsys.readouterr().err


def test_check(capsys):
    assert main(["check", "--ring", "Z/2[x]/(x^2)", "--property", "gaussian"]) == 0
    assert capsys.readouterr().out == "gaussian: true\n"
    assert main(["check", "--ring", "Z/2[x]/(x^2)[y]/(y^2)", "--property", "gaussian"]) == 1
    assert main(["check", "--ring", "Z/4", "--property", "colour"]) == 2
    assert main(["check", "--ring", "Z/4 Z/6", "--property", "local"]) == 2


def test_export_spec(script, tmp_path, capsys):
    dot_path = tmp_path / "spec.dot"
    assert main(["export-spec", script(EXAMPLE_SCRIPT), "--dot", str(dot_path)]) == 0
    out = capsys.readouterr().out
    assert out.endswith(f"spec R (bi-amalgamation): written to {dot_path}\n")
    assert dot_path.read_text(encoding="utf-8").startswith("digraph spec {")

    assert main(["export-spec", script(EXAMPLE_SCRIPT), "--dot", str(dot_path), "--name", "A"]) == 0
    assert "spec A (ring)" in capsys.readouterr().out
    assert main(["export-spec", script(EXAMPLE_SCRIPT), "--dot", str(dot_path), "--name", "Q"]) == 2
    assert main(["export-spec", script("# nothing\n", "empty.bia"), "--dot", str(dot_path)]) == 2


def test_search(capsys):
    argv = ["search", "gauss-sufficient", "--drop", "3", "--max-ring", "2", "--max-instances", "1"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "counterexample Z/16 >< (4)" in out
    assert "check R thm(gauss-sufficient, drop=[3]);" in out
    assert main(["search", "gauss-sufficient", "--drop", "9", "--max-ring", "2"]) == 2


def test_harness(tmp_path, capsys):
    report_path = tmp_path / "suite.json"
    argv = ["harness", "--max-ring", "3", "--max-instances", "2", "--theorem", "size-identity",
            "--theorem", "fiber-product", "--json", str(report_path), "--no-timing"]
    assert main(argv) == 0
    assert "size-identity: 9 subjects" in capsys.readouterr().out
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert "timing" not in report
    assert [r["theorem"] for r in report["results"]] == ["size-identity", "fiber-product"]
    assert report["meta"]["seed"] == 0


def test_harness_ablation_fails(capsys):
    argv = ["harness", "--max-ring", "2", "--max-instances", "1", "--theorem", "gauss-sufficient",
            "--ablate", "gauss-sufficient:3"]
    assert main(argv) == 1
    out = capsys.readouterr().out
    assert "gauss-sufficient fails on Z/16 >< (4)" in out
    assert main(["harness", "--max-ring", "2", "--ablate", "gauss-sufficient"]) == 2


def test_version_and_usage(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
    assert main([]) == 2
