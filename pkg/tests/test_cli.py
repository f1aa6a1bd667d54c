from __future__ import annotations

import io
import json

import pytest

from posturekit import emit_model, run
from posturekit.cli import _build_parser



def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def model_file(tmp_path):
    def write(model, name="model.json"):
        path = tmp_path / name
        path.write_text(emit_model(model), encoding="utf-8")
        return str(path)

    return write


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_clean_model(sphere_path):
    code, out, err = invoke("validate", sphere_path)
    assert code == 0
    assert out.endswith("0 errors, 21 warnings\n")
    assert err == ""
    assert "warning W-EMPTY-ASSOCIATED [H2.1]:" in out


def test_validate_broken_model(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": "1"', encoding="utf-8")
    code, out, err = invoke("validate", str(bad))
    assert code == 2
    assert "error E-SYNTAX" in err
    assert out.endswith("1 errors, 0 warnings\n")


def test_validate_semantic_errors_go_to_stderr(tmp_path, triangle):
    doc = json.loads(emit_model(triangle))
    doc["links"][0]["b"] = "ghost"
    path = tmp_path / "dangling.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = invoke("validate", str(path))
    assert code == 2
    assert "E-DANGLING-REF" in err


def test_missing_file_is_an_input_error():
    code, out, err = invoke("validate", "/no/such/file.json")
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# hazards
# ---------------------------------------------------------------------------


def test_hazard_tree_listing(sphere_path):
    code, out, err = invoke("hazards", sphere_path)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("H1 ")
    assert "(losses: L1, L2, L3, L4, L5)" in lines[0]
    assert any(line.startswith("  H1.1 ") for line in lines)
    assert any(line.startswith("    H2.2.1 ") for line in lines)
    assert any("(losses: none)" in line for line in lines)  # H2.1
    assert len(lines) == 23


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


def test_chains_table_for_one_hazard(sphere_path):
    code, out, err = invoke(
        "chains", sphere_path, "--hazard", "H3", "--profile", "researcher"
    )
    assert code == 0
    assert out.endswith("2 chains\n")
    assert "nodes -> infrapod DB" in out
    assert "nodes -> infrapod server -> infrapod DB" in out
    assert "DB credentials and authentication" in out


def test_chains_unknown_hazard_exits_2(sphere_path):
    code, out, err = invoke("chains", sphere_path, "--hazard", "H99")
    assert code == 2
    assert "H99" in err


def test_chains_unknown_profile_exits_2(sphere_path):
    code, out, err = invoke(
        "chains", sphere_path, "--hazard", "H3", "--profile", "nobody"
    )
    assert code == 2
    assert "nobody" in err


def test_chains_unmapped_hazard_exits_2(sphere_path):
    code, out, err = invoke("chains", sphere_path, "--hazard", "H2")
    assert code == 2
    assert "H2" in err


def test_chains_with_scenario_file(sphere_path, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text(
        '{"profile": "researcher", "compromised": ["infrapod-server"]}',
        encoding="utf-8",
    )
    code, out, err = invoke(
        "chains", sphere_path, "--hazard", "H3",
        "--scenario", str(scenario),
    )
    assert code == 0
    assert out.endswith("3 chains\n")
    assert "infrapod server -> infrapod DB" in out


def test_chains_bad_max_depth_exits_2(sphere_path):
    code, out, err = invoke(
        "chains", sphere_path, "--hazard", "H3", "--max-depth", "0"
    )
    assert code == 2
    assert "max_depth" in err


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_summary(sphere_path):
    code, out, err = invoke("analyze", sphere_path)
    assert code == 0
    assert "== H1.3: 5 chains" in out
    assert "== H3: 3 chains" in out
    assert "== H5: 1 chains" in out
    assert "coverage: unpreventable=1, unprotected=0, thin=2, defended=6" in out
    assert "greedy cut: ops-ssh-linux, db-auth" in out
    assert "1 chain(s) need detection" in out


def test_analyze_fail_on_uncovered(sphere_path):
    code, out, err = invoke("analyze", sphere_path, "--fail-on-uncovered")
    assert code == 1


def test_analyze_fail_flag_passes_when_covered(model_file, triangle):
    path = model_file(triangle)
    code, out, err = invoke("analyze", path, "--fail-on-uncovered")
    assert code == 0
    assert "need detection" not in out


# ---------------------------------------------------------------------------
# whatif
# ---------------------------------------------------------------------------


def test_whatif_text_output(sphere_path, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text(
        '{"profile": "researcher", "disabled_protections": ["db-auth"]}',
        encoding="utf-8",
    )
    code, out, err = invoke(
        "whatif", sphere_path, "--hazard", "H3", "--scenario", str(scenario)
    )
    assert code == 0
    assert "hazard H3, profile researcher" in out
    assert "new chains: 0" in out
    assert "removed protection instances: 2" in out
    assert "class change: nodes -> infrapod DB: thin -> unprotected" in out


def test_whatif_json_output(sphere_path, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text('{"compromised": ["infrapod-server"]}',
                        encoding="utf-8")
    code, out, err = invoke(
        "whatif", sphere_path, "--hazard", "H3",
        "--scenario", str(scenario), "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["hazard"] == "H3"
    assert doc["profile"] is None
    assert [c["assets"] for c in doc["new_chains"]] == [
        ["infrapod-server", "infrapod-db"],
    ]


def test_whatif_bad_scenario_file_exits_2(sphere_path, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text('{"compromised": "nodes"}', encoding="utf-8")
    code, out, err = invoke(
        "whatif", sphere_path, "--hazard", "H3", "--scenario", str(scenario)
    )
    assert code == 2


def test_whatif_unknown_scenario_ref_exits_2(sphere_path, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text('{"compromised": ["ghost"]}', encoding="utf-8")
    code, out, err = invoke(
        "whatif", sphere_path, "--hazard", "H3", "--scenario", str(scenario)
    )
    assert code == 2
    assert "ghost" in err


# ---------------------------------------------------------------------------
# export-dot / report
# ---------------------------------------------------------------------------


def test_export_dot_merged_to_stdout(sphere_path):
    code, out, err = invoke("export-dot", sphere_path)
    assert code == 0
    assert out.startswith("digraph attack {")
    assert '"internet" [label="internet"]' in out
    assert '"infrapod-server" -> "ops"' in out


def test_export_dot_single_hazard_to_file(sphere_path, tmp_path):
    target = tmp_path / "h3.dot"
    code, out, err = invoke(
        "export-dot", sphere_path, "--hazard", "H3", "-o", str(target)
    )
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert "H3:1" in text
    assert "ops" not in text


def test_export_dot_hazard_and_merged_conflict(sphere_path):
    code, out, err = invoke(
        "export-dot", sphere_path, "--hazard", "H3", "--merged"
    )
    assert code == 3


def test_report_bundle(sphere_path, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = invoke("report", sphere_path, "-o", str(target))
    assert code == 0
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["counts"]["assets"] == 8
    assert list(doc["chains"]) == ["H1.3", "H3", "H5"]


def test_identical_runs_produce_identical_bytes(sphere_path):
    first = invoke("report", sphere_path)
    second = invoke("report", sphere_path)
    assert first == second
    assert invoke("export-dot", sphere_path) == invoke(
        "export-dot", sphere_path
    )


# ---------------------------------------------------------------------------
# usage errors
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    (),
    ("frobnicate", "x.json"),
    ("chains", "x.json"),          # missing --hazard
    ("validate",),                 # missing model path
    ("serve", "x.json", "--listen", "nonsense"),
])
def test_usage_errors_exit_3(argv):
    code, out, err = invoke(*argv)
    assert code == 3
    assert "usage error:" in err


def test_help_exits_0():
    code, out, err = invoke("--help")
    assert code == 0


def test_parser_declares_all_handlers():
    import argparse

    from posturekit.cli import _HANDLERS

    parser = _build_parser()
    [sub] = [a for a in parser._actions
             if isinstance(a, argparse._SubParsersAction)]
    assert set(sub.choices) == set(_HANDLERS)
