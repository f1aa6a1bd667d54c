from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from posturekit import (
    ModelParseError,
    bundled_model_path,
    emit_model,
    parse_document,
    parse_model,
    parse_scenario,
    parse_scenario_obj,
)

from randmodels import random_model
import random


MINIMAL = {
    "schema_version": "1",
    "losses": [{"id": "L1"}],
    "hazards": [{"id": "H1", "associated": ["L1"]}],
    "assets": [{"id": "a", "name": "A"}, {"id": "b", "name": "B"}],
    "links": [{"id": "l1", "a": "a", "b": "b"}],
    "protections": [],
    "profiles": [{"id": "p0", "name": "P0", "entry_assets": ["a"]}],
    "mappings": [{"hazard": "H1", "targets": ["b"]}],
}


def doc(**overrides):
    out = {k: json.loads(json.dumps(v)) for k, v in MINIMAL.items()}
    out.update(overrides)
    return out


def parse_codes(text):
    result = parse_document(text)
    return result, [f.code for f in result.findings]


# ---------------------------------------------------------------------------
# Syntax and schema errors
# ---------------------------------------------------------------------------


def test_syntax_error_reports_position():
    result, found = parse_codes('{"schema_version": "1",}')
    assert result.model is None
    assert found == ["E-SYNTAX"]
    message = result.findings[0].message
    assert "line 1" in message


def test_top_level_must_be_object():
    result, found = parse_codes("[1, 2]")
    assert result.model is None
    assert "E-SCHEMA" in found


def test_missing_section_is_schema_error():
    body = doc()
    del body["mappings"]
    result, found = parse_codes(json.dumps(body))
    assert result.model is None
    assert "E-SCHEMA" in found
    assert any(f.subject == "mappings" for f in result.findings)


def test_schema_version_required_and_checked():
    body = doc()
    del body["schema_version"]
    result, found = parse_codes(json.dumps(body))
    assert result.model is None
    assert "E-SCHEMA" in found

    result, found = parse_codes(json.dumps(doc(schema_version="2")))
    assert result.model is None
    assert "E-SCHEMA" in found


def test_wrong_section_type_is_schema_error():
    result, found = parse_codes(json.dumps(doc(assets={"id": "a"})))
    assert result.model is None
    assert "E-SCHEMA" in found


def test_wrong_field_type_is_schema_error():
    body = doc()
    body["losses"][0]["weight"] = "heavy"
    result, found = parse_codes(json.dumps(body))
    assert result.model is None
    assert "E-SCHEMA" in found


def test_missing_required_field_is_schema_error():
    body = doc()
    del body["links"][0]["b"]
    result, found = parse_codes(json.dumps(body))
    assert result.model is None
    assert "E-SCHEMA" in found


def test_unknown_field_is_warning_only():
    body = doc()
    body["assets"][0]["color"] = "red"
    result, found = parse_codes(json.dumps(body))
    assert result.model is not None
    assert "W-UNKNOWN-FIELD" in found


def test_unknown_section_is_warning_only():
    result, found = parse_codes(json.dumps(doc(extras=[1])))
    assert result.model is not None
    assert "W-UNKNOWN-FIELD" in found


def test_semantic_errors_surface_through_parse():
    body = doc()
    body["links"][0]["b"] = "ghost"
    result, found = parse_codes(json.dumps(body))
    assert result.model is None
    assert "E-DANGLING-REF" in found


def test_parse_model_raises_with_findings():
    with pytest.raises(ModelParseError) as excinfo:
        parse_model('{"schema_version": "1"')
    assert excinfo.value.findings
    assert excinfo.value.findings[0].code == "E-SYNTAX"


# ---------------------------------------------------------------------------
# Round-trip and canonical emission
# ---------------------------------------------------------------------------


def test_bundled_model_round_trips(sphere):
    assert parse_model(emit_model(sphere)) == sphere


def test_emission_reaches_fixpoint_from_bundled_file():
    text = bundled_model_path().read_text()
    once = emit_model(parse_model(text))
    assert emit_model(parse_model(once)) == once


def test_emission_is_deterministic(sphere):
    assert emit_model(sphere) == emit_model(sphere)


def test_parsed_weights_are_explicit(sphere):
    reparsed = parse_model(emit_model(sphere))
    assert [x.weight for x in reparsed.losses] == [100, 99, 98, 97, 96]


def test_bundled_model_loads(sphere):
    assert len(sphere.hazards) == 23
    assert len(sphere.assets) == 8
    assert len(sphere.links) == 10
    assert len(sphere.protections) == 7
    assert len(sphere.profiles) == 2
    assert len(sphere.mappings) == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_models_round_trip(seed):
    model, _, _ = random_model(random.Random(seed))
    assert parse_model(emit_model(model)) == model


# ---------------------------------------------------------------------------
# Scenario parsing
# ---------------------------------------------------------------------------


def test_parse_scenario_defaults():
    scenario = parse_scenario("{}")
    assert scenario.is_empty
    assert scenario.profile is None


def test_parse_scenario_full():
    scenario = parse_scenario(json.dumps({
        "profile": "researcher",
        "compromised": ["nodes"],
        "disabled_protections": ["db-auth"],
        "zero_day_links": [{"a": "nodes", "b": "ops"}],
        "score_overrides": [
            {"link": "zero-day:0", "direction": "a-to-b", "likelihood": 0.4},
        ],
    }))
    assert scenario.profile == "researcher"
    assert scenario.compromised == ("nodes",)
    assert scenario.disabled_protections == ("db-auth",)
    assert scenario.zero_day_links[0].direction == "a-to-b"
    assert scenario.score_overrides[0].likelihood == 0.4


def test_parse_scenario_rejects_bad_shapes():
    for text in (
        "[]",
        '{"compromised": "nodes"}',
        '{"zero_day_links": [{"a": "nodes"}]}',
        '{"zero_day_links": [{"a": "x", "b": "y", "direction": "b-to-a"}]}',
        '{"score_overrides": [{"link": "l1", "likelihood": 0}]}',
        '{"score_overrides": [{"link": "l1", "likelihood": 1.5}]}',
        '{"score_overrides": [{"link": "l1", "direction": "sideways"}]}',
    ):
        with pytest.raises(ModelParseError):
            parse_scenario(text)


def test_parse_scenario_obj_collects_findings():
    scenario, findings = parse_scenario_obj({"compromised": [1, 2]})
    assert scenario is None
    assert any(f.code == "E-SCHEMA" for f in findings)


def test_parse_scenario_obj_unknown_key_warns():
    scenario, findings = parse_scenario_obj({"surprise": True})
    assert scenario is not None
    assert [f.code for f in findings] == ["W-UNKNOWN-FIELD"]
