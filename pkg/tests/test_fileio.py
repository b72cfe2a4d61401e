import json

import pytest
from hypothesis import HealthCheck, given, settings

from gsdalloc import validate_scenario
from gsdalloc.fileio import (
    ScenarioDocument,
    ScenarioParseError,
    parse_document,
    parse_scenario,
    serialize_document,
    serialize_scenario,
)

from .strategies import documents


def test_demo_round_trip(demo, alternatives):
    text = serialize_scenario(demo, alternatives)
    document = parse_document(text)
    assert document.scenario == demo
    assert document.alternatives == alternatives
    assert document.schema_version == 1


def test_serialization_is_stable(demo, alternatives):
    document = ScenarioDocument(demo, alternatives)
    once = serialize_document(document)
    assert serialize_document(parse_document(once)) == once


def test_validation_identical_after_round_trip(demo):
    assert validate_scenario(parse_scenario(serialize_scenario(demo))) == validate_scenario(demo)


def test_syntax_error_reports_position():
    with pytest.raises(ScenarioParseError, match=r"line 2, column"):
        parse_document('{\n  "schema_version": }')


def test_unsupported_schema_version(demo):
    tree = json.loads(serialize_scenario(demo))
    tree["schema_version"] = 999
    with pytest.raises(ScenarioParseError, match="999"):
        parse_document(json.dumps(tree))


def test_missing_schema_version(demo):
    tree = json.loads(serialize_scenario(demo))
    del tree["schema_version"]
    with pytest.raises(ScenarioParseError) as exc_info:
        parse_document(json.dumps(tree))
    assert any(v.code == "unsupported_version" for v in exc_info.value.violations)


def test_dangling_pin_reported_with_code(demo):
    tree = json.loads(serialize_scenario(demo))
    tree["pinned"] = {"comp1": "atlantis"}
    with pytest.raises(ScenarioParseError) as exc_info:
        parse_document(json.dumps(tree))
    assert any(v.code == "unknown_site" for v in exc_info.value.violations)


def test_invalid_alternative_rejected(demo, alternatives):
    tree = json.loads(serialize_scenario(demo, alternatives))
    tree["alternatives"]["Broken"] = {"comp1": "frankfurt"}  # not total
    with pytest.raises(ScenarioParseError) as exc_info:
        parse_document(json.dumps(tree))
    assert any(v.code == "invalid_alternative" for v in exc_info.value.violations)


def test_structural_error_has_path(demo):
    tree = json.loads(serialize_scenario(demo))
    tree["sites"][2]["cost_rate"] = "free"
    with pytest.raises(ScenarioParseError, match=r"sites\[2\]"):
        parse_document(json.dumps(tree))


def test_validation_violation_fails_parse(demo):
    tree = json.loads(serialize_scenario(demo))
    tree["coupling"][0]["weight"] = 1.5
    with pytest.raises(ScenarioParseError) as exc_info:
        parse_document(json.dumps(tree))
    assert any(v.code == "coupling_out_of_range" for v in exc_info.value.violations)


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(documents())
def test_generated_documents_round_trip(doc):
    scenario, alternatives = doc
    text = serialize_scenario(scenario, alternatives)
    parsed = parse_document(text)
    assert parsed.scenario == scenario
    assert parsed.alternatives == alternatives
