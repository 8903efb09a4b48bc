import json
from pathlib import Path

import pytest

from lifeheal.exceptions import DuplicateVariableError, ScenarioParseError, ScenarioSemanticError
from lifeheal.models.appmodel import BehaviorKind, ValueType
from lifeheal.services.oracle_services import generate_scenario
from lifeheal.services.scenario_services import load_scenario, split_scenario
from tests.conftest import SCENARIOS


def write(tmp_path: Path, document: dict) -> Path:
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(document))
    return path


def minimal(**overrides):
    document = {
        "description": "minimal",
        "components": [
            {
                "name": "MainActivity",
                "variables": [{"name": "count", "kind": "member", "type": "int", "initial": 3}],
                "handler": {"save": {"kind": "missing"}, "restore": {"kind": "correct"}},
            }
        ],
        "events": [{"component": "MainActivity", "kind": "rotation"}],
    }
    document.update(overrides)
    return document


class TestLoadScenario:
    def test_fixture(self, note_scenario):
        definition = note_scenario.components[0]
        assert definition.name == "NoteActivity"
        assert len(definition.variables) == 9
        assert definition.handler.restore.kind is BehaviorKind.STALE
        assert len(note_scenario.events) == 3

    def test_bundled_variants_load(self):
        for path in sorted(SCENARIOS.glob("*.json")):
            assert load_scenario(path).components

    def test_scenario_without_components(self, tmp_path):
        scenario = load_scenario(write(tmp_path, {"description": "empty", "components": [], "events": []}))
        assert scenario.components == []
        assert scenario.events == []

    def test_float_variable_accepts_integral_literal(self, tmp_path):
        document = minimal()
        document["components"][0]["variables"].append({"name": "ratio", "type": "float", "initial": 2})
        scenario = load_scenario(write(tmp_path, document))
        ratio = scenario.components[0].variables[1]
        assert ratio.type is ValueType.FLOAT
        assert ratio.initial == 2.0 and isinstance(ratio.initial, float)

    def test_malformed_json_reports_line_and_column(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "description": "x",\n  "components": [,]\n}')
        with pytest.raises(ScenarioParseError, match=r"broken\.json:3:\d+"):
            load_scenario(path)

    def test_schema_violation(self, tmp_path):
        document = minimal()
        document["components"][0]["variables"][0]["type"] = "decimal"
        with pytest.raises(ScenarioParseError):
            load_scenario(write(tmp_path, document))

    def test_unknown_component_in_event(self, tmp_path):
        document = minimal(events=[{"component": "SettingsActivity", "kind": "rotation"}])
        with pytest.raises(ScenarioSemanticError, match="SettingsActivity"):
            load_scenario(write(tmp_path, document))

    def test_unknown_variable_in_mutation(self, tmp_path):
        document = minimal(events=[{"component": "MainActivity", "kind": "rotation", "mutations": {"ghost": 1}}])
        with pytest.raises(ScenarioSemanticError, match="ghost"):
            load_scenario(write(tmp_path, document))

    def test_ill_typed_mutation(self, tmp_path):
        document = minimal(events=[{"component": "MainActivity", "kind": "rotation", "mutations": {"count": "7"}}])
        with pytest.raises(ScenarioSemanticError, match="count"):
            load_scenario(write(tmp_path, document))

    def test_duplicate_variable(self, tmp_path):
        document = minimal()
        document["components"][0]["variables"].append({"name": "count", "type": "text"})
        with pytest.raises(DuplicateVariableError):
            load_scenario(write(tmp_path, document))

    def test_duplicate_component(self, tmp_path):
        document = minimal()
        document["components"].append(document["components"][0])
        with pytest.raises(ScenarioSemanticError, match="duplicate component"):
            load_scenario(write(tmp_path, document))

    def test_handler_swap_is_validated(self, tmp_path):
        swap = {"save": {"kind": "partial", "names": ["ghost"]}}
        document = minimal(events=[{"component": "MainActivity", "kind": "rotation", "handler": swap}])
        with pytest.raises(ScenarioSemanticError, match="event 1"):
            load_scenario(write(tmp_path, document))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(tmp_path / "nowhere.json")


class TestSplitScenario:
    def test_second_half_starts_from_mutated_values(self):
        path = SCENARIOS / "owncloud_notes_upgrade.json"
        first, second = split_scenario(load_scenario(path), 2)
        assert len(first.events) == 2
        assert len(second.events) == 1
        variables = {spec.name: spec for spec in second.components[0].variables}
        assert variables["favoriteStar"].initial is False
        assert second.components[0].handler.restore.kind is BehaviorKind.STALE

    def test_halves_cover_every_event(self):
        scenario = generate_scenario(11)
        first, second = split_scenario(scenario, 1)
        assert first.events + second.events == scenario.events
        assert first.components == scenario.components
