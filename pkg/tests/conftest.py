from pathlib import Path

import pytest

from lifeheal.models.appmodel import ComponentState, HandlerModel
from lifeheal.schemas.scenario import ComponentDefinition, Scenario
from lifeheal.services.appmodel_services import instantiate_component
from lifeheal.services.scenario_services import load_scenario

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"

NOTE_LOST = {"mSubtitleTextView", "noteContent", "note"}
NOTE_MASK = "101111111"


@pytest.fixture
def note_scenario() -> Scenario:
    return load_scenario(SCENARIOS / "owncloud_notes.json")


@pytest.fixture
def fixed_scenario() -> Scenario:
    return load_scenario(SCENARIOS / "owncloud_notes_fixed.json")


@pytest.fixture
def note_definition(note_scenario: Scenario) -> ComponentDefinition:
    return note_scenario.components[0]


@pytest.fixture
def note_activity(note_definition: ComponentDefinition) -> ComponentState:
    return instantiate_component(note_definition.variables, note_definition.name)


@pytest.fixture
def note_handler(note_definition: ComponentDefinition) -> HandlerModel:
    return note_definition.handler
