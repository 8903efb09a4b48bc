import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from lifeheal.exceptions import DuplicateVariableError, ScenarioParseError, ScenarioSemanticError
from lifeheal.models.appmodel import VariableSpec, coerce_value, fits_type
from lifeheal.schemas.scenario import ComponentDefinition, Scenario
from lifeheal.services.appmodel_services import validate_handler
from lifeheal.storage.documents import read_json, validation_message

logger = logging.getLogger("lifeheal.services.scenario")


def _check_mutations(definition: ComponentDefinition, event_number: int, mutations: dict[str, Any]) -> dict[str, Any]:
    specs = {spec.name: spec for spec in definition.variables}
    checked = {}
    for name, value in mutations.items():
        spec = specs.get(name)
        if spec is None:
            raise ScenarioSemanticError(f"event {event_number} mutates unknown variable '{name}' of '{definition.name}'")
        value = coerce_value(spec.type, value)
        if not fits_type(spec.type, value):
            raise ScenarioSemanticError(
                f"event {event_number} assigns a value to '{name}' that is not a valid {spec.type.value}"
            )
        checked[name] = value
    return checked


def validate_scenario(scenario: Scenario) -> Scenario:
    """
    Check every cross-reference of a scenario.

    Returns:
        Scenario: The scenario with handler stale values and mutations coerced
            to their variable types.

    Raises:
        DuplicateVariableError: If a component declares a variable twice.
        ScenarioSemanticError: On a duplicate component, a dangling reference or
            an ill-typed value.
    """
    components = []
    seen_components: set[str] = set()
    for definition in scenario.components:
        if not definition.name.isidentifier():
            raise ScenarioSemanticError(f"component name '{definition.name}' is not an identifier")
        if definition.name in seen_components:
            raise ScenarioSemanticError(f"duplicate component '{definition.name}'")
        seen_components.add(definition.name)
        seen_variables: set[str] = set()
        for spec in definition.variables:
            if spec.name in seen_variables:
                raise DuplicateVariableError(spec.name)
            seen_variables.add(spec.name)
        try:
            handler = validate_handler(definition.variables, definition.handler)
        except ScenarioSemanticError as e:
            raise ScenarioSemanticError(f"component '{definition.name}': {e.detail}") from e
        components.append(definition.model_copy(update={"handler": handler}))

    by_name = {definition.name: definition for definition in components}
    events = []
    for number, step in enumerate(scenario.events, start=1):
        definition = by_name.get(step.component)
        if definition is None:
            raise ScenarioSemanticError(f"event {number} references unknown component '{step.component}'")
        update: dict[str, Any] = {"mutations": _check_mutations(definition, number, step.mutations)}
        if step.handler is not None:
            try:
                update["handler"] = validate_handler(definition.variables, step.handler)
            except ScenarioSemanticError as e:
                raise ScenarioSemanticError(f"event {number}: {e.detail}") from e
        events.append(step.model_copy(update=update))
    return scenario.model_copy(update={"components": components, "events": events})


def load_scenario(path: Path) -> Scenario:
    """
    Read, parse and validate a scenario file.

    Args:
        path (Path): JSON scenario file.

    Returns:
        Scenario: The validated scenario.

    Raises:
        ScenarioParseError: If the file is unreadable, not JSON (with line and
            column) or does not match the scenario schema.
        ScenarioSemanticError: If a reference does not resolve.
    """
    raw = read_json(path, ScenarioParseError)
    try:
        scenario = Scenario.model_validate(raw)
    except ValidationError as e:
        raise ScenarioParseError(f"{path}: {validation_message(e)}") from e
    scenario = validate_scenario(scenario)
    logger.info(f"Loaded scenario '{path}': {len(scenario.components)} components, {len(scenario.events)} events.")
    return scenario


def split_scenario(scenario: Scenario, at: int) -> tuple[Scenario, Scenario]:
    """
    Cut an event script in two so it can be replayed by two separate runs.

    The second part starts from the values the first part leaves behind when
    every loss is healed: initial values with the first part's mutations
    applied, and the last handler each component was switched to.
    """
    head, tail = scenario.events[:at], scenario.events[at:]
    definitions = {definition.name: definition for definition in scenario.components}
    initials = {name: {spec.name: spec.initial for spec in d.variables} for name, d in definitions.items()}
    handlers = {name: d.handler for name, d in definitions.items()}
    for step in head:
        initials[step.component].update(step.mutations)
        if step.handler is not None:
            handlers[step.component] = step.handler
    carried = []
    for name, definition in definitions.items():
        variables = [
            VariableSpec(name=spec.name, kind=spec.kind, type=spec.type, initial=initials[name][spec.name])
            for spec in definition.variables
        ]
        carried.append(ComponentDefinition(name=name, variables=variables, handler=handlers[name]))
    first = scenario.model_copy(update={"events": list(head)})
    second = Scenario(
        description=scenario.description,
        components=carried,
        events=list(tail),
    )
    return first, second
