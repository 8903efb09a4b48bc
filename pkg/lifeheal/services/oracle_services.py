import logging
import random
from typing import Any

from faker import Faker

from lifeheal.models.appmodel import (
    BehaviorKind,
    ComponentState,
    HandlerBehavior,
    HandlerModel,
    ValueType,
    VariableKind,
    VariableSpec,
)
from lifeheal.models.lifecycle import NO_OP_HOOKS, EventKind, StopStartEvent
from lifeheal.models.oracle import GeneratorLimits, GroundTruth
from lifeheal.schemas.scenario import ComponentDefinition, Scenario, ScriptedEvent
from lifeheal.services.abstraction_services import default_value, is_default
from lifeheal.services.lifecycle_services import dispatch_stop_start
from lifeheal.services.snapshot_services import deep_equal

logger = logging.getLogger("lifeheal.services.oracle")

fake = Faker()

# Generated values are drawn so that they never collide with stale values:
# numbers are non-negative, texts are bare words, objects never carry "stale".
_STALE_CAPABLE = (ValueType.INT, ValueType.FLOAT, ValueType.TEXT, ValueType.OBJECT)


def changed_variables(before: ComponentState, after: ComponentState) -> frozenset[str]:
    """Names of the variables whose value differs between two states of one component."""
    return frozenset(
        slot.spec.name for slot in before.vars if not deep_equal(slot.value, after.value_of(slot.spec.name))
    )


def oracle_lost_vars(state: ComponentState, handler: HandlerModel, event: StopStartEvent) -> GroundTruth:
    """
    Compute the exact set of variables an event loses, with no healer installed.

    Args:
        state (ComponentState): The component before the event; left untouched.
        handler (HandlerModel): The component's callbacks.
        event (StopStartEvent): The event to simulate.

    Returns:
        GroundTruth: Every variable whose post-event value differs from its pre-event value.
    """
    before = state.clone()
    after = dispatch_stop_start(state.clone(), handler, NO_OP_HOOKS, event)
    return GroundTruth(event_index=event.sequence_index, lost=changed_variables(before, after))


def _random_object(rng: random.Random, depth: int = 2) -> dict[str, Any]:
    tree: dict[str, Any] = {"title": fake.word()}
    if rng.random() < 0.5:
        tree["count"] = rng.randint(0, 50)
    if rng.random() < 0.5:
        tree["done"] = rng.random() < 0.5
    if rng.random() < 0.3:
        tree["ratio"] = round(rng.uniform(0.0, 1.0), 3)
    if depth > 1 and rng.random() < 0.4:
        tree["details"] = _random_object(rng, depth - 1)
    return tree


def random_value(rng: random.Random, value_type: ValueType, default_ratio: float = 0.3) -> Any:
    """A well-typed value; the type default with probability `default_ratio`."""
    if rng.random() < default_ratio:
        return default_value(value_type)
    if value_type is ValueType.INT:
        return rng.randint(1, 500)
    if value_type is ValueType.BOOL:
        return True
    if value_type is ValueType.FLOAT:
        return round(rng.uniform(0.5, 500.0), 3)
    if value_type is ValueType.TEXT:
        return fake.word()
    return _random_object(rng)


def _stale_value(rng: random.Random, spec: VariableSpec) -> Any:
    if spec.type is ValueType.INT:
        return -rng.randint(1, 999)
    if spec.type is ValueType.FLOAT:
        return -round(rng.uniform(1.0, 999.0), 3)
    if spec.type is ValueType.TEXT:
        return f"stale-{spec.name}"
    return {"stale": spec.name}


def _random_behavior(rng: random.Random, specs: list[VariableSpec]) -> HandlerBehavior:
    kind = rng.choice(list(BehaviorKind))
    members = [spec.name for spec in specs if spec.kind is VariableKind.MEMBER]
    if kind is BehaviorKind.PARTIAL:
        return HandlerBehavior(kind=kind, names=rng.sample(members, rng.randint(0, len(members))))
    if kind is BehaviorKind.STALE:
        capable = [spec for spec in specs if spec.type in _STALE_CAPABLE]
        pinned = rng.sample(capable, rng.randint(0, len(capable)))
        return HandlerBehavior(kind=kind, stale_values={spec.name: _stale_value(rng, spec) for spec in pinned})
    return HandlerBehavior(kind=kind)


def _random_component(rng: random.Random, index: int, limits: GeneratorLimits) -> ComponentDefinition:
    specs = []
    for position in range(rng.randint(1, limits.max_variables)):
        value_type = rng.choice(list(ValueType))
        specs.append(
            VariableSpec(
                name=f"m{fake.word().capitalize()}{position}",
                kind=rng.choice(list(VariableKind)),
                type=value_type,
                initial=random_value(rng, value_type),
            )
        )
    handler = HandlerModel(save=_random_behavior(rng, specs), restore=_random_behavior(rng, specs))
    return ComponentDefinition(name=f"{fake.word().capitalize()}{index}Activity", variables=specs, handler=handler)


def _random_mutations(rng: random.Random, definition: ComponentDefinition) -> dict[str, Any]:
    if not definition.variables or rng.random() < 0.3:
        return {}
    chosen = rng.sample(definition.variables, rng.randint(1, len(definition.variables)))
    return {spec.name: random_value(rng, spec.type) for spec in chosen}


def _adversarial_scenario(rng: random.Random, seed: int, limits: GeneratorLimits) -> Scenario:
    # The restore callback pins one variable to a fixed value. While the live
    # value equals the pinned one nothing is lost and the state is learned safe;
    # a later, different non-default value keeps the same bitmask and is lost unseen.
    value_type = rng.choice([ValueType.INT, ValueType.FLOAT, ValueType.TEXT])
    pinned_value = random_value(rng, value_type, default_ratio=0.0)
    other_value = random_value(rng, value_type, default_ratio=0.0)
    while deep_equal(other_value, pinned_value) or is_default(other_value, value_type):
        other_value = random_value(rng, value_type, default_ratio=0.0)
    pinned = VariableSpec(name="mPinned", kind=VariableKind.MEMBER, type=value_type, initial=pinned_value)
    view_types = rng.sample(list(ValueType), rng.randint(0, min(len(ValueType), limits.max_variables - 1)))
    views = [
        VariableSpec(
            name=f"m{fake.word().capitalize()}View{position}",
            kind=VariableKind.VIEW,
            type=view_type,
            initial=random_value(rng, view_type),
        )
        for position, view_type in enumerate(view_types)
    ]
    handler = HandlerModel(
        save=HandlerBehavior(kind=BehaviorKind.CORRECT),
        restore=HandlerBehavior(kind=BehaviorKind.STALE, stale_values={"mPinned": pinned_value}),
    )
    name = f"{fake.word().capitalize()}Activity"
    events = [
        ScriptedEvent(component=name, kind=EventKind.ROTATION),
        ScriptedEvent(component=name, kind=EventKind.ROTATION, mutations={"mPinned": other_value}),
    ]
    for _ in range(max(0, limits.max_events - 2)):
        events.append(ScriptedEvent(component=name, kind=rng.choice(list(EventKind))))
    return Scenario(
        description=f"adversarial value-dependent fault, seed {seed}",
        components=[ComponentDefinition(name=name, variables=[pinned, *views], handler=handler)],
        events=events,
    )


def generate_scenario(seed: int, limits: GeneratorLimits | None = None) -> Scenario:
    """
    Build a random scenario, fully determined by the seed.

    Fault behavior depends only on variable names and kinds, never on values,
    so detection keyed on abstract states is exact for these scenarios. With
    `limits.adversarial` the scenario instead hides a value-dependent fault.

    Args:
        seed (int): Random seed.
        limits (GeneratorLimits | None): Size bounds; settings defaults when omitted.

    Returns:
        Scenario: Components, handlers and an event script.
    """
    limits = limits or GeneratorLimits()
    rng = random.Random(seed)
    fake.seed_instance(seed)
    if limits.adversarial:
        return _adversarial_scenario(rng, seed, limits)
    components = [_random_component(rng, index, limits) for index in range(rng.randint(1, limits.max_components))]
    events = []
    for _ in range(rng.randint(1, limits.max_events)):
        definition = rng.choice(components)
        events.append(
            ScriptedEvent(
                component=definition.name,
                kind=rng.choice(list(EventKind)),
                mutations=_random_mutations(rng, definition),
            )
        )
    logger.debug(f"seed {seed}: {len(components)} components, {len(events)} events")
    return Scenario(description=f"generated scenario, seed {seed}", components=components, events=events)
