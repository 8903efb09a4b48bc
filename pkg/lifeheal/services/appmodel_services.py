import copy
import logging
from typing import Iterable

from lifeheal.exceptions import DuplicateVariableError, ScenarioSemanticError
from lifeheal.models.appmodel import (
    BehaviorKind,
    ComponentState,
    HandlerBehavior,
    HandlerModel,
    VariableKind,
    VariableSlot,
    VariableSpec,
    coerce_value,
    fits_type,
)
from lifeheal.models.snapshot import Snapshot
from lifeheal.services.abstraction_services import default_value
from lifeheal.services.snapshot_services import decode_value, encode_value

logger = logging.getLogger("lifeheal.services.appmodel")


def ordered_specs(specs: Iterable[VariableSpec]) -> list[VariableSpec]:
    """Members in declaration order, then views in declaration order."""
    specs = list(specs)
    members = [spec for spec in specs if spec.kind is VariableKind.MEMBER]
    views = [spec for spec in specs if spec.kind is VariableKind.VIEW]
    return members + views


def instantiate_component(specs: Iterable[VariableSpec], name: str) -> ComponentState:
    """
    Create a component with every variable set to its initial value.

    Args:
        specs (Iterable[VariableSpec]): Variable declarations.
        name (str): Component name.

    Returns:
        ComponentState: The new component, variables in tracking order.

    Raises:
        DuplicateVariableError: If two declarations share a name.
    """
    seen: set[str] = set()
    slots = []
    for spec in ordered_specs(specs):
        if spec.name in seen:
            raise DuplicateVariableError(spec.name)
        seen.add(spec.name)
        initial = default_value(spec.type) if spec.initial is None else copy.deepcopy(spec.initial)
        slots.append(VariableSlot(spec=spec, value=initial))
    return ComponentState(component_name=name, vars=slots)


def _check_behavior(specs: dict[str, VariableSpec], behavior: HandlerBehavior, side: str) -> HandlerBehavior:
    for target in behavior.targets:
        spec = specs.get(target)
        if spec is None:
            raise ScenarioSemanticError(f"{side} handler references unknown variable '{target}'")
        if behavior.kind is BehaviorKind.PARTIAL and spec.kind is not VariableKind.MEMBER:
            raise ScenarioSemanticError(f"{side} handler lists view '{target}'; partial handlers cover members only")
    if behavior.kind is not BehaviorKind.STALE:
        return behavior
    stale_values = {}
    for target, value in behavior.stale_values.items():
        spec = specs[target]
        value = coerce_value(spec.type, value)
        if not fits_type(spec.type, value):
            raise ScenarioSemanticError(f"stale value for '{target}' is not a valid {spec.type.value}")
        stale_values[target] = value
    return behavior.model_copy(update={"stale_values": stale_values})


def validate_handler(specs: Iterable[VariableSpec], handler: HandlerModel) -> HandlerModel:
    """
    Check that a handler only references variables of the component it serves.

    Returns:
        HandlerModel: The handler with stale values coerced to their variable types.

    Raises:
        ScenarioSemanticError: On an unknown name, a view listed by a partial
            handler, or an ill-typed stale value.
    """
    by_name = {spec.name: spec for spec in specs}
    return HandlerModel(
        save=_check_behavior(by_name, handler.save, "save"),
        restore=_check_behavior(by_name, handler.restore, "restore"),
    )


def handler_save(state: ComponentState, handler: HandlerModel, bundle: Snapshot) -> Snapshot:
    """
    Run the app's save callback.

    Args:
        state (ComponentState): Component about to be destroyed.
        handler (HandlerModel): Callback pair of the component.
        bundle (Snapshot): Bundle already holding the framework-saved views.

    Returns:
        Snapshot: The bundle extended with the members the callback saves.
    """
    behavior = handler.save
    if behavior.kind is BehaviorKind.MISSING:
        return bundle
    if behavior.kind is BehaviorKind.CORRECT:
        saved = state.members()
    else:
        targets = set(behavior.targets)
        saved = [slot for slot in state.members() if slot.spec.name in targets]
    entries = {slot.spec.name: encode_value(slot.spec.type, slot.value) for slot in saved}
    logger.debug(f"{state.component_name}: save callback ({behavior.kind.value}) bundled {sorted(entries)}")
    return bundle.extended(entries)


def handler_restore(state: ComponentState, handler: HandlerModel, bundle: Snapshot) -> ComponentState:
    """
    Run the app's restore callback on a freshly recreated component.

    Correct assigns every bundled member back, Partial only the listed ones.
    Stale pins its listed variables to their outdated values whatever the
    bundle holds and leaves everything else as recreated.

    Raises:
        TypedDecodeError: If a bundled value does not fit its target variable.
    """
    behavior = handler.restore
    restored = state.clone()
    if behavior.kind is BehaviorKind.MISSING:
        return restored
    if behavior.kind is BehaviorKind.STALE:
        for name, value in behavior.stale_values.items():
            slot = restored.slot(name)
            if slot is not None:
                slot.value = copy.deepcopy(value)
        logger.debug(f"{state.component_name}: restore callback pinned {sorted(behavior.stale_values)}")
        return restored
    if behavior.kind is BehaviorKind.PARTIAL:
        targets = set(behavior.targets)
        candidates = [slot for slot in restored.members() if slot.spec.name in targets]
    else:
        candidates = restored.members()
    for slot in candidates:
        encoded = bundle.entries.get(slot.spec.name)
        if encoded is not None:
            slot.value = decode_value(slot.spec.name, slot.spec.type, encoded)
    logger.debug(f"{state.component_name}: restore callback ({behavior.kind.value}) done")
    return restored
