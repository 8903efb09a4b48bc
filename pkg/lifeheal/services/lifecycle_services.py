import logging

from lifeheal.models.appmodel import ComponentState, HandlerModel
from lifeheal.models.lifecycle import HookPair, StopStartEvent
from lifeheal.models.snapshot import Snapshot, SnapshotScope
from lifeheal.services.abstraction_services import default_value
from lifeheal.services.appmodel_services import handler_restore, handler_save
from lifeheal.services.snapshot_services import decode_value, encode_value

logger = logging.getLogger("lifeheal.services.lifecycle")


def recreate(state: ComponentState) -> ComponentState:
    """
    Destroy a component and build it again: same variables, every value reset
    to its type default.
    """
    fresh = state.clone()
    for slot in fresh.vars:
        slot.value = default_value(slot.spec.type)
    return fresh


def framework_save(state: ComponentState, bundle: Snapshot) -> Snapshot:
    """Default platform save: every view goes into the bundle, members never do."""
    return bundle.extended({slot.spec.name: encode_value(slot.spec.type, slot.value) for slot in state.views()})


def framework_restore(state: ComponentState, bundle: Snapshot) -> ComponentState:
    restored = state.clone()
    for slot in restored.views():
        encoded = bundle.entries.get(slot.spec.name)
        if encoded is not None:
            slot.value = decode_value(slot.spec.name, slot.spec.type, encoded)
    return restored


def dispatch_stop_start(
    state: ComponentState, handler: HandlerModel, hooks: HookPair, event: StopStartEvent
) -> ComponentState:
    """
    Push a component through one stop-start event.

    Steps, in order:
        1. hooks.pre_destroy sees the live state before any app code runs.
        2. The framework saves every view into a fresh bundle.
        3. The app's save callback extends the bundle.
        4. The component is recreated with default values.
        5. The framework restores the views from the bundle.
        6. The app's restore callback runs.
        7. hooks.post_recreate may replace the restored state.

    Args:
        state (ComponentState): The component before the event.
        handler (HandlerModel): The component's save/restore callbacks.
        hooks (HookPair): Interception points, e.g. the healer.
        event (StopStartEvent): The event being dispatched.

    Returns:
        ComponentState: The state returned by step 7.

    Raises:
        TypedDecodeError: Propagated from the restore callback.
    """
    logger.debug(f"event {event.sequence_index} ({event.kind.value}) on {state.component_name}")
    hooks.pre_destroy(state.clone())
    bundle = Snapshot(component=state.component_name, event=event.sequence_index, scope=SnapshotScope.SELECTIVE)
    bundle = framework_save(state, bundle)
    bundle = handler_save(state, handler, bundle)
    recreated = framework_restore(recreate(state), bundle)
    restored = handler_restore(recreated, handler, bundle)
    return hooks.post_recreate(restored)
