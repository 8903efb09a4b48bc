import logging
from pathlib import Path
from typing import Iterable

from pydantic import ValidationError

from lifeheal.exceptions import MemoryCorruptionError, MemoryIntegrityError, MemoryParseError, SnapshotMismatchError
from lifeheal.models.abstraction import AbstractState
from lifeheal.models.appmodel import ComponentState
from lifeheal.models.healer import (
    Classification,
    ClassificationKind,
    HealerMemory,
    MemoryUpdate,
    RestoreOutcome,
    SaveAction,
    SaveActionKind,
)
from lifeheal.models.lifecycle import HookPair, StopStartEvent
from lifeheal.models.snapshot import Snapshot
from lifeheal.schemas.memory import FailingEntry, MemoryDocument, SafeEntry
from lifeheal.services.abstraction_services import abstract_state
from lifeheal.services.snapshot_services import (
    decode_value,
    diff,
    serialized_size,
    take_selective,
    take_snapshot,
)
from lifeheal.storage.documents import read_json, validation_message, write_json
from lifeheal.storage.snapshot_store import SnapshotStore

logger = logging.getLogger("lifeheal.services.healer")


def classify(state: AbstractState, memory: HealerMemory) -> Classification:
    """
    Decide how the healer treats an abstract state.

    AbstractState is a frozen model, so set and dict membership compare
    activity and bitmask exactly as abstract_equal does.

    Returns:
        Classification: Unsafe with the learned variable set when the state is in
            MF, Safe when it is in MS, New otherwise.
    """
    if state in memory.failing:
        return Classification(kind=ClassificationKind.UNSAFE, var=memory.failing[state])
    if state in memory.safe:
        return Classification(kind=ClassificationKind.SAFE)
    return Classification(kind=ClassificationKind.NEW)


def on_save(state: ComponentState, memory: HealerMemory, event: int = 0) -> SaveAction:
    """
    React to a component about to be destroyed.

    Args:
        state (ComponentState): The live state, before any app save code.
        memory (HealerMemory): What the healer learned so far.
        event (int): Sequence index of the event.

    Returns:
        SaveAction: A full snapshot for a new state, a selective save of the
            loss-prone variables for an unsafe one, a skip for a safe one.

    Raises:
        MemoryCorruptionError: If memory lists a variable the component does not have.
    """
    key = abstract_state(state)
    verdict = classify(key, memory)
    if verdict.kind is ClassificationKind.NEW:
        snapshot = take_snapshot(state, event)
        return SaveAction(
            kind=SaveActionKind.FULL_SNAPSHOT,
            abstract_state=key,
            snapshot=snapshot,
            bytes_serialized=serialized_size(snapshot),
        )
    if verdict.kind is ClassificationKind.UNSAFE:
        missing = sorted(name for name in verdict.var if state.slot(name) is None)
        if missing:
            raise MemoryCorruptionError(
                f"memory entry {key} names '{missing[0]}', which {state.component_name} does not declare"
            )
        snapshot = take_selective(state, verdict.var, event)
        return SaveAction(
            kind=SaveActionKind.SELECTIVE_SAVE,
            abstract_state=key,
            snapshot=snapshot,
            var=verdict.var,
            bytes_serialized=serialized_size(snapshot),
        )
    return SaveAction(kind=SaveActionKind.SKIP, abstract_state=key)


def heal(state: ComponentState, snapshot: Snapshot, names: Iterable[str]) -> ComponentState:
    """
    Assign saved values back to the named variables; everything else is untouched.

    Raises:
        SnapshotMismatchError: If a name is missing from the snapshot or the component.
        TypedDecodeError: If a saved value does not fit its variable.
    """
    healed = state.clone()
    for name in sorted(names):
        encoded = snapshot.entries.get(name)
        slot = healed.slot(name)
        if encoded is None or slot is None:
            raise SnapshotMismatchError(state.component_name, f"cannot heal '{name}'")
        slot.value = decode_value(name, slot.spec.type, encoded)
    return healed


def on_restore(
    state: ComponentState, action: SaveAction, memory: HealerMemory
) -> tuple[ComponentState, RestoreOutcome, HealerMemory]:
    """
    React to a recreated component, following the action taken at save time.

    A full snapshot is diffed against the state: no loss teaches MS, a loss
    teaches MF and the lost variables are healed at once. A selective save is
    written back unconditionally. A skip changes nothing.

    Returns:
        tuple: The (possibly healed) state, the outcome, and the updated memory.

    Raises:
        SnapshotMismatchError: If the action's snapshot belongs to another component.
    """
    if action.kind is SaveActionKind.SKIP:
        return state, RestoreOutcome(classification=ClassificationKind.SAFE), memory
    snapshot = action.snapshot
    if snapshot is None or snapshot.component != state.component_name:
        raise SnapshotMismatchError(state.component_name, "save action carries no snapshot of this component")
    if action.kind is SaveActionKind.SELECTIVE_SAVE:
        healed = heal(state, snapshot, action.var)
        outcome = RestoreOutcome(classification=ClassificationKind.UNSAFE, healed=action.var)
        return healed, outcome, memory

    lost = diff(snapshot, state)
    learned = memory.copy()
    if not lost:
        learned.learn_safe(action.abstract_state)
        logger.info(f"{action.abstract_state} restored without loss; added to MS.")
        outcome = RestoreOutcome(classification=ClassificationKind.NEW, memory_update=MemoryUpdate.ADDED_TO_MS)
        return state, outcome, learned
    learned.learn_failing(action.abstract_state, lost)
    logger.info(f"{action.abstract_state} lost {sorted(lost)}; added to MF and healed.")
    outcome = RestoreOutcome(
        classification=ClassificationKind.NEW,
        lost=lost,
        healed=lost,
        memory_update=MemoryUpdate.ADDED_TO_MF,
    )
    return heal(state, snapshot, lost), outcome, learned


def memory_to_document(memory: HealerMemory) -> MemoryDocument:
    """Canonical document form: entries sorted by activity then bitmask, variables sorted."""
    return MemoryDocument(
        safe=[
            SafeEntry(activity=state.activity, bitmask=state.bitmask)
            for state in sorted(memory.safe, key=AbstractState.sort_key)
        ],
        failing=[
            FailingEntry(activity=state.activity, bitmask=state.bitmask, vars=sorted(memory.failing[state]))
            for state in sorted(memory.failing, key=AbstractState.sort_key)
        ],
    )


def memory_from_document(document: MemoryDocument) -> HealerMemory:
    """
    Rebuild a memory from its document form.

    Raises:
        MemoryIntegrityError: If a state is listed as failing twice, with no
            variables, or as both safe and failing.
    """
    memory = HealerMemory()
    for entry in document.safe:
        memory.safe.add(AbstractState(activity=entry.activity, bitmask=entry.bitmask))
    for entry in document.failing:
        state = AbstractState(activity=entry.activity, bitmask=entry.bitmask)
        if state in memory.failing:
            raise MemoryIntegrityError(f"abstract state {state} is listed more than once in MF")
        memory.failing[state] = frozenset(entry.vars)
    memory.check_integrity()
    return memory


def persist_memory(memory: HealerMemory, path: Path) -> None:
    memory.check_integrity()
    write_json(path, memory_to_document(memory).model_dump(mode="json", by_alias=True))


def load_memory(path: Path) -> HealerMemory:
    """
    Read a memory file.

    Raises:
        MemoryParseError: If the file cannot be read, is not JSON (with line and
            column), or does not match the memory schema.
        MemoryIntegrityError: If the content breaks a memory invariant.
    """
    raw = read_json(path, MemoryParseError)
    try:
        document = MemoryDocument.model_validate(raw)
    except ValidationError as e:
        raise MemoryParseError(f"{path}: {validation_message(e)}") from e
    memory = memory_from_document(document)
    logger.info(f"Loaded memory from '{path}': {len(memory.safe)} safe, {len(memory.failing)} failing states.")
    return memory


class Healer:
    """
    The self-healing engine installed around stop-start events.

    `hooks(event)` returns the hook pair for one event: the pre-destroy hook
    classifies and saves, the post-recreate hook detects, learns and heals.
    The action and outcome of the last event are kept for reporting.
    """

    def __init__(self, memory: HealerMemory | None = None, store: SnapshotStore | None = None):
        self.memory = memory if memory is not None else HealerMemory()
        self.store = store if store is not None else SnapshotStore()
        self.last_action: SaveAction | None = None
        self.last_outcome: RestoreOutcome | None = None

    def hooks(self, event: StopStartEvent) -> HookPair:
        def pre_destroy(state: ComponentState) -> None:
            action = on_save(state, self.memory, event.sequence_index)
            if action.snapshot is not None:
                action = action.model_copy(update={"bytes_serialized": self.store.put(action.snapshot)})
            self.last_action = action
            self.last_outcome = None

        def post_recreate(state: ComponentState) -> ComponentState:
            action = self.last_action
            if action is None:
                raise SnapshotMismatchError(state.component_name, "restore without a matching save")
            if action.snapshot is not None:
                stored = self.store.take(state.component_name, event.sequence_index)
                action = action.model_copy(update={"snapshot": stored})
            healed, outcome, self.memory = on_restore(state, action, self.memory)
            self.last_outcome = outcome
            return healed

        return HookPair(pre_destroy=pre_destroy, post_recreate=post_recreate)
