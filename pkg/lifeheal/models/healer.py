from dataclasses import dataclass, field
from enum import Enum

from pydantic import BaseModel

from lifeheal.exceptions import MemoryIntegrityError
from lifeheal.models.abstraction import AbstractState
from lifeheal.models.snapshot import LostVarSet, Snapshot


class ClassificationKind(str, Enum):
    NEW = "new"
    SAFE = "safe"
    UNSAFE = "unsafe"


class Classification(BaseModel, frozen=True):
    kind: ClassificationKind
    var: frozenset[str] = frozenset()


@dataclass
class HealerMemory:
    """
    Learned knowledge of the healer.

    Attributes:
        safe: Abstract states whose recreation lost nothing (MS).
        failing: Abstract states whose recreation lost variables, mapped to the
            names of the lost variables (MF).
    """

    safe: set[AbstractState] = field(default_factory=set)
    failing: dict[AbstractState, frozenset[str]] = field(default_factory=dict)

    def check_integrity(self) -> None:
        both = self.safe & set(self.failing)
        if both:
            first = min(both, key=AbstractState.sort_key)
            raise MemoryIntegrityError(f"abstract state {first} is recorded as both safe and failing")
        for state, names in self.failing.items():
            if not names:
                raise MemoryIntegrityError(f"failing abstract state {state} has an empty variable set")

    def learn_safe(self, state: AbstractState) -> None:
        if state in self.failing:
            raise MemoryIntegrityError(f"abstract state {state} is already recorded as failing")
        self.safe.add(state)

    def learn_failing(self, state: AbstractState, names: frozenset[str]) -> None:
        if state in self.safe:
            raise MemoryIntegrityError(f"abstract state {state} is already recorded as safe")
        if not names:
            raise MemoryIntegrityError(f"refusing to record {state} as failing with no lost variables")
        self.failing[state] = frozenset(names)

    def copy(self) -> "HealerMemory":
        return HealerMemory(safe=set(self.safe), failing=dict(self.failing))

    def is_empty(self) -> bool:
        return not self.safe and not self.failing


class SaveActionKind(str, Enum):
    FULL_SNAPSHOT = "full_snapshot"
    SELECTIVE_SAVE = "selective_save"
    SKIP = "skip"


_CLASSIFICATION_OF = {
    SaveActionKind.FULL_SNAPSHOT: ClassificationKind.NEW,
    SaveActionKind.SELECTIVE_SAVE: ClassificationKind.UNSAFE,
    SaveActionKind.SKIP: ClassificationKind.SAFE,
}


class SaveAction(BaseModel):
    """
    What the healer did when the component was about to be destroyed.

    Attributes:
        kind (SaveActionKind): Full snapshot, selective save or skip.
        abstract_state (AbstractState): Abstract state computed at save time.
        snapshot (Snapshot | None): Saved values, absent for skip.
        var (frozenset[str]): Variables known to get lost (selective save only).
        bytes_serialized (int): Serialized size of the snapshot, 0 for skip.
    """

    kind: SaveActionKind
    abstract_state: AbstractState
    snapshot: Snapshot | None = None
    var: frozenset[str] = frozenset()
    bytes_serialized: int = 0

    @property
    def classification(self) -> ClassificationKind:
        return _CLASSIFICATION_OF[self.kind]


class MemoryUpdate(str, Enum):
    ADDED_TO_MS = "added_to_ms"
    ADDED_TO_MF = "added_to_mf"
    NONE = "none"


class RestoreOutcome(BaseModel):
    classification: ClassificationKind
    lost: LostVarSet = frozenset()
    healed: frozenset[str] = frozenset()
    memory_update: MemoryUpdate = MemoryUpdate.NONE
