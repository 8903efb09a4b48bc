from enum import Enum
from typing import Any

from pydantic import BaseModel, Field

from lifeheal.models.appmodel import ValueType

# Names of variables whose recreated value differs from the snapshot.
LostVarSet = frozenset[str]


class SnapshotScope(str, Enum):
    FULL = "full"
    SELECTIVE = "selective"


class EncodedValue(BaseModel):
    """
    A bundle entry. Primitive payloads are stored natively; object payloads
    are canonical JSON text (sorted keys, no whitespace).
    """

    tag: ValueType
    value: Any = None


class Snapshot(BaseModel):
    """
    A bundle-style flat map from variable name to encoded value.

    Attributes:
        component (str): Name of the component the values were read from.
        event (int): Sequence index of the stop-start event that produced it.
        scope (SnapshotScope): Full (every tracked variable) or selective.
        entries (dict[str, EncodedValue]): Encoded values keyed by variable name.
    """

    component: str
    event: int = 0
    scope: SnapshotScope = SnapshotScope.SELECTIVE
    entries: dict[str, EncodedValue] = Field(default_factory=dict)

    def names(self) -> frozenset[str]:
        return frozenset(self.entries)

    def extended(self, entries: dict[str, EncodedValue]) -> "Snapshot":
        merged = dict(self.entries)
        merged.update(entries)
        return self.model_copy(update={"entries": merged})
