from pydantic import BaseModel, Field

from lifeheal.models.abstraction import AbstractState
from lifeheal.models.healer import ClassificationKind, MemoryUpdate, SaveActionKind
from lifeheal.models.lifecycle import EventKind


class EventRecord(BaseModel):
    """
    Outcome of one scripted event.

    Attributes:
        event (int): Sequence index of the event within the run.
        component (str): Component the event targeted.
        kind (EventKind): Event kind, kept for reporting only.
        abstract_state (AbstractState | None): State key at save time (healer runs only).
        classification (ClassificationKind | None): New, safe or unsafe (healer runs only).
        action (SaveActionKind | None): What the healer saved (healer runs only).
        bytes_serialized (int): Size of the snapshot the healer serialized.
        lost (list[str]): Variables found lost; by snapshot diff with the healer,
            by full pre/post comparison without it.
        healed (list[str]): Variables the healer reassigned.
        memory_update (MemoryUpdate | None): How the event changed the memory.
        unhealed (list[str]): Variables still differing from the pre-event state.
        oracle_lost (list[str] | None): Ground truth, when oracle checking is on.
        missed (list[str] | None): Ground-truth losses neither detected nor healed.
    """

    event: int
    component: str
    kind: EventKind
    abstract_state: AbstractState | None = None
    classification: ClassificationKind | None = None
    action: SaveActionKind | None = None
    bytes_serialized: int = 0
    lost: list[str] = Field(default_factory=list)
    healed: list[str] = Field(default_factory=list)
    memory_update: MemoryUpdate | None = None
    unhealed: list[str] = Field(default_factory=list)
    oracle_lost: list[str] | None = None
    missed: list[str] | None = None


class ReportTotals(BaseModel):
    events: int = 0
    full_snapshots: int = 0
    selective_saves: int = 0
    skips: int = 0
    losses_detected: int = 0
    losses_healed: int = 0
    losses_missed: int | None = None
    unhealed_losses: int = 0
    bytes_serialized: int = 0


class Report(BaseModel):
    scenario: str = ""
    healer: bool = True
    oracle_check: bool = False
    events: list[EventRecord] = Field(default_factory=list)
    totals: ReportTotals = Field(default_factory=ReportTotals)
