from enum import Enum
from typing import Callable

from pydantic import BaseModel, Field

from lifeheal.models.appmodel import ComponentState


class EventKind(str, Enum):
    ROTATION = "rotation"
    CONTEXT_SWITCH = "context_switch"
    PROCESS_KILL = "process_kill"


class StopStartEvent(BaseModel):
    """
    An event that destroys and recreates a component. The kind is reporting
    metadata only; every kind goes through the same save/recreate/restore path.
    """

    kind: EventKind = EventKind.ROTATION
    sequence_index: int = Field(ge=0)


def _ignore(state: ComponentState) -> None:
    return None


def _passthrough(state: ComponentState) -> ComponentState:
    return state


class HookPair(BaseModel):
    """
    Interception points around a stop-start event.

    Attributes:
        pre_destroy: Called with the live state before any save callback runs.
        post_recreate: Called with the restored state; its result replaces it.
    """

    pre_destroy: Callable[[ComponentState], None] = _ignore
    post_recreate: Callable[[ComponentState], ComponentState] = _passthrough


NO_OP_HOOKS = HookPair()
