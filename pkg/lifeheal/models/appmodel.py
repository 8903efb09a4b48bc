import copy
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator


class ValueType(str, Enum):
    INT = "int"
    BOOL = "bool"
    FLOAT = "float"
    TEXT = "text"
    OBJECT = "object"


class VariableKind(str, Enum):
    MEMBER = "member"
    VIEW = "view"


def is_object_tree(value: Any, _seen: frozenset[int] = frozenset()) -> bool:
    """
    Check that a value is a finite, acyclic tree of named fields whose leaves
    are ints, bools, floats or strings.
    """
    if not isinstance(value, dict) or id(value) in _seen:
        return False
    seen = _seen | {id(value)}
    for key, field in value.items():
        if not isinstance(key, str):
            return False
        if isinstance(field, dict):
            if not is_object_tree(field, seen):
                return False
        elif not isinstance(field, (bool, int, float, str)):
            return False
    return True


def fits_type(value_type: ValueType, value: Any) -> bool:
    """Return True when `value` is a well-typed value of `value_type`."""
    if value_type is ValueType.BOOL:
        return isinstance(value, bool)
    if value_type is ValueType.INT:
        return isinstance(value, int) and not isinstance(value, bool)
    if value_type is ValueType.FLOAT:
        return isinstance(value, float)
    if value_type is ValueType.TEXT:
        return isinstance(value, str)
    return value is None or is_object_tree(value)


def coerce_value(value_type: ValueType, value: Any) -> Any:
    # JSON writes 3.0 as 3 in some tools; accept integral literals for floats.
    if value_type is ValueType.FLOAT and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


class VariableSpec(BaseModel):
    """
    Declaration of one tracked variable of a simulated component.

    Attributes:
        name (str): Identifier, unique within its component.
        kind (VariableKind): Member variable or view.
        type (ValueType): Type of the values the variable holds.
        initial (Any): Initial value; None stands for the type default.
    """

    name: str = Field(min_length=1)
    kind: VariableKind = VariableKind.MEMBER
    type: ValueType
    initial: Any = None

    @field_validator("name")
    @classmethod
    def name_is_identifier(cls, name: str) -> str:
        if not name.isidentifier():
            raise ValueError(f"variable name '{name}' is not an identifier")
        return name

    @model_validator(mode="after")
    def initial_is_well_typed(self) -> "VariableSpec":
        if self.initial is not None:
            self.initial = coerce_value(self.type, self.initial)
            if not fits_type(self.type, self.initial):
                raise ValueError(f"initial value of '{self.name}' is not a valid {self.type.value}")
        return self


class VariableSlot(BaseModel):
    spec: VariableSpec
    value: Any = None


class ComponentState(BaseModel):
    """
    A simulated activity: an ordered list of tracked variables and their
    current values. Members come first, then views, each in declaration order.
    """

    component_name: str
    vars: list[VariableSlot] = Field(default_factory=list)

    def names(self) -> list[str]:
        return [slot.spec.name for slot in self.vars]

    def slot(self, name: str) -> VariableSlot | None:
        for slot in self.vars:
            if slot.spec.name == name:
                return slot
        return None

    def value_of(self, name: str) -> Any:
        slot = self.slot(name)
        if slot is None:
            raise KeyError(name)
        return slot.value

    def members(self) -> list[VariableSlot]:
        return [slot for slot in self.vars if slot.spec.kind is VariableKind.MEMBER]

    def views(self) -> list[VariableSlot]:
        return [slot for slot in self.vars if slot.spec.kind is VariableKind.VIEW]

    def clone(self) -> "ComponentState":
        return self.model_copy(deep=True)

    def with_values(self, updates: dict[str, Any]) -> "ComponentState":
        """Return a copy with the given variables reassigned; unknown names raise KeyError."""
        state = self.clone()
        for name, value in updates.items():
            slot = state.slot(name)
            if slot is None:
                raise KeyError(name)
            slot.value = copy.deepcopy(value)
        return state


class BehaviorKind(str, Enum):
    CORRECT = "correct"
    MISSING = "missing"
    PARTIAL = "partial"
    STALE = "stale"


class HandlerBehavior(BaseModel):
    """
    One side (save or restore) of an app-author callback.

    Attributes:
        kind (BehaviorKind): Which fault model the callback follows.
        names (list[str]): Member variables handled by a Partial callback.
        stale_values (dict[str, Any]): Variables a Stale callback pins, with the
            outdated values it assigns on restore.
    """

    kind: BehaviorKind = BehaviorKind.CORRECT
    names: list[str] = Field(default_factory=list)
    stale_values: dict[str, Any] = Field(default_factory=dict)

    @property
    def targets(self) -> list[str]:
        if self.kind is BehaviorKind.PARTIAL:
            return list(self.names)
        if self.kind is BehaviorKind.STALE:
            return list(self.stale_values)
        return []


class HandlerModel(BaseModel):
    save: HandlerBehavior = Field(default_factory=HandlerBehavior)
    restore: HandlerBehavior = Field(default_factory=HandlerBehavior)
