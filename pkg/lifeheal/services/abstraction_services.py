import struct
from typing import Any

from lifeheal.models.abstraction import AbstractState
from lifeheal.models.appmodel import ComponentState, ValueType

_DEFAULTS: dict[ValueType, Any] = {
    ValueType.INT: 0,
    ValueType.BOOL: False,
    ValueType.FLOAT: 0.0,
    ValueType.TEXT: "",
    ValueType.OBJECT: None,
}

_ZERO_BITS = struct.pack("<d", 0.0)


def default_value(value_type: ValueType) -> Any:
    """
    Return the value a freshly created variable of the given type holds.

    Args:
        value_type (ValueType): The variable type.

    Returns:
        Any: 0, False, 0.0, "" or None (absent object).
    """
    return _DEFAULTS[value_type]


def is_default(value: Any, value_type: ValueType) -> bool:
    """
    Check whether a value is the default for its type.

    Floats compare bitwise against 0.0, so -0.0 counts as non-default. Any
    present object, even one without fields, is non-default.
    """
    if value_type is ValueType.FLOAT:
        return isinstance(value, float) and struct.pack("<d", value) == _ZERO_BITS
    if value_type is ValueType.OBJECT:
        return value is None
    if value_type is ValueType.BOOL:
        return value is False
    if value_type is ValueType.INT:
        return isinstance(value, int) and not isinstance(value, bool) and value == 0
    return value == ""


def abstract_state(state: ComponentState) -> AbstractState:
    """
    Compute the abstract state of a component.

    Args:
        state (ComponentState): The concrete state.

    Returns:
        AbstractState: The component name and a bitmask in variable order,
            '1' where the variable holds a non-default value.
    """
    bits = "".join("0" if is_default(slot.value, slot.spec.type) else "1" for slot in state.vars)
    return AbstractState(activity=state.component_name, bitmask=bits)


def abstract_equal(first: AbstractState, second: AbstractState) -> bool:
    return first.activity == second.activity and first.bitmask == second.bitmask
