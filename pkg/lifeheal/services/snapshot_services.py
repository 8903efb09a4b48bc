import json
import struct
from typing import Any, Iterable

from lifeheal.exceptions import SnapshotMismatchError, TypedDecodeError, UnknownVariableError, ValueTypeMismatchError
from lifeheal.models.appmodel import ComponentState, ValueType, fits_type, is_object_tree
from lifeheal.models.snapshot import EncodedValue, LostVarSet, Snapshot, SnapshotScope


def canonical_json(value: Any) -> str:
    """Serialize with sorted keys and no insignificant whitespace."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def encode_value(value_type: ValueType, value: Any) -> EncodedValue:
    """
    Encode a variable value as a bundle entry.

    Args:
        value_type (ValueType): Declared type of the variable.
        value (Any): The current value.

    Returns:
        EncodedValue: Native payload for primitives, canonical JSON text for objects.
    """
    if value_type is ValueType.OBJECT:
        return EncodedValue(tag=value_type, value=canonical_json(value))
    return EncodedValue(tag=value_type, value=value)


def decode_value(name: str, value_type: ValueType, encoded: EncodedValue) -> Any:
    """
    Decode a bundle entry into a value of the target variable's type.

    Raises:
        TypedDecodeError: If the entry's tag or payload does not fit `value_type`.
    """
    if encoded.tag is not value_type:
        raise TypedDecodeError(name, f"entry tagged {encoded.tag.value}, variable is {value_type.value}")
    if value_type is ValueType.OBJECT:
        if not isinstance(encoded.value, str):
            raise TypedDecodeError(name, "object payload is not JSON text")
        try:
            decoded = json.loads(encoded.value)
        except json.JSONDecodeError as e:
            raise TypedDecodeError(name, f"object payload is not valid JSON ({e.msg})") from e
        if decoded is not None and not is_object_tree(decoded):
            raise TypedDecodeError(name, "object payload is not a tree of named fields")
        return decoded
    value = encoded.value
    if value_type is ValueType.FLOAT and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not fits_type(value_type, value):
        raise TypedDecodeError(name, f"payload {value!r} is not a valid {value_type.value}")
    return value


def _category(value: Any) -> ValueType:
    if value is None or isinstance(value, dict):
        return ValueType.OBJECT
    if isinstance(value, bool):
        return ValueType.BOOL
    if isinstance(value, int):
        return ValueType.INT
    if isinstance(value, float):
        return ValueType.FLOAT
    if isinstance(value, str):
        return ValueType.TEXT
    raise ValueTypeMismatchError(f"unsupported value {value!r}")


def _same_float(first: float, second: float) -> bool:
    return struct.pack("<d", first) == struct.pack("<d", second)


def _tree_equal(first: dict, second: dict) -> bool:
    if first.keys() != second.keys():
        return False
    for key, left in first.items():
        right = second[key]
        if isinstance(left, dict) and isinstance(right, dict):
            if not _tree_equal(left, right):
                return False
        elif isinstance(left, dict) or isinstance(right, dict):
            return False
        elif _category(left) is not _category(right):
            return False
        elif isinstance(left, float):
            if not _same_float(left, right):
                return False
        elif left != right:
            return False
    return True


def deep_equal(first: Any, second: Any) -> bool:
    """
    Structural equality of two values of the same value type.

    Primitives compare by value, floats bitwise. Objects compare field by
    field regardless of insertion order; None equals only None.

    Raises:
        ValueTypeMismatchError: If the two values belong to different value types.
    """
    category = _category(first)
    if category is not _category(second):
        raise ValueTypeMismatchError(f"cannot compare {first!r} with {second!r}")
    if category is ValueType.OBJECT:
        if first is None or second is None:
            return first is None and second is None
        return _tree_equal(first, second)
    if category is ValueType.FLOAT:
        return _same_float(first, second)
    return first == second


def take_snapshot(state: ComponentState, event: int = 0) -> Snapshot:
    """
    Record every tracked variable of a component.

    Args:
        state (ComponentState): The state to record.
        event (int): Sequence index of the event the snapshot belongs to.

    Returns:
        Snapshot: Full-scope snapshot with one entry per tracked variable.
    """
    entries = {slot.spec.name: encode_value(slot.spec.type, slot.value) for slot in state.vars}
    return Snapshot(component=state.component_name, event=event, scope=SnapshotScope.FULL, entries=entries)


def take_selective(state: ComponentState, names: Iterable[str], event: int = 0) -> Snapshot:
    """
    Record only the named variables of a component.

    Raises:
        UnknownVariableError: If a name is not a tracked variable of the component.
    """
    wanted = set(names)
    for name in sorted(wanted):
        if state.slot(name) is None:
            raise UnknownVariableError(name, state.component_name)
    entries = {
        slot.spec.name: encode_value(slot.spec.type, slot.value) for slot in state.vars if slot.spec.name in wanted
    }
    return Snapshot(component=state.component_name, event=event, scope=SnapshotScope.SELECTIVE, entries=entries)


def diff(snapshot: Snapshot, state: ComponentState) -> LostVarSet:
    """
    Find the snapshot variables whose current value differs from the recorded one.

    Args:
        snapshot (Snapshot): Values recorded before the component was destroyed.
        state (ComponentState): The recreated component.

    Returns:
        LostVarSet: Names whose decoded snapshot value is not deep-equal to the current value.
    """
    if snapshot.component != state.component_name:
        raise SnapshotMismatchError(state.component_name, f"snapshot was taken from '{snapshot.component}'")
    lost = set()
    for name, encoded in snapshot.entries.items():
        slot = state.slot(name)
        if slot is None:
            raise SnapshotMismatchError(state.component_name, f"no variable named '{name}'")
        if not deep_equal(decode_value(name, slot.spec.type, encoded), slot.value):
            lost.add(name)
    return frozenset(lost)


def snapshot_text(snapshot: Snapshot) -> str:
    return canonical_json(snapshot.model_dump(mode="json"))


def serialized_size(snapshot: Snapshot) -> int:
    """Number of bytes the snapshot occupies once written as a snapshot file."""
    return len(snapshot_text(snapshot).encode("utf-8"))
