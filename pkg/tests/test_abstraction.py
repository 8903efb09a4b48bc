import pytest

from lifeheal.models.abstraction import AbstractState
from lifeheal.models.appmodel import ValueType, VariableKind, VariableSpec
from lifeheal.services.abstraction_services import abstract_equal, abstract_state, default_value, is_default
from lifeheal.services.appmodel_services import instantiate_component
from tests.conftest import NOTE_MASK


@pytest.mark.parametrize(
    "value_type, expected",
    [
        (ValueType.INT, 0),
        (ValueType.BOOL, False),
        (ValueType.FLOAT, 0.0),
        (ValueType.TEXT, ""),
        (ValueType.OBJECT, None),
    ],
)
def test_default_value(value_type, expected):
    assert default_value(value_type) == expected
    assert is_default(default_value(value_type), value_type)


class TestIsDefault:
    def test_negative_zero_is_not_default(self):
        assert not is_default(-0.0, ValueType.FLOAT)

    def test_empty_object_is_not_default(self):
        assert not is_default({}, ValueType.OBJECT)

    def test_false_is_default_but_zero_int_is_not_a_bool(self):
        assert is_default(False, ValueType.BOOL)
        assert not is_default(True, ValueType.BOOL)

    def test_whitespace_text_is_not_default(self):
        assert not is_default(" ", ValueType.TEXT)


class TestAbstractState:
    def test_note_activity_mask(self, note_activity):
        state = abstract_state(note_activity)
        assert state == AbstractState(activity="NoteActivity", bitmask=NOTE_MASK)
        assert str(state) == f"(NoteActivity, {NOTE_MASK})"

    def test_mask_follows_tracking_order(self):
        specs = [
            VariableSpec(name="label", kind=VariableKind.VIEW, type=ValueType.TEXT, initial="x"),
            VariableSpec(name="count", type=ValueType.INT),
            VariableSpec(name="ratio", type=ValueType.FLOAT, initial=-0.0),
        ]
        state = instantiate_component(specs, "MaskActivity")
        assert abstract_state(state).bitmask == "011"

    def test_no_variables_gives_empty_mask(self):
        assert abstract_state(instantiate_component([], "EmptyActivity")).bitmask == ""

    def test_values_with_same_defaultness_share_a_state(self, note_activity):
        moved = note_activity.with_values({"notePosition": 0, "noteTitleView": "Shopping"})
        assert abstract_equal(abstract_state(moved), abstract_state(note_activity))

    def test_clearing_a_view_changes_the_state(self, note_activity):
        cleared = note_activity.with_values({"favoriteStar": False})
        assert abstract_state(cleared).bitmask == "101111011"
        assert not abstract_equal(abstract_state(cleared), abstract_state(note_activity))

    def test_activity_name_is_part_of_the_key(self):
        first = AbstractState(activity="A", bitmask="1")
        second = AbstractState(activity="B", bitmask="1")
        assert not abstract_equal(first, second)
        assert len({first, second, AbstractState(activity="A", bitmask="1")}) == 2
