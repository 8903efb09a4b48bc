import random

import pytest

from lifeheal.exceptions import (
    SnapshotMismatchError,
    StorageError,
    TypedDecodeError,
    UnknownVariableError,
    ValueTypeMismatchError,
)
from lifeheal.models.appmodel import ValueType
from lifeheal.models.lifecycle import NO_OP_HOOKS, StopStartEvent
from lifeheal.models.snapshot import EncodedValue, Snapshot, SnapshotScope
from lifeheal.services.lifecycle_services import dispatch_stop_start
from lifeheal.services.oracle_services import random_value
from lifeheal.services.snapshot_services import (
    canonical_json,
    decode_value,
    deep_equal,
    diff,
    encode_value,
    serialized_size,
    snapshot_text,
    take_selective,
    take_snapshot,
)
from lifeheal.storage.snapshot_store import SnapshotStore
from tests.conftest import NOTE_LOST


class TestDeepEqual:
    def test_objects_ignore_field_order(self):
        assert deep_equal({"a": 1, "b": {"c": "x"}}, {"b": {"c": "x"}, "a": 1})

    def test_floats_compare_bitwise(self):
        assert deep_equal(0.35, 0.35)
        assert not deep_equal(0.0, -0.0)

    def test_absent_object_equals_only_absent(self):
        assert deep_equal(None, None)
        assert not deep_equal(None, {})

    def test_leaf_type_difference_inside_tree(self):
        assert not deep_equal({"count": 1}, {"count": 1.0})
        assert not deep_equal({"done": True}, {"done": 1})

    def test_nested_difference(self):
        assert not deep_equal({"details": {"title": "a"}}, {"details": {"title": "b"}})

    def test_top_level_type_mismatch_raises(self):
        with pytest.raises(ValueTypeMismatchError):
            deep_equal(1, "1")


def test_canonical_json_is_compact_and_sorted():
    assert canonical_json({"b": 1, "a": {"d": True, "c": "é"}}) == '{"a":{"c":"é","d":true},"b":1}'


class TestEncoding:
    def test_object_payload_is_canonical_text(self):
        encoded = encode_value(ValueType.OBJECT, {"title": "x", "id": 7})
        assert encoded == EncodedValue(tag=ValueType.OBJECT, value='{"id":7,"title":"x"}')

    def test_tag_mismatch_is_a_decode_error(self):
        with pytest.raises(TypedDecodeError) as excinfo:
            decode_value("notePosition", ValueType.INT, EncodedValue(tag=ValueType.TEXT, value="3"))
        assert excinfo.value.name == "notePosition"

    def test_malformed_object_payload(self):
        with pytest.raises(TypedDecodeError):
            decode_value("note", ValueType.OBJECT, EncodedValue(tag=ValueType.OBJECT, value="{not json"))

    def test_float_payload_accepts_integral_number(self):
        assert decode_value("ratio", ValueType.FLOAT, EncodedValue(tag=ValueType.FLOAT, value=2)) == 2.0

    @pytest.mark.parametrize("seed", range(100))
    def test_values_survive_snapshot_text(self, seed):
        rng = random.Random(seed)
        value_type = list(ValueType)[seed % len(ValueType)]
        value = random_value(rng, value_type, default_ratio=0.1)
        snapshot = Snapshot(component="A", entries={"v": encode_value(value_type, value)})
        reloaded = Snapshot.model_validate_json(snapshot_text(snapshot))
        assert deep_equal(decode_value("v", value_type, reloaded.entries["v"]), value)


class TestTakeSnapshot:
    def test_full_snapshot_covers_every_variable(self, note_activity):
        snapshot = take_snapshot(note_activity, event=4)
        assert snapshot.scope is SnapshotScope.FULL
        assert snapshot.event == 4
        assert snapshot.names() == set(note_activity.names())

    def test_selective_snapshot_is_smaller(self, note_activity):
        full = take_snapshot(note_activity)
        selective = take_selective(note_activity, NOTE_LOST)
        assert selective.names() == NOTE_LOST
        assert serialized_size(selective) < serialized_size(full)

    def test_selective_rejects_unknown_names(self, note_activity):
        with pytest.raises(UnknownVariableError):
            take_selective(note_activity, ["ghost"])

    @pytest.mark.parametrize(
        "names",
        [set(), {"note"}, NOTE_LOST, {"notePosition", "favoriteStar", "editorScrollOffset"}],
    )
    def test_selective_entries_restrict_the_full_snapshot(self, note_activity, names):
        full = take_snapshot(note_activity)
        selective = take_selective(note_activity, names)
        assert selective.entries == {name: full.entries[name] for name in names}

    def test_selective_over_every_name_matches_full_entries(self, note_activity):
        full = take_snapshot(note_activity)
        assert take_selective(note_activity, note_activity.names()).entries == full.entries


class TestDiff:
    def test_unchanged_state_has_no_loss(self, note_activity):
        assert diff(take_snapshot(note_activity), note_activity) == frozenset()

    def test_finds_the_stale_variables(self, note_activity, note_handler):
        snapshot = take_snapshot(note_activity)
        after = dispatch_stop_start(note_activity, note_handler, NO_OP_HOOKS, StopStartEvent(sequence_index=1))
        assert diff(snapshot, after) == NOTE_LOST

    def test_only_snapshot_entries_are_compared(self, note_activity):
        snapshot = take_selective(note_activity, ["notePosition"])
        changed = note_activity.with_values({"noteTitleView": "other"})
        assert diff(snapshot, changed) == frozenset()

    def test_other_component_is_rejected(self, note_activity):
        with pytest.raises(SnapshotMismatchError):
            diff(Snapshot(component="SettingsActivity"), note_activity)


class TestSnapshotStore:
    def test_snapshot_file_is_consumed(self, tmp_path, note_activity):
        store = SnapshotStore(tmp_path)
        snapshot = take_snapshot(note_activity, event=2)
        size = store.put(snapshot)
        path = tmp_path / "NoteActivity-2.json"
        assert path.stat().st_size == size == serialized_size(snapshot)
        assert store.take("NoteActivity", 2) == snapshot
        assert not path.exists()
        with pytest.raises(SnapshotMismatchError):
            store.take("NoteActivity", 2)

    def test_unwritable_directory_is_a_storage_error(self, tmp_path, note_activity):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        with pytest.raises(StorageError, match="cannot write snapshot"):
            SnapshotStore(blocker).put(take_snapshot(note_activity, event=1))

    def test_in_memory_store(self, note_activity):
        store = SnapshotStore()
        snapshot = take_selective(note_activity, ["note"], event=1)
        store.put(snapshot)
        assert store.take("NoteActivity", 1) == snapshot
