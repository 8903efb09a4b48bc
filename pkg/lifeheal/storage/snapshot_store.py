import logging
from pathlib import Path

from pydantic import ValidationError

from lifeheal.exceptions import SnapshotMismatchError, StorageError
from lifeheal.models.snapshot import Snapshot
from lifeheal.services.snapshot_services import snapshot_text

logger = logging.getLogger("lifeheal.storage.snapshot_store")


class SnapshotStore:
    """
    Holds the snapshot of the event currently in flight.

    A snapshot written at save time is consumed by the matching restore and
    then discarded. With a directory configured, the snapshot travels through
    a file `<component>-<event>.json`; otherwise it stays in memory.
    """

    def __init__(self, directory: Path | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._pending: dict[tuple[str, int], Snapshot] = {}

    def _path(self, component: str, event: int) -> Path:
        return self.directory / f"{component}-{event}.json"

    def put(self, snapshot: Snapshot) -> int:
        """
        Persist a snapshot.

        Returns:
            int: Serialized size of the snapshot in bytes.
        """
        data = snapshot_text(snapshot).encode("utf-8")
        key = (snapshot.component, snapshot.event)
        if self.directory is None:
            self._pending[key] = snapshot
            return len(data)
        path = self._path(*key)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as e:
            logger.error(f"Error while writing snapshot '{path}': {e}")
            raise StorageError(f"{path}: cannot write snapshot ({e.strerror or e})") from e
        logger.debug(f"Snapshot of {snapshot.component} for event {snapshot.event} written to '{path}'.")
        return len(data)

    def take(self, component: str, event: int) -> Snapshot:
        """
        Load and discard the snapshot saved for an event.

        Raises:
            SnapshotMismatchError: If no snapshot was saved for this component and event.
            StorageError: If the snapshot file cannot be read or deleted.
        """
        key = (component, event)
        if self.directory is None:
            if key not in self._pending:
                raise SnapshotMismatchError(component, f"no snapshot saved for event {event}")
            return self._pending.pop(key)
        path = self._path(component, event)
        try:
            snapshot = Snapshot.model_validate_json(path.read_bytes())
        except FileNotFoundError as e:
            raise SnapshotMismatchError(component, f"no snapshot saved for event {event}") from e
        except ValidationError as e:
            raise SnapshotMismatchError(component, f"snapshot file '{path}' is malformed") from e
        except OSError as e:
            logger.error(f"Error while reading snapshot '{path}': {e}")
            raise StorageError(f"{path}: cannot read snapshot ({e.strerror or e})") from e
        try:
            path.unlink()
        except OSError as e:
            logger.error(f"Error while deleting snapshot '{path}': {e}")
            raise StorageError(f"{path}: cannot delete snapshot ({e.strerror or e})") from e
        return snapshot
