import json
import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from lifeheal.exceptions import LifehealError, StorageError

# Logger setup for file read/write errors and information
logger = logging.getLogger("lifeheal.storage.documents")


def read_json(path: Path, error_cls: type[LifehealError]) -> Any:
    """
    Read and parse a UTF-8 JSON document.

    Args:
        path (Path): File to read.
        error_cls (type[LifehealError]): Error raised when the file is unreadable
            or not valid JSON; the message carries the line and column.

    Returns:
        Any: The parsed document.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Error while reading '{path}': {e}")
        raise error_cls(f"{path}: cannot read file ({e.strerror or e})") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise error_cls(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def dump_json(document: Any) -> str:
    """Pretty, key-sorted JSON text with a trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Path, document: Any) -> int:
    """
    Write a document in canonical pretty form, creating parent directories.

    Returns:
        int: Number of bytes written.

    Raises:
        StorageError: If the file or its parent directory cannot be written.
    """
    data = dump_json(document).encode("utf-8")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        logger.error(f"Error while writing '{path}': {e}")
        raise StorageError(f"{path}: cannot write file ({e.strerror or e})") from e
    logger.info(f"Wrote {len(data)} bytes to '{path}'.")
    return len(data)


def validation_message(error: ValidationError) -> str:
    """First pydantic validation problem as `location: message`."""
    problems = error.errors()
    if not problems:
        return str(error)
    first = problems[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "document"
    return f"{location}: {first.get('msg', 'invalid value')}"
