"""Atomic file output: write to a sibling temp file, then rename over the target."""

import os
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterator

from ...domain import InvalidInputError


def ensure_writable(path: str | Path, force: bool) -> Path:
    """
    Check that ``path`` may be written.

    Args:
        path: Target file
        force: Allow replacing an existing file

    Returns:
        The target as a Path
    """
    target = Path(path)
    if target.exists() and not force:
        raise InvalidInputError(f"{target} already exists (use --force to overwrite)")
    if target.exists() and target.is_dir():
        raise InvalidInputError(f"{target} is a directory")
    return target


@contextmanager
def atomic_open(path: str | Path, mode: str = "w") -> Iterator[IO]:
    """
    Open a temp file next to ``path`` and move it into place on success.

    On error the temp file is removed and ``path`` is left untouched.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_name(f".{target.name}.tmp.{os.getpid()}")
    newline = None if "b" in mode else ""
    encoding = None if "b" in mode else "utf-8"
    try:
        with open(tmp, mode, encoding=encoding, newline=newline) as handle:
            yield handle
        os.replace(tmp, target)
    finally:
        if tmp.exists():
            tmp.unlink()


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write ``text`` (UTF-8, LF endings as given) atomically."""
    with atomic_open(path, "w") as handle:
        handle.write(text)
