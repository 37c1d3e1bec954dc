"""
Shared CSV reading and writing.

Cells are read as strings so every parse error can be reported with its
1-based data row and column name; numbers are written with 17 significant
digits so 64-bit values survive a save/load cycle unchanged.
"""

from io import StringIO
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ...domain import DataFormatError
from .atomic import atomic_write_text

FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    return FLOAT_FORMAT % value


def read_table(
    path: str | Path,
    expected_header: Optional[Sequence[str]] = None,
    skiprows: int = 0,
) -> pd.DataFrame:
    """
    Read a CSV file as a frame of strings.

    Args:
        path: CSV file
        expected_header: Exact header required, when given
        skiprows: Leading lines to skip before the header

    Returns:
        DataFrame with string cells
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError("file not found", path=str(path))
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skiprows=skiprows,
            encoding="utf-8",
            skipinitialspace=False,
        )
    except pd.errors.EmptyDataError as exc:
        raise DataFormatError("file is empty", path=str(path)) from exc
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise DataFormatError(f"malformed CSV ({exc})", path=str(path)) from exc

    header = [str(name) for name in frame.columns]
    if any(name.startswith("Unnamed:") or name == "" for name in header):
        raise DataFormatError("malformed header: empty column name", path=str(path), row=0)
    if expected_header is not None and header != list(expected_header):
        raise DataFormatError(
            f"malformed header: expected {','.join(expected_header)!r}, got {','.join(header)!r}",
            path=str(path),
            row=0,
        )
    return frame


def numeric_block(
    frame: pd.DataFrame, columns: Sequence[str], path: str | Path
) -> np.ndarray:
    """
    Parse ``columns`` of a string frame into a finite float64 matrix.

    Empty, non-numeric and non-finite cells raise ``DataFormatError`` naming
    the first offending row and column.
    """
    block = frame.loc[:, list(columns)]
    try:
        values = block.to_numpy(dtype=np.float64)
    except ValueError:
        values = None
    if values is not None and np.all(np.isfinite(values)):
        return np.ascontiguousarray(values)

    for row_index, row in enumerate(block.itertuples(index=False), start=1):
        for column, cell in zip(columns, row):
            try:
                number = float(cell)
            except (TypeError, ValueError):
                raise DataFormatError(
                    f"non-numeric value {cell!r}", path=str(path), row=row_index, column=column
                ) from None
            if not np.isfinite(number):
                raise DataFormatError(
                    f"non-finite value {cell!r}", path=str(path), row=row_index, column=column
                )
    raise DataFormatError("could not parse numeric block", path=str(path))


def frame_to_csv_text(frame: pd.DataFrame, preamble: Optional[str] = None) -> str:
    """Render a frame as UTF-8 CSV text with LF endings and 17-digit floats."""
    buffer = StringIO()
    if preamble is not None:
        buffer.write(preamble.rstrip("\n") + "\n")
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def write_table(
    frame: pd.DataFrame, path: str | Path, preamble: Optional[str] = None
) -> None:
    """Write a frame atomically (see ``frame_to_csv_text``)."""
    atomic_write_text(path, frame_to_csv_text(frame, preamble))
