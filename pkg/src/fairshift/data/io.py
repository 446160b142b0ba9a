"""
CSV I/O - load and save tabular datasets with pandas.
"""

import logging
import re
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from ..core.errors import ParseError
from ..core.types import TabularDataset

logger = logging.getLogger(__name__)

_LINE_RE = re.compile(r"line (\d+)")


def _parse_binary(column: pd.Series, name: str) -> np.ndarray:
    values = column.str.strip()
    bad = ~values.isin(["0", "1"])
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 1
        raise ParseError(
            f"column '{name}' row {row}: expected 0 or 1, got {column.iloc[row - 1]!r}", row=row
        )
    return values.astype(int).to_numpy()


def load_csv(
    path: Union[str, Path],
    label_column: str = "y",
    group_column: str = "z",
) -> TabularDataset:
    """Load a headered UTF-8 CSV into a TabularDataset.

    The label and group columns must hold literal 0/1. Every other column that
    parses as numbers becomes a feature, in file order; columns with no numeric
    values are skipped.

    Raises:
        ParseError: On a missing file or column, a ragged row, or a non-numeric
            value in an otherwise numeric column. Rows are numbered from 1
            after the header.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.ParserError as e:
        match = _LINE_RE.search(str(e))
        row = int(match.group(1)) - 1 if match else None
        raise ParseError(f"{path}: ragged row {row}: {e}", row=row) from e
    except (UnicodeDecodeError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"{path}: {e}") from e

    # Short rows come back padded with NaN even with keep_default_na=False
    short = frame.isna().any(axis=1).to_numpy()
    if short.any():
        row = int(np.flatnonzero(short)[0]) + 1
        raise ParseError(f"{path}: ragged row {row}: too few fields", row=row)

    for column in (label_column, group_column):
        if column not in frame.columns:
            raise ParseError(f"{path}: missing column '{column}'")

    labels = _parse_binary(frame[label_column], label_column)
    groups = _parse_binary(frame[group_column], group_column)

    names, columns = [], []
    for name in frame.columns:
        if name in (label_column, group_column):
            continue
        parsed = pd.to_numeric(frame[name].str.strip(), errors="coerce")
        bad = parsed.isna().to_numpy()
        if bad.all() and len(frame):
            logger.warning(f"Skipping non-numeric column '{name}'")
            continue
        if bad.any():
            row = int(np.flatnonzero(bad)[0]) + 1
            raise ParseError(
                f"{path}: column '{name}' row {row}: not a number: {frame[name].iloc[row - 1]!r}",
                row=row,
            )
        names.append(str(name))
        # astype(float) rounds correctly, so written values load back bit for bit
        columns.append(frame[name].str.strip().astype(float).to_numpy())

    features = np.column_stack(columns) if columns else np.zeros((len(frame), 0))
    logger.info(f"Loaded {len(frame)} rows x {len(names)} features from {path}")
    return TabularDataset(features, labels, groups, tuple(names))


def write_csv(
    data: TabularDataset,
    path: Union[str, Path],
    label_column: str = "y",
    group_column: str = "z",
) -> Path:
    """Write a dataset as CSV (features in order, then label, then group)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(data.features, columns=list(data.feature_names))
    frame[label_column] = data.labels
    frame[group_column] = data.groups
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.debug(f"Wrote {data.n} rows to {path}")
    return path
