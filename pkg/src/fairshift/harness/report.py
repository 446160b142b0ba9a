"""
Reports - one CSV row per record plus a JSON document with full provenance.

The CSV omits wall time so identical configs give byte-identical files.
"""

import logging
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from ..core.config import get_output_dir
from ..utils.jsonio import dump_json
from .runner import RunRecord

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "pipeline",
    "sweep",
    "n_seeds",
    "n_failed",
    "c_train",
    "c_pre",
    "c_test",
    "accuracy_mean",
    "accuracy_std",
    "dp_mean",
    "dp_std",
    "eo_mean",
    "eo_std",
    "combined_mean",
    "combined_std",
]


def records_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
    """Records as a table with the CSV columns, in record order."""
    rows = []
    for record in records:
        row = {name: getattr(record, name, None) for name in CSV_COLUMNS}
        row["n_seeds"] = len(record.seeds)
        rows.append(row)
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_report(
    records: Sequence[RunRecord],
    output_dir: Union[str, Path, None] = None,
    stem: str = "report",
) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` and ``<stem>.json``.

    Returns:
        Tuple of (csv_path, json_path).
    """
    directory = get_output_dir(Path(output_dir) if output_dir is not None else None)
    csv_path = directory / f"{stem}.csv"
    json_path = directory / f"{stem}.json"
    records_frame(records).to_csv(csv_path, index=False, encoding="utf-8", lineterminator="\n")
    dump_json([r.to_dict() for r in records], json_path)
    logger.info(f"Wrote {len(records)} records to {csv_path} and {json_path}")
    return csv_path, json_path
