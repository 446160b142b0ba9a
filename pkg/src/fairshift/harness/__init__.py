"""
Harness module - experiment configs, runner, sweeps, diagnostics, and reports.
"""

from .config import (
    DatasetSpec,
    ExperimentConfig,
    Pipeline,
    ShiftSpec,
    apply_overrides,
    load_config,
    parse_pipeline,
)
from .diagnostics import AlignmentRow, TradeoffPoint, alignment_table, tradeoff_curve
from .report import CSV_COLUMNS, records_frame, write_report
from .runner import CellResult, RunRecord, build_seed_data, cell_seed, run_experiment
from .sweeps import run_c_sweep, run_misspecification, run_range_sweep

__all__ = [
    "AlignmentRow",
    "CSV_COLUMNS",
    "CellResult",
    "DatasetSpec",
    "ExperimentConfig",
    "Pipeline",
    "RunRecord",
    "ShiftSpec",
    "TradeoffPoint",
    "alignment_table",
    "apply_overrides",
    "build_seed_data",
    "cell_seed",
    "load_config",
    "parse_pipeline",
    "records_frame",
    "run_c_sweep",
    "run_experiment",
    "run_misspecification",
    "run_range_sweep",
    "tradeoff_curve",
    "write_report",
]
