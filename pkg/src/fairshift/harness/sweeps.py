"""
Sweeps - repeated experiments over test correlation, misspecified c, and range width.
"""

import logging
from typing import Sequence

from .config import ExperimentConfig
from .runner import RunRecord, run_experiment, with_shift

logger = logging.getLogger(__name__)

DEFAULT_FRACTIONS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7)
DEFAULT_SPECIFIED = (0.4, 0.5, 0.54, 0.6, 0.66, 0.7, 0.8, 1.0)
DEFAULT_WIDTHS = (10, 50, 100)


def run_c_sweep(
    config: ExperimentConfig, fractions: Sequence[float] = DEFAULT_FRACTIONS
) -> list[RunRecord]:
    """Test correlation set to each fraction of c_train, with the exact c known."""
    records = []
    for fraction in fractions:
        swept = with_shift(config, mode="target_fraction", fraction=fraction)
        records += run_experiment(swept, sweep=f"fraction={fraction:g}")
    return records


def run_misspecification(
    config: ExperimentConfig,
    true_fraction: float = 0.6,
    specified: Sequence[float] = DEFAULT_SPECIFIED,
) -> list[RunRecord]:
    """Test c fixed at true_fraction * c_train; pre-processing told specified * c_train."""
    records = []
    for fraction in specified:
        swept = with_shift(
            config,
            mode="given",
            fraction=true_fraction,
            alpha=fraction,
            beta=fraction,
            anchor="train",
        )
        records += run_experiment(swept, sweep=f"specified={fraction:g}")
    return records


def run_range_sweep(
    config: ExperimentConfig,
    widths: Sequence[float] = DEFAULT_WIDTHS,
    fraction: float = 0.5,
) -> list[RunRecord]:
    """Range [c_test - x/100, c_test + x/100] (clamped to [-1, 1]) for each width x."""
    records = []
    for width in widths:
        swept = with_shift(
            config,
            mode="given",
            fraction=fraction,
            alpha=-width / 100.0,
            beta=width / 100.0,
            anchor="test",
        )
        records += run_experiment(swept, sweep=f"width={width:g}")
    return records
