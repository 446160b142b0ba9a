"""
Class ratios - joint (y, z) ratios, per-row class weights, and weighted resampling.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from ..core.errors import (
    DegenerateWeightsError,
    EmptyClassError,
    EmptyDatasetError,
    InvalidArgumentError,
    InvalidRatiosError,
)
from ..core.types import CELLS, JointRatios, SampleWeights, TabularDataset, as_weights

logger = logging.getLogger(__name__)


def joint_ratios(data: TabularDataset) -> JointRatios:
    """Empirical fraction of rows in each (y, z) class.

    Raises:
        EmptyDatasetError: If the dataset has no rows.
    """
    if data.n == 0:
        raise EmptyDatasetError("cannot compute ratios of an empty dataset")
    return JointRatios.from_counts(data.cell_counts())


def class_weights(data: TabularDataset, target: JointRatios) -> SampleWeights:
    """Per-row weights that move the dataset's class ratios to ``target``.

    A row in class (y, z) gets ``target[y,z] / current[y,z]``. Classes with
    zero target mass get weight 0; the weights sum to n.

    Raises:
        InvalidRatiosError: If ``target`` is not a JointRatios.
        EmptyClassError: If a class with positive target mass has no rows.
    """
    if not isinstance(target, JointRatios):
        raise InvalidRatiosError(f"target must be JointRatios, got {type(target).__name__}")
    if data.n == 0:
        raise EmptyDatasetError("cannot weight an empty dataset")

    counts = data.cell_counts()
    goal = target.as_array()
    per_class = np.zeros(4, dtype=float)
    for k, (y, z) in enumerate(CELLS):
        if goal[k] == 0:
            continue
        if counts[k] == 0:
            raise EmptyClassError(f"class (y={y}, z={z}) has target mass {goal[k]:.4f} but no rows")
        per_class[k] = goal[k] * data.n / counts[k]

    weights = per_class[data.cells()]
    logger.debug(f"Class weights {dict(zip(CELLS, per_class.round(4)))}")
    return SampleWeights(weights, meta={"per_class": per_class.tolist(), "target": target.to_dict()})


def _largest_remainder(mass: np.ndarray, size: int) -> np.ndarray:
    """Integer counts summing to ``size`` proportional to ``mass``."""
    expected = mass / mass.sum() * size
    counts = np.floor(expected).astype(np.int64)
    remainder = size - int(counts.sum())
    if remainder > 0:
        order = np.argsort(-(expected - counts), kind="stable")
        counts[order[:remainder]] += 1
    return counts


def weighted_resample(
    data: TabularDataset,
    weights: Union[SampleWeights, np.ndarray, Sequence[float]],
    size: Optional[int] = None,
    seed: int = 0,
    stratify: Optional[Sequence[int]] = None,
) -> TabularDataset:
    """Draw rows with replacement, with probability proportional to weight.

    Args:
        data: Source dataset.
        weights: Non-negative per-row weights.
        size: Rows to draw (defaults to n).
        seed: Seed for the generator; equal seeds give identical output.
        stratify: Optional stratum per row. When given, each stratum receives a
            largest-remainder share of ``size`` proportional to its weight mass
            and rows are drawn within strata, so realized class ratios match the
            weighted ones up to rounding.

    Raises:
        DegenerateWeightsError: If the weights sum to zero.
    """
    w = as_weights(weights, data.n)
    if w.shape[0] != data.n:
        raise InvalidArgumentError(f"{w.shape[0]} weights for {data.n} rows")
    total = float(w.sum())
    if not total > 0:
        raise DegenerateWeightsError("weights sum to zero")
    size = data.n if size is None else int(size)
    if size < 1:
        raise InvalidArgumentError(f"size must be positive, got {size}")

    rng = np.random.default_rng(seed)
    if stratify is None:
        indices = rng.choice(data.n, size=size, replace=True, p=w / total)
        return data.take(indices)

    strata = np.asarray(stratify)
    if strata.shape[0] != data.n:
        raise InvalidArgumentError(f"{strata.shape[0]} strata labels for {data.n} rows")
    keys = np.unique(strata)
    mass = np.array([w[strata == key].sum() for key in keys])
    counts = _largest_remainder(mass, size)

    parts = []
    for key, count in zip(keys, counts):
        if count == 0:
            continue
        rows = np.flatnonzero(strata == key)
        p = w[rows] / w[rows].sum()
        parts.append(rng.choice(rows, size=int(count), replace=True, p=p))
    indices = rng.permutation(np.concatenate(parts))
    return data.take(indices)
