"""
Minimum distribution change - split each class by a feature median and pick the
per-half masses whose resample stays closest (in transport cost) to the original.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core.config import WASSERSTEIN_SUBSAMPLE
from ..core.errors import InvalidArgumentError, UnsplittableClassError
from ..core.types import CELLS, JointRatios, SampleWeights, TabularDataset
from ..data.ratios import weighted_resample
from .transport import wasserstein_cost

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SplitWeights:
    """Target masses per (y, z, t), where t marks the upper half of a class.

    ``masses[k, t]`` is the mass for class CELLS[k] and half t; the two halves
    of a class sum to the class target.
    """
    masses: np.ndarray
    feature_index: int
    thresholds: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "masses": self.masses.tolist(),
            "feature_index": self.feature_index,
            "thresholds": list(self.thresholds),
        }


@dataclass(frozen=True)
class SplitCandidate:
    partials: tuple[float, ...]
    cost: float


def split_classes(data: TabularDataset, feature_index: int = 0) -> tuple[np.ndarray, tuple[float, ...]]:
    """Median split of every (y, z) class on one feature.

    Rows are ordered by the feature (stable); the lower ceil(k / 2) rows of a
    class get t = 0, so the middle row of an odd class lands in t = 0.

    Returns:
        Tuple of (t per row, per-class median thresholds in CELLS order).

    Raises:
        UnsplittableClassError: If a class has fewer than two rows.
    """
    if not 0 <= feature_index < data.p:
        raise InvalidArgumentError(f"feature_index {feature_index} out of range for {data.p} features")
    cells = data.cells()
    values = data.features[:, feature_index]
    halves = np.zeros(data.n, dtype=np.int64)
    thresholds = []
    for k, (y, z) in enumerate(CELLS):
        rows = np.flatnonzero(cells == k)
        if rows.size < 2:
            raise UnsplittableClassError(f"class (y={y}, z={z}) has {rows.size} rows; need at least 2")
        ordered = rows[np.argsort(values[rows], kind="stable")]
        halves[ordered[(rows.size + 1) // 2:]] = 1
        thresholds.append(float(np.median(values[rows])))
    return halves, tuple(thresholds)


def candidate_weights(
    data: TabularDataset,
    halves: np.ndarray,
    current: JointRatios,
    target: JointRatios,
    partials: tuple[float, ...],
) -> np.ndarray:
    """Per-row weights w'_{y,z,t} / (w_{y,z} * 0.5) for one choice of partials."""
    cells = data.cells()
    now = current.as_array()
    goal = target.as_array()
    weights = np.zeros(data.n)
    for k in range(4):
        if goal[k] == 0:
            continue
        in_class = cells == k
        lower = goal[k] * partials[k]
        upper = goal[k] * (1.0 - partials[k])
        weights[in_class & (halves == 0)] = lower / (now[k] * 0.5)
        weights[in_class & (halves == 1)] = upper / (now[k] * 0.5)
    return weights


def evaluate_candidates(
    train: TabularDataset,
    current: JointRatios,
    target: JointRatios,
    grid_m: int = 10,
    feature_index: int = 0,
    subsample: int = WASSERSTEIN_SUBSAMPLE,
    seed: int = 0,
    workers: int = 1,
) -> list[SplitCandidate]:
    """Transport cost of every partial-split candidate, in enumeration order."""
    if grid_m < 2:
        raise InvalidArgumentError(f"grid_m must be at least 2, got {grid_m}")
    halves, _ = split_classes(train, feature_index)
    partials = [k / grid_m for k in range(grid_m + 1)]
    strata = train.cells() * 2 + halves
    grid = list(itertools.product(partials, repeat=4))

    def score(choice: tuple[float, ...]) -> SplitCandidate:
        weights = candidate_weights(train, halves, current, target, choice)
        resampled = weighted_resample(train, weights, size=train.n, seed=seed, stratify=strata)
        return SplitCandidate(choice, wasserstein_cost(resampled, train, subsample=subsample, seed=seed))

    logger.info(f"Evaluating {len(grid)} split candidates (grid_m={grid_m}, workers={workers})")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(score, grid))
    return [score(choice) for choice in grid]


def min_dist_change(
    train: TabularDataset,
    current: JointRatios,
    target: JointRatios,
    grid_m: int = 10,
    feature_index: int = 0,
    subsample: int = WASSERSTEIN_SUBSAMPLE,
    seed: int = 0,
    workers: int = 1,
) -> SampleWeights:
    """Weights for ``target`` ratios that minimize the change to the data distribution.

    Every class is split at the median of ``feature_index``; all combinations
    of per-class partials {0, 1/m, ..., 1} are resampled with a shared seed and
    scored by transport cost to ``train``. The first minimal candidate wins.

    Raises:
        UnsplittableClassError: If a class has fewer than two rows.
    """
    candidates = evaluate_candidates(
        train, current, target, grid_m, feature_index, subsample, seed, workers
    )
    best = min(range(len(candidates)), key=lambda i: (candidates[i].cost, i))
    chosen = candidates[best]

    halves, thresholds = split_classes(train, feature_index)
    goal = target.as_array()
    partials = np.array(chosen.partials)
    split = SplitWeights(
        masses=np.column_stack([goal * partials, goal * (1.0 - partials)]),
        feature_index=feature_index,
        thresholds=thresholds,
    )
    logger.info(f"Chose partials {chosen.partials} with transport cost {chosen.cost:.4f}")
    return SampleWeights(
        candidate_weights(train, halves, current, target, chosen.partials),
        meta={"split": split.to_dict(), "cost": chosen.cost, "halves": halves},
    )
