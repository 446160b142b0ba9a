"""
Pre-processing pipeline - train ratios, optimized target ratios, weights, resample.
"""

import logging
from typing import NamedTuple

import numpy as np

from ..core.config import DEFAULT_GAMMA, WASSERSTEIN_SUBSAMPLE
from ..core.errors import EmptyClassError
from ..core.types import CELLS, SampleWeights, TabularDataset
from ..data.ratios import class_weights, joint_ratios, weighted_resample
from ..optim.problem import RatioProblem, RatioSolution
from ..optim.sdp import optimize_ratios
from ..stats.estimator import ShiftRange
from .mindist import min_dist_change

logger = logging.getLogger(__name__)


class PreprocessResult(NamedTuple):
    """Resampled training data with the solution and weights that produced it."""
    data: TabularDataset
    solution: RatioSolution
    weights: SampleWeights


def preprocess(
    train: TabularDataset,
    shift_range: ShiftRange,
    gamma_y: float = DEFAULT_GAMMA,
    gamma_z: float = DEFAULT_GAMMA,
    seed: int = 0,
    use_min_dist: bool = False,
    grid_m: int = 10,
    feature_index: int = 0,
    subsample: int = WASSERSTEIN_SUBSAMPLE,
    workers: int = 1,
) -> PreprocessResult:
    """Resample ``train`` so its label/group correlation lands in ``shift_range``.

    Args:
        train: Training data; all four (y, z) classes must be present.
        shift_range: Target interval for the conditional difference c.
        gamma_y: Allowed drift of Pr(y=1).
        gamma_z: Allowed drift of Pr(z=1).
        seed: Resampling seed.
        use_min_dist: Spread each class's mass across feature-median halves
            to minimize transport cost to ``train``.

    Raises:
        EmptyClassError: If a class is missing from ``train``.
        InfeasibleError: If no ratios satisfy the range and bands.
    """
    counts = train.cell_counts()
    for k, (y, z) in enumerate(CELLS):
        if counts[k] == 0:
            raise EmptyClassError(f"class (y={y}, z={z}) has no training rows")

    current = joint_ratios(train)
    problem = RatioProblem(current, shift_range, gamma_y, gamma_z)
    solution = optimize_ratios(problem)

    if use_min_dist:
        weights = min_dist_change(
            train,
            current,
            solution.ratios,
            grid_m=grid_m,
            feature_index=feature_index,
            subsample=subsample,
            seed=seed,
            workers=workers,
        )
        strata = train.cells() * 2 + np.asarray(weights.meta["halves"])
    else:
        weights = class_weights(train, solution.ratios)
        strata = train.cells()

    resampled = weighted_resample(train, weights, size=train.n, seed=seed, stratify=strata)
    logger.info(
        f"Pre-processed {train.n} rows: c target [{shift_range.alpha:.4f}, {shift_range.beta:.4f}], "
        f"ratios {solution.ratios.as_array().round(4)} via {solution.method}"
    )
    return PreprocessResult(resampled, solution, weights)
