"""
Shifted test sets - resample within classes to reach a target correlation.
"""

import logging
from typing import Optional

from ..core.types import TabularDataset
from ..data.ratios import class_weights, joint_ratios, weighted_resample
from ..optim.problem import RatioProblem
from ..optim.sdp import optimize_ratios
from ..stats.estimator import ShiftRange

logger = logging.getLogger(__name__)


def make_test_resampled(
    test: TabularDataset,
    target_c: float,
    seed: int = 0,
    size: Optional[int] = None,
) -> TabularDataset:
    """Resample ``test`` so c equals ``target_c`` with both marginals fixed.

    Raises:
        InfeasibleError: If ``target_c`` cannot be reached with fixed marginals.
    """
    problem = RatioProblem(joint_ratios(test), ShiftRange.given(target_c), gamma_y=0.0, gamma_z=0.0)
    solution = optimize_ratios(problem)
    weights = class_weights(test, solution.ratios)
    shifted = weighted_resample(test, weights, size=size, seed=seed, stratify=test.cells())
    logger.info(f"Resampled test set to c={solution.achieved_c:.4f} (target {target_c:.4f})")
    return shifted
