"""
Repair - closed-form projection onto the feasible ratio set.

With the marginals (py', pz') fixed, the ratios are determined by t = w11':
w10' = py' - t, w01' = pz' - t, w00' = 1 - py' - pz' + t, and
c = (t - py' pz') / (pz' (1 - pz')) is linear in t. For each marginal pair on
a grid inside the bands, the best t is the clipped minimizer of a 1-D
quadratic; the overall best pair wins.
"""

import logging

import numpy as np

from ..core.errors import ExtractionFailedError
from .problem import RatioProblem

logger = logging.getLogger(__name__)

REPAIR_GRID = 400


def _band(center: float, gamma: float, points: int, open_ends: bool) -> np.ndarray:
    low, high = max(0.0, center - gamma), min(1.0, center + gamma)
    values = np.unique(np.concatenate([np.linspace(low, high, points + 1), [center]]))
    if open_ends:
        values = values[(values > 0.0) & (values < 1.0)]
    return values


def repair(problem: RatioProblem, points: int = REPAIR_GRID) -> np.ndarray:
    """Feasible ratios (w11, w10, w01, w00) nearest to the training ratios.

    Raises:
        ExtractionFailedError: If no marginal pair admits a feasible t.
    """
    w11, w10, w01, w00 = problem.current.as_array()
    py_values = _band(problem.py_train, problem.gamma_y, points, open_ends=False)
    pz_values = _band(problem.pz_train, problem.gamma_z, points, open_ends=True)
    if pz_values.size == 0:
        raise ExtractionFailedError("no non-degenerate group marginal inside the band")

    py, pz = np.meshgrid(py_values, pz_values, indexing="ij")
    spread = pz * (1.0 - pz)
    low = np.maximum.reduce([np.zeros_like(py), py + pz - 1.0, py * pz + problem.alpha * spread])
    high = np.minimum.reduce([py, pz, py * pz + problem.beta * spread])
    feasible = low <= high + 1e-15

    if not feasible.any():
        raise ExtractionFailedError(
            f"no ratios with c in [{problem.alpha}, {problem.beta}] inside the marginal bands",
            residuals={"c_range": [problem.alpha, problem.beta]},
        )

    # argmin over t of the squared distance, a quadratic with unit curvature per term
    t_free = (w11 - (w10 - py) - (w01 - pz) + (w00 - 1.0 + py + pz)) / 4.0
    t = np.clip(t_free, low, np.maximum(low, high))
    x = np.stack([t, py - t, pz - t, 1.0 - py - pz + t], axis=-1)
    values = ((x - problem.current.as_array()) ** 2).sum(axis=-1)
    values = np.where(feasible, values, np.inf)

    flat = int(np.argmin(values))
    best = np.clip(x.reshape(-1, 4)[flat], 0.0, 1.0)
    best = best / best.sum()
    logger.debug(f"Repaired ratios {best.round(6)} (objective {values.flat[flat]:.6g})")
    return best
