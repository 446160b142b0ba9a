"""
Grid oracle - exhaustive search over the simplex at a fixed resolution.

Used as ground truth for the SDP path and to tell infeasible problems apart
from solver failures.
"""

import logging
from typing import Optional

import numpy as np

from ..core.config import ORACLE_RESOLUTION
from ..core.errors import InfeasibleError, InvalidArgumentError
from ..core.types import JointRatios
from .problem import RatioProblem, RatioSolution, conditional_difference

logger = logging.getLogger(__name__)

# Slack on marginal bands so grid points on a band edge count as inside.
_EDGE = 1e-12


def default_c_tolerance(problem: RatioProblem) -> float:
    return 1e-3 if problem.pinned_c else 1e-9


def grid_oracle(
    problem: RatioProblem,
    resolution: int = ORACLE_RESOLUTION,
    c_tolerance: Optional[float] = None,
) -> RatioSolution:
    """Minimize the ratio objective over all grid points with spacing 1/resolution.

    Ties keep the lexicographically first point in (w11, w10, w01) order.

    Args:
        problem: Ratio problem.
        resolution: Grid resolution (at least 10).
        c_tolerance: Slack on the correlation range. Defaults to 1e-3 when
            alpha == beta (a grid rarely hits c exactly) and 1e-9 otherwise.

    Raises:
        InfeasibleError: If no grid point is feasible.
    """
    if resolution < 10:
        raise InvalidArgumentError(f"resolution must be at least 10, got {resolution}")
    tol = default_c_tolerance(problem) if c_tolerance is None else c_tolerance
    w = problem.current.as_array()
    r = int(resolution)

    best_value = np.inf
    best_point = None
    for i in range(r + 1):
        rest = r - i
        j, k = np.meshgrid(np.arange(rest + 1), np.arange(rest + 1), indexing="ij")
        keep = (j + k) <= rest
        j, k = j[keep], k[keep]
        x = np.column_stack([np.full(j.shape, i), j, k, rest - j - k]) / r

        c = conditional_difference(x)
        py = x[:, 0] + x[:, 1]
        pz = x[:, 0] + x[:, 2]
        feasible = (
            np.isfinite(c)
            & (c >= problem.alpha - tol)
            & (c <= problem.beta + tol)
            & (np.abs(py - problem.py_train) <= problem.gamma_y + _EDGE)
            & (np.abs(pz - problem.pz_train) <= problem.gamma_z + _EDGE)
        )
        if not feasible.any():
            continue
        values = ((x[feasible] - w) ** 2).sum(axis=1)
        pos = int(np.argmin(values))
        if values[pos] < best_value:
            best_value = float(values[pos])
            best_point = x[feasible][pos]

    if best_point is None:
        raise InfeasibleError(
            f"no grid point at resolution {r} has c in [{problem.alpha}, {problem.beta}] "
            f"within the marginal bands"
        )

    logger.debug(f"Grid oracle (resolution {r}) optimum {best_value:.6g} at {best_point}")
    return RatioSolution(
        ratios=JointRatios.from_array(best_point),
        objective=best_value,
        method="grid",
        feasibility_residuals=problem.residuals(best_point),
    )
