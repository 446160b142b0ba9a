"""
Transport - empirical Wasserstein cost between two datasets.

Both datasets are subsampled to the same size and matched with a minimum-cost
assignment under squared Euclidean distance over (features, y, z).
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..core.config import WASSERSTEIN_SUBSAMPLE
from ..core.errors import EmptyDatasetError, WidthMismatchError
from ..core.types import TabularDataset


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """Optimal matching between two equal-size subsamples.

    ``source_rows[i]`` is matched to ``target_rows[i]``; ``total`` is the
    summed squared distance and ``cost`` its mean per point.
    """
    source_rows: np.ndarray
    target_rows: np.ndarray
    total: float
    cost: float

    @property
    def size(self) -> int:
        return int(self.source_rows.shape[0])


def transport_plan(
    a: TabularDataset,
    b: TabularDataset,
    subsample: int = WASSERSTEIN_SUBSAMPLE,
    seed: int = 0,
) -> TransportPlan:
    """Match subsamples of ``a`` and ``b`` at minimum squared-Euclidean cost.

    Both subsamples are drawn from generators seeded identically, so two
    datasets of equal size are subsampled at the same row positions.
    """
    if a.n == 0 or b.n == 0:
        raise EmptyDatasetError("transport needs two non-empty datasets")
    if a.p != b.p:
        raise WidthMismatchError(f"feature widths differ: {a.p} vs {b.p}")

    size = min(int(subsample), a.n, b.n)
    rows_a = np.random.default_rng(seed).choice(a.n, size=size, replace=False)
    rows_b = np.random.default_rng(seed).choice(b.n, size=size, replace=False)

    costs = cdist(a.points()[rows_a], b.points()[rows_b], metric="sqeuclidean")
    left, right = linear_sum_assignment(costs)
    total = float(costs[left, right].sum())
    return TransportPlan(
        source_rows=rows_a[left],
        target_rows=rows_b[right],
        total=total,
        cost=total / size,
    )


def wasserstein_cost(
    a: TabularDataset,
    b: TabularDataset,
    subsample: int = WASSERSTEIN_SUBSAMPLE,
    seed: int = 0,
) -> float:
    """Mean per-point squared cost of the optimal matching."""
    return transport_plan(a, b, subsample=subsample, seed=seed).cost
