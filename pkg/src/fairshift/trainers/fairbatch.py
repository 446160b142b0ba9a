"""
Adaptive batch trainer - per-class sampling probabilities nudged each epoch
toward smaller training-set disparity.

Each epoch draws n rows: a class is picked with its current probability and
a row within the class in proportion to its weight. After the epoch the
signed group gaps of the hard predictions decide which classes to
over-sample, and every probability moves multiplicatively by ``step``.
"""

import logging

import numpy as np

from ..core.types import CELLS, TabularDataset
from .base import Trainer, with_bias

logger = logging.getLogger(__name__)

_FLOOR = 1e-6

# Sign pattern over CELLS that lowers Pr(yhat=1|z=1) - Pr(yhat=1|z=0) when positive.
_DP_DIRECTION = np.array([-1.0, 1.0, 1.0, -1.0])


class FairBatchLiteTrainer(Trainer):
    """Logistic regression with adaptive per-class batch ratios."""

    def get_name(self) -> str:
        return "fb_lite"

    def setup(self, data: TabularDataset, weights: np.ndarray) -> None:
        self._cells = data.cells()
        mass = np.bincount(self._cells, weights=weights, minlength=4)
        self.probabilities = mass / mass.sum()
        self._present = mass > 0
        self._row_share = np.zeros(data.n)
        for k in range(4):
            rows = self._cells == k
            if mass[k] > 0:
                self._row_share[rows] = weights[rows] / mass[k]
        self.history = [self.probabilities.copy()]

    def batches(self, n, weights, rng):
        row_probs = self.probabilities[self._cells] * self._row_share
        drawn = rng.choice(n, size=n, replace=True, p=row_probs / row_probs.sum())
        size = self.config.batch_size
        for start in range(0, n, size):
            yield drawn[start:start + size]

    def _gaps(self, yhat: np.ndarray, y: np.ndarray, z: np.ndarray) -> dict[str, float]:
        def rate(mask):
            return float(yhat[mask].mean()) if mask.any() else 0.0

        return {
            "dp": rate(z == 1) - rate(z == 0),
            "tpr": rate((y == 1) & (z == 1)) - rate((y == 1) & (z == 0)),
            "fpr": rate((y == 0) & (z == 1)) - rate((y == 0) & (z == 0)),
        }

    def _direction(self, gaps: dict[str, float]) -> np.ndarray:
        dp_size = abs(gaps["dp"])
        eo_size = max(abs(gaps["tpr"]), abs(gaps["fpr"]))
        target = self.config.fairness_target
        if target == "dp_and_eo":
            knob = self.config.knob
            target = "dp" if knob * dp_size >= (1 - knob) * eo_size else "eo"

        if target == "dp":
            return np.sign(gaps["dp"]) * _DP_DIRECTION
        # Over-sample (1,0) when group 1 has the higher TPR; (0,1) when it has the higher FPR.
        tpr, fpr = np.sign(gaps["tpr"]), np.sign(gaps["fpr"])
        return np.array([-tpr, tpr, fpr, -fpr])

    def after_epoch(self, theta, data, weights, epoch):
        yhat = (with_bias(data.features) @ theta > 0).astype(np.int64)
        gaps = self._gaps(yhat, data.labels, data.groups)
        direction = self._direction(gaps)

        updated = self.probabilities * (1.0 + self.config.step * direction)
        updated = np.where(self._present, np.clip(updated, _FLOOR, 1.0), 0.0)
        self.probabilities = updated / updated.sum()
        self.history.append(self.probabilities.copy())
        if epoch % 50 == 0:
            logger.debug(
                f"fb_lite epoch {epoch}: gaps {gaps}, probabilities "
                f"{dict(zip(CELLS, self.probabilities.round(4)))}"
            )
