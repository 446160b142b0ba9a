"""
Covariance-penalty trainer - logistic loss plus a squared decision-boundary covariance.

DP penalizes Cov(z, theta . x)^2; EO sums the same covariance within each
label. dp_and_eo mixes them as knob * DP + (1 - knob) * EO.
"""

import numpy as np

from .logistic import LogisticTrainer


def _covariance(scores: np.ndarray, z: np.ndarray, X: np.ndarray, w: np.ndarray) -> tuple[float, np.ndarray]:
    """Weighted Cov(z, scores) and its gradient with respect to theta."""
    total = w.sum()
    if total <= 0:
        return 0.0, np.zeros(X.shape[1])
    centered = z - (w @ z) / total
    cov = float(w @ (centered * scores) / total)
    grad = X.T @ (w * centered) / total
    return cov, grad


class CovariancePenaltyTrainer(LogisticTrainer):
    """Logistic regression with a covariance fairness penalty scaled by lambda."""

    def get_name(self) -> str:
        return "fc"

    def _dp_term(self, scores, X, z, w):
        cov, grad = _covariance(scores, z, X, w)
        return cov**2, 2.0 * cov * grad

    def _eo_term(self, scores, X, y, z, w):
        value, grad = 0.0, np.zeros(X.shape[1])
        for label in (0.0, 1.0):
            rows = y == label
            if rows.sum() < 2:
                continue
            cov, cov_grad = _covariance(scores[rows], z[rows], X[rows], w[rows])
            value += cov**2
            grad = grad + 2.0 * cov * cov_grad
        return value, grad

    def penalty(self, theta, X, y, z, w):
        cfg = self.config
        if cfg.lam == 0:
            return 0.0, np.zeros_like(theta)
        scores = X @ theta
        if cfg.fairness_target == "dp":
            value, grad = self._dp_term(scores, X, z, w)
        elif cfg.fairness_target == "eo":
            value, grad = self._eo_term(scores, X, y, z, w)
        else:
            dp_value, dp_grad = self._dp_term(scores, X, z, w)
            eo_value, eo_grad = self._eo_term(scores, X, y, z, w)
            value = cfg.knob * dp_value + (1 - cfg.knob) * eo_value
            grad = cfg.knob * dp_grad + (1 - cfg.knob) * eo_grad
        return cfg.lam * value, cfg.lam * grad
