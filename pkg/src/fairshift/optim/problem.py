"""
Ratio problem - the class-ratio search and its feasibility residuals.

Find joint ratios w' closest (squared Euclidean) to the training ratios w,
with the conditional difference c(w') in [alpha, beta] and the label and
group marginals within gamma of their training values.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.types import JointRatios
from ..stats.estimator import ShiftRange

# Marginal bands tolerate this much float slack.
BAND_TOL = 1e-6


def conditional_difference(x: np.ndarray) -> np.ndarray:
    """c for ratio vectors (w11, w10, w01, w00) along the last axis."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return x[..., 0] / (x[..., 0] + x[..., 2]) - x[..., 1] / (x[..., 1] + x[..., 3])


@dataclass(frozen=True)
class RatioProblem:
    """Inputs to the ratio optimizer."""
    current: JointRatios
    shift_range: ShiftRange
    gamma_y: float = 0.1
    gamma_z: float = 0.1

    def __post_init__(self):
        for name in ("gamma_y", "gamma_z"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidArgumentError(f"{name} must lie in [0, 1], got {value}")

    @property
    def alpha(self) -> float:
        return self.shift_range.alpha

    @property
    def beta(self) -> float:
        return self.shift_range.beta

    @property
    def py_train(self) -> float:
        return self.current.py

    @property
    def pz_train(self) -> float:
        return self.current.pz

    @property
    def pinned_c(self) -> bool:
        return self.alpha == self.beta

    def residuals(self, ratios: np.ndarray) -> dict[str, float]:
        """Constraint violations of a candidate ratio vector (0 means satisfied)."""
        x = np.asarray(ratios, dtype=float)
        c = float(conditional_difference(x))
        if not np.isfinite(c):
            c_low = c_high = float("inf")
        else:
            c_low, c_high = max(0.0, self.alpha - c), max(0.0, c - self.beta)
        py, pz = x[0] + x[1], x[0] + x[2]
        return {
            "c_low": c_low,
            "c_high": c_high,
            "y_band": max(0.0, abs(py - self.py_train) - self.gamma_y),
            "z_band": max(0.0, abs(pz - self.pz_train) - self.gamma_z),
            "simplex": abs(float(x.sum()) - 1.0),
            "box": max(0.0, -float(x.min()), float(x.max()) - 1.0),
        }

    def objective(self, ratios: np.ndarray) -> float:
        diff = self.current.as_array() - np.asarray(ratios, dtype=float)
        return float(diff @ diff)

    def to_dict(self) -> dict:
        return {
            "current": self.current.to_dict(),
            "range": self.shift_range.to_dict(),
            "gamma_y": self.gamma_y,
            "gamma_z": self.gamma_z,
        }


@dataclass(frozen=True)
class RatioSolution:
    """Optimized joint ratios.

    ``method`` is "sdp", "sdp_repaired" or "grid". ``relaxation_lower_bound``
    is the SDP objective (with the constant sum(w**2) added back), when one
    was computed.
    """
    ratios: JointRatios
    objective: float
    method: str
    feasibility_residuals: dict = field(default_factory=dict)
    relaxation_lower_bound: Optional[float] = None

    @property
    def achieved_c(self) -> float:
        return float(conditional_difference(self.ratios.as_array()))

    def to_dict(self) -> dict:
        return {
            "ratios": self.ratios.to_dict(),
            "objective": self.objective,
            "method": self.method,
            "achieved_c": self.achieved_c,
            "relaxation_lower_bound": self.relaxation_lower_bound,
            "feasibility_residuals": dict(self.feasibility_residuals),
        }
