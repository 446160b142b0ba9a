"""
Synthetic data - two Gaussian classes with a group drawn from a rotated view.

Labels are balanced; features come from the class Gaussian; the group is
Bernoulli with Pr(z=1) = p1(x') / (p0(x') + p1(x')) where x' is x rotated by
pi / k and p_y are the class densities. Smaller rotations tie z more closely
to y.
"""

import logging
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.optimize import brentq
from scipy.stats import multivariate_normal

from ..core.errors import InfeasibleError, InvalidArgumentError
from ..core.types import TabularDataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of the synthetic generator."""
    n: int = 2000
    k: float = 4.0
    mu0: tuple[float, float] = (-2.0, -2.0)
    mu1: tuple[float, float] = (2.0, 2.0)
    cov0: tuple[tuple[float, float], ...] = ((10.0, 1.0), (1.0, 3.0))
    cov1: tuple[tuple[float, float], ...] = ((5.0, 1.0), (1.0, 5.0))
    seed: int = 0
    label_prior: float = field(default=0.5)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"n must be positive, got {self.n}")
        if self.k < 2:
            raise InvalidArgumentError(f"k must be at least 2, got {self.k}")
        for name in ("cov0", "cov1"):
            cov = np.asarray(getattr(self, name), dtype=float)
            if cov.shape != (2, 2) or not np.allclose(cov, cov.T):
                raise InvalidArgumentError(f"{name} must be a symmetric 2x2 matrix")
            try:
                np.linalg.cholesky(cov)
            except np.linalg.LinAlgError as e:
                raise InvalidArgumentError(f"{name} is not positive definite") from e

    @property
    def angle(self) -> float:
        return math.pi / self.k

    def to_dict(self) -> dict:
        return asdict(self)


def _draw_xy(spec: SyntheticSpec) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(spec.seed)
    labels = rng.binomial(1, spec.label_prior, size=spec.n)
    features = np.empty((spec.n, 2))
    positives = labels == 1
    features[positives] = rng.multivariate_normal(spec.mu1, spec.cov1, size=int(positives.sum()))
    features[~positives] = rng.multivariate_normal(spec.mu0, spec.cov0, size=int((~positives).sum()))
    return features, labels


def group_probability(spec: SyntheticSpec, features: np.ndarray, angle: float) -> np.ndarray:
    """Pr(z=1) for each row under a rotation by ``angle``."""
    cos, sin = math.cos(angle), math.sin(angle)
    rotated = np.column_stack([
        features[:, 0] * cos - features[:, 1] * sin,
        features[:, 0] * sin + features[:, 1] * cos,
    ])
    p0 = multivariate_normal(spec.mu0, spec.cov0).pdf(rotated)
    p1 = multivariate_normal(spec.mu1, spec.cov1).pdf(rotated)
    total = p0 + p1
    return np.divide(p1, total, out=np.full_like(total, 0.5), where=total > 0)


def _draw_groups(spec: SyntheticSpec, features: np.ndarray, angle: float) -> np.ndarray:
    # Separate stream so the group draw never disturbs (x, y)
    uniforms = np.random.default_rng([spec.seed, 1]).random(spec.n)
    return (uniforms < group_probability(spec, features, angle)).astype(np.int64)


def generate_synthetic(spec: SyntheticSpec) -> TabularDataset:
    """Draw a synthetic dataset; identical specs give identical data."""
    features, labels = _draw_xy(spec)
    groups = _draw_groups(spec, features, spec.angle)
    logger.debug(f"Generated synthetic data n={spec.n}, k={spec.k}, seed={spec.seed}")
    return TabularDataset(features, labels, groups, ("x1", "x2"))


def make_test_rotated(spec: SyntheticSpec, k_test: float) -> TabularDataset:
    """Same (x, y) draws as ``spec``; z redrawn with rotation pi / k_test."""
    return generate_synthetic(replace(spec, k=k_test))


def _c_of(labels: np.ndarray, groups: np.ndarray) -> float:
    return float(labels[groups == 1].mean() - labels[groups == 0].mean())


def calibrate_rotation(spec: SyntheticSpec, target_c: float, k_max: float = 64.0) -> float:
    """Rotation parameter k whose redrawn groups give c close to ``target_c``.

    Searches the angle in [pi / k_max, pi / 2] with Brent's method; c shrinks
    as the angle grows.

    Raises:
        InfeasibleError: If ``target_c`` lies outside the reachable range.
    """
    features, labels = _draw_xy(spec)

    def gap(angle: float) -> float:
        groups = _draw_groups(spec, features, angle)
        if groups.min() == groups.max():
            return -target_c
        return _c_of(labels, groups) - target_c

    low, high = math.pi / k_max, math.pi / 2
    at_low, at_high = gap(low), gap(high)
    if at_low * at_high > 0:
        raise InfeasibleError(
            f"target c={target_c} outside reachable range "
            f"[{at_high + target_c:.4f}, {at_low + target_c:.4f}] for k in [2, {k_max}]"
        )
    angle = brentq(gap, low, high, xtol=1e-6)
    k = math.pi / angle
    logger.info(f"Calibrated k={k:.4f} for target c={target_c:.4f}")
    return k
