"""
Shift estimator - confidence interval for the deployment correlation.

Given a small labeled deployment sample, the conditional difference
c = Pr(y=1|z=1) - Pr(y=1|z=0) is estimated with a Hoeffding-style interval.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from ..core.errors import GroupMissingError, InvalidArgumentError, InvalidDeltaError
from ..core.types import CELLS, JointRatios
from .fairness import correlation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftRange:
    """Interval [alpha, beta] believed to contain the deployment c.

    ``source`` is "given" for caller-supplied ranges and "estimated" for
    intervals computed from a deployment sample; given ranges have
    confidence 1 and no group counts.
    """
    alpha: float
    beta: float
    c_hat: float
    confidence: float
    source: str
    n1: int = 0
    n0: int = 0

    def __post_init__(self):
        if not (-1.0 <= self.alpha <= self.beta <= 1.0):
            raise InvalidArgumentError(
                f"need -1 <= alpha <= beta <= 1, got [{self.alpha}, {self.beta}]"
            )

    @classmethod
    def given(cls, alpha: float, beta: Optional[float] = None) -> "ShiftRange":
        beta = alpha if beta is None else beta
        return cls(
            alpha=float(alpha),
            beta=float(beta),
            c_hat=(float(alpha) + float(beta)) / 2,
            confidence=1.0,
            source="given",
        )

    @property
    def width(self) -> float:
        return self.beta - self.alpha

    def contains(self, c: float) -> bool:
        return self.alpha <= c <= self.beta

    def to_dict(self) -> dict:
        return asdict(self)


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise InvalidDeltaError(f"delta must lie in (0, 1), got {delta}")


def estimate(y: Sequence[int], z: Sequence[int], delta: float = 0.05) -> ShiftRange:
    """Interval containing the deployment c with probability at least 1 - delta.

    With n = min(n1, n0), the half-width is sqrt(2 ln(4 / delta) / n) and the
    interval is clamped to [-1, 1].

    Raises:
        InvalidDeltaError: If delta is outside (0, 1).
        GroupMissingError: If either group has no rows.
    """
    _check_delta(delta)
    y = np.asarray(y, dtype=int)
    z = np.asarray(z, dtype=int)
    if y.shape != z.shape:
        raise InvalidArgumentError(f"length mismatch: y={y.size}, z={z.size}")

    n1 = int((z == 1).sum())
    n0 = int((z == 0).sum())
    if n1 == 0 or n0 == 0:
        raise GroupMissingError(f"deployment sample needs both groups (n1={n1}, n0={n0})")

    c_hat = float(y[z == 1].mean() - y[z == 0].mean())
    eps = math.sqrt(2.0 / min(n1, n0) * math.log(4.0 / delta))
    return ShiftRange(
        alpha=max(-1.0, c_hat - eps),
        beta=min(1.0, c_hat + eps),
        c_hat=c_hat,
        confidence=1.0 - delta,
        source="estimated",
        n1=n1,
        n0=n0,
    )


def required_samples(eps: float, delta: float) -> int:
    """Per-group sample size that makes the interval half-width at most eps.

    Returns int(2 ln(4 / delta) / eps**2), floored at 1.
    """
    _check_delta(delta)
    if not 0.0 < eps <= 2.0:
        raise InvalidArgumentError(f"eps must lie in (0, 2], got {eps}")
    return max(1, int(2.0 * math.log(4.0 / delta) / eps**2))


# =============================================================================
# Coverage experiment
# =============================================================================

@dataclass(frozen=True)
class CoverageReport:
    """Outcome of repeated estimation against known ratios.

    ``rate`` is covered / (trials - group_missing); trials where a group was
    missing produce no interval and are counted separately.
    """
    rate: float
    covered: int
    trials: int
    group_missing: int
    true_c: float
    delta: float
    m: int

    @property
    def floor(self) -> float:
        """1 - delta minus three binomial standard deviations."""
        valid = max(self.trials - self.group_missing, 1)
        return 1.0 - self.delta - 3.0 * math.sqrt(self.delta * (1 - self.delta) / valid)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["floor"] = self.floor
        return data


def sample_labels_groups(ratios: JointRatios, m: int, rng: np.random.Generator):
    """Draw m (y, z) pairs from joint ratios."""
    cells = rng.choice(4, size=m, p=ratios.as_array())
    table = np.array(CELLS)
    return table[cells, 0], table[cells, 1]


def coverage_experiment(
    ratios: JointRatios,
    m: int,
    delta: float = 0.05,
    trials: int = 1000,
    seed: int = 0,
    workers: int = 1,
) -> CoverageReport:
    """Estimate the coverage rate of ``estimate`` by simulation."""
    _check_delta(delta)
    if m < 1 or trials < 1:
        raise InvalidArgumentError(f"m and trials must be positive, got m={m}, trials={trials}")
    true_c = correlation(ratios).c

    def run_trial(t: int) -> Optional[bool]:
        rng = np.random.default_rng([seed, t])
        y, z = sample_labels_groups(ratios, m, rng)
        try:
            return estimate(y, z, delta).contains(true_c)
        except GroupMissingError:
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_trial, range(trials)))
    else:
        outcomes = [run_trial(t) for t in range(trials)]

    missing = sum(1 for o in outcomes if o is None)
    covered = sum(1 for o in outcomes if o)
    valid = trials - missing
    if missing:
        logger.warning(f"{missing}/{trials} trials lacked a group")
    return CoverageReport(
        rate=covered / valid if valid else 0.0,
        covered=covered,
        trials=trials,
        group_missing=missing,
        true_c=true_c,
        delta=delta,
        m=m,
    )
