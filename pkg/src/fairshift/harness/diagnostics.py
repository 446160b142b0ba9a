"""
Diagnostics - how well pre-processed data aligns with the test distribution, and
accuracy/fairness tradeoff curves of a single in-processor.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from ..core.config import DEFAULT_GAMMA
from ..core.errors import ConfigError
from ..core.types import TabularDataset
from ..data.ratios import joint_ratios
from ..preprocess.pipeline import preprocess
from ..preprocess.transport import wasserstein_cost
from ..sim.testsets import make_test_resampled
from ..stats.estimator import ShiftRange
from ..stats.fairness import correlation
from ..trainers import evaluate, train
from ..trainers.base import TrainConfig
from ..trainers.selection import unfairness_of

logger = logging.getLogger(__name__)

STRENGTH_FIELDS = {"fc": "lam", "fb_lite": "step"}


@dataclass(frozen=True)
class AlignmentRow:
    target_c: float
    c_train: float
    c_pre: float
    c_test: float
    w_train_test: float
    w_pre_test: float

    def to_dict(self) -> dict:
        return asdict(self)


def alignment_table(
    train_data: TabularDataset,
    test_base: TabularDataset,
    targets: Sequence[float],
    gamma: float = DEFAULT_GAMMA,
    seed: int = 0,
    subsample: int = 1000,
) -> list[AlignmentRow]:
    """For each target c: shift the test set, pre-process train toward it, compare.

    Transport costs use ``subsample`` points per side.
    """
    c_train = correlation(joint_ratios(train_data)).c
    rows = []
    for target in targets:
        test = make_test_resampled(test_base, target, seed=seed)
        c_test = correlation(joint_ratios(test)).c
        prepared = preprocess(train_data, ShiftRange.given(c_test), gamma, gamma, seed=seed).data
        row = AlignmentRow(
            target_c=float(target),
            c_train=c_train,
            c_pre=correlation(joint_ratios(prepared)).c,
            c_test=c_test,
            w_train_test=wasserstein_cost(train_data, test, subsample=subsample, seed=seed),
            w_pre_test=wasserstein_cost(prepared, test, subsample=subsample, seed=seed),
        )
        logger.info(f"Alignment at c={target:.4f}: W(train,test)={row.w_train_test:.4f}, W(pre,test)={row.w_pre_test:.4f}")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class TradeoffPoint:
    strength: float
    accuracy: float
    unfairness: float

    def to_dict(self) -> dict:
        return asdict(self)


def tradeoff_curve(
    train_data: TabularDataset,
    test: TabularDataset,
    config: TrainConfig,
    strengths: Sequence[float],
    shift_range: Optional[ShiftRange] = None,
    gamma: float = DEFAULT_GAMMA,
) -> list[TradeoffPoint]:
    """Accuracy and unfairness of one in-processor across fairness strengths.

    The strength is lambda for fc and step for fb_lite. With ``shift_range``
    the training data is pre-processed first.

    Raises:
        ConfigError: If the method has no strength parameter.
    """
    if config.method not in STRENGTH_FIELDS:
        raise ConfigError(f"method {config.method!r} has no fairness strength to sweep")
    if shift_range is not None:
        train_data = preprocess(train_data, shift_range, gamma, gamma, seed=config.seed).data

    points = []
    for strength in strengths:
        swept = config.with_updates(**{STRENGTH_FIELDS[config.method]: strength})
        accuracy, report = evaluate(train(train_data, swept), test)
        points.append(TradeoffPoint(float(strength), accuracy, unfairness_of(report, config.fairness_target)))
    return points
