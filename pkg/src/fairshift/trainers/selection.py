"""
Hyperparameter selection - k-fold cross-validation over a small grid.

The chosen config is the fairest one whose mean validation accuracy is within
``accuracy_slack`` of the best mean accuracy on the grid.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sklearn.model_selection import StratifiedKFold

from ..core.errors import ConfigError, FairShiftError
from ..core.types import TabularDataset, as_weights
from .base import TrainConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CandidateScore:
    config: TrainConfig
    accuracy: float
    unfairness: float
    failed_folds: int = 0


@dataclass(frozen=True)
class SelectionResult:
    best: TrainConfig
    scores: list = field(default_factory=list)


def unfairness_of(report, target: str) -> float:
    """Disparity the selection minimizes for a fairness target."""
    if target == "dp":
        return report.dp
    if target == "eo":
        return report.eo
    return report.combined


def select_hyperparameters(
    data: TabularDataset,
    base: TrainConfig,
    grid: dict[str, list],
    folds: int = 3,
    seed: int = 0,
    sample_weight: Optional[object] = None,
    accuracy_slack: float = 0.02,
) -> SelectionResult:
    """Cross-validate every combination of ``grid`` values on top of ``base``.

    Folds are stratified by (y, z) class. Configs that fail on every fold are
    dropped.

    Raises:
        ConfigError: If the grid is empty or every candidate fails.
    """
    from . import evaluate, train

    if not grid:
        raise ConfigError("hyperparameter grid is empty")
    names = sorted(grid)
    weights = as_weights(sample_weight, data.n)
    splitter = StratifiedKFold(n_splits=folds, shuffle=True, random_state=seed)
    splits = list(splitter.split(data.features, data.cells()))

    scores = []
    for values in itertools.product(*(grid[name] for name in names)):
        config = base.with_updates(**dict(zip(names, values)))
        accuracies, disparities, failed = [], [], 0
        for fit_rows, val_rows in splits:
            try:
                model = train(data.take(fit_rows), config, sample_weight=weights[fit_rows])
                accuracy, report = evaluate(model, data.take(val_rows))
            except FairShiftError as e:
                logger.warning(f"Fold failed for {dict(zip(names, values))}: {e}")
                failed += 1
                continue
            accuracies.append(accuracy)
            disparities.append(unfairness_of(report, config.fairness_target))
        if accuracies:
            scores.append(
                CandidateScore(config, float(np.mean(accuracies)), float(np.mean(disparities)), failed)
            )

    if not scores:
        raise ConfigError("every hyperparameter candidate failed")
    top = max(s.accuracy for s in scores)
    eligible = [s for s in scores if s.accuracy >= top - accuracy_slack]
    best = min(eligible, key=lambda s: s.unfairness)
    logger.info(
        f"Selected {dict((n, getattr(best.config, n)) for n in names)} "
        f"(accuracy {best.accuracy:.4f}, unfairness {best.unfairness:.4f})"
    )
    return SelectionResult(best.config, scores)
