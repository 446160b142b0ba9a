"""
Trainers module - logistic regression and fairness in-processors.

Auto-selects the trainer class from ``TrainConfig.method``.
"""

import logging
from typing import Optional

import numpy as np

from ..core.types import TabularDataset
from ..stats.fairness import DisparityReport, disparities
from .base import LinearModel, TrainConfig, Trainer, predict
from .fairbatch import FairBatchLiteTrainer
from .logistic import LogisticTrainer
from .penalty import CovariancePenaltyTrainer
from .selection import SelectionResult, select_hyperparameters

logger = logging.getLogger(__name__)

_TRAINERS = {
    "lr": LogisticTrainer,
    "fc": CovariancePenaltyTrainer,
    "fb_lite": FairBatchLiteTrainer,
}


def get_trainer(config: TrainConfig) -> Trainer:
    """Get the trainer for a config's method."""
    return _TRAINERS[config.method](config)


def train(
    data: TabularDataset, config: TrainConfig, sample_weight: Optional[object] = None
) -> LinearModel:
    """Train a linear model; identical inputs and seed give identical theta."""
    model = get_trainer(config).fit(data, sample_weight=sample_weight)
    logger.info(f"Trained {config.method} ({config.fairness_target}) on {data.n} rows")
    return model


def evaluate(model: LinearModel, test: TabularDataset) -> tuple[float, DisparityReport]:
    """Accuracy and disparities of a model's predictions on ``test``."""
    yhat = predict(model, test.features)
    accuracy = float(np.mean(yhat == test.labels))
    return accuracy, disparities(test.labels, test.groups, yhat)


__all__ = [
    "CovariancePenaltyTrainer",
    "FairBatchLiteTrainer",
    "LinearModel",
    "LogisticTrainer",
    "SelectionResult",
    "TrainConfig",
    "Trainer",
    "evaluate",
    "get_trainer",
    "predict",
    "select_hyperparameters",
    "train",
]
