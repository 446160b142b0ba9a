"""
Base trainer - linear model, training configuration, and the shared training loop.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Iterator, Optional

import numpy as np
from scipy.special import expit

from ..core.errors import (
    ConfigError,
    DivergedError,
    InvalidArgumentError,
    SingleGroupError,
    WidthMismatchError,
)
from ..core.types import TabularDataset, as_weights

logger = logging.getLogger(__name__)

METHODS = ("lr", "fc", "fb_lite")
TARGETS = ("dp", "eo", "dp_and_eo")
OPTIMIZERS = ("adam", "sgd")

_ADAM_BETAS = (0.9, 0.999)
_ADAM_EPS = 1e-8


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one trainer.

    ``lam`` is the fc penalty strength (serialized as "lambda"), ``step`` the
    fb_lite adaptation rate, and ``knob`` the DP weight when the target is
    dp_and_eo.
    """
    method: str = "lr"
    fairness_target: str = "dp"
    lam: float = 1.0
    step: float = 0.005
    knob: float = 0.5
    epochs: int = 200
    batch_size: int = 100
    lr_rate: float = 0.0005
    seed: int = 0
    optimizer: str = "adam"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.fairness_target not in TARGETS:
            raise ConfigError(f"fairness_target must be one of {TARGETS}, got {self.fairness_target!r}")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}")
        if self.method == "fc" and not self.lam >= 0:
            raise ConfigError(f"fc needs lambda >= 0, got {self.lam}")
        if self.method == "fb_lite" and not self.step > 0:
            raise ConfigError(f"fb_lite needs step > 0, got {self.step}")
        if not 0.0 <= self.knob <= 1.0:
            raise ConfigError(f"knob must lie in [0, 1], got {self.knob}")
        if self.epochs < 1 or self.batch_size < 1 or not self.lr_rate > 0:
            raise ConfigError("epochs, batch_size and lr_rate must be positive")

    def with_updates(self, **changes) -> "TrainConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "TrainConfig":
        data = dict(data)
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown trainer fields: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Trained weights; the last entry of ``theta`` is the bias."""
    theta: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float).ravel()
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def n_features(self) -> int:
        return int(self.theta.shape[0]) - 1

    def to_dict(self) -> dict:
        return {"theta": self.theta.tolist(), "meta": dict(self.meta)}

    @classmethod
    def from_dict(cls, data: dict) -> "LinearModel":
        try:
            return cls(np.asarray(data["theta"], dtype=float), dict(data.get("meta", {})))
        except KeyError as e:
            raise ConfigError("model JSON needs a 'theta' field") from e


def with_bias(features: np.ndarray) -> np.ndarray:
    features = np.atleast_2d(np.asarray(features, dtype=float))
    return np.column_stack([features, np.ones(features.shape[0])])


def predict(model: LinearModel, features: np.ndarray) -> np.ndarray:
    """Hard predictions: 1 where theta . [x, 1] > 0, else 0 (ties go to 0).

    Raises:
        WidthMismatchError: If the feature width differs from the model's.
    """
    features = np.atleast_2d(np.asarray(features, dtype=float))
    if features.shape[1] != model.n_features:
        raise WidthMismatchError(
            f"model expects {model.n_features} features, got {features.shape[1]}"
        )
    return (with_bias(features) @ model.theta > 0).astype(np.int64)


class Trainer(ABC):
    """Mini-batch logistic regression with hooks for fairness terms.

    Subclasses override ``penalty`` (extra loss terms), ``batches`` (how rows
    are drawn each epoch), and ``after_epoch`` (adaptive state).
    """

    def __init__(self, config: TrainConfig):
        self.config = config

    @abstractmethod
    def get_name(self) -> str:
        """Method tag stored in model metadata."""
        pass

    def penalty(
        self, theta: np.ndarray, X: np.ndarray, y: np.ndarray, z: np.ndarray, w: np.ndarray
    ) -> tuple[float, np.ndarray]:
        """Extra loss term and its gradient (none by default)."""
        return 0.0, np.zeros_like(theta)

    def loss_and_grad(
        self, theta: np.ndarray, X: np.ndarray, y: np.ndarray, z: np.ndarray, w: np.ndarray
    ) -> tuple[float, np.ndarray]:
        """Weighted mean logistic loss plus penalty, with its gradient.

        ``X`` already carries the bias column.
        """
        scores = X @ theta
        total = w.sum()
        loss = float(w @ (np.logaddexp(0.0, scores) - y * scores) / total)
        grad = X.T @ (w * (expit(scores) - y)) / total
        extra, extra_grad = self.penalty(theta, X, y, z, w)
        return loss + extra, grad + extra_grad

    def setup(self, data: TabularDataset, weights: np.ndarray) -> None:
        """Prepare per-fit state."""
        pass

    def batches(self, n: int, weights: np.ndarray, rng: np.random.Generator) -> Iterator[np.ndarray]:
        """Row indices of each mini-batch for one epoch (shuffled by default)."""
        order = rng.permutation(n)
        size = self.config.batch_size
        for start in range(0, n, size):
            yield order[start:start + size]

    def after_epoch(self, theta: np.ndarray, data: TabularDataset, weights: np.ndarray, epoch: int) -> None:
        """Hook run after each epoch."""
        pass

    def fit(self, data: TabularDataset, sample_weight: Optional[object] = None) -> LinearModel:
        """Train on ``data`` with optional per-row weights.

        Raises:
            InvalidArgumentError: If n is smaller than the batch size.
            SingleGroupError: If only one group is present.
            DivergedError: If the loss becomes non-finite.
        """
        cfg = self.config
        if data.n < cfg.batch_size:
            raise InvalidArgumentError(f"need at least batch_size={cfg.batch_size} rows, got {data.n}")
        if np.unique(data.groups).size < 2:
            raise SingleGroupError("training data needs both groups")

        weights = as_weights(sample_weight, data.n)
        weights = weights * (data.n / weights.sum())
        X = with_bias(data.features)
        y = data.labels.astype(float)
        z = data.groups.astype(float)

        rng = np.random.default_rng(cfg.seed)
        theta = np.zeros(X.shape[1])
        moment = np.zeros_like(theta)
        velocity = np.zeros_like(theta)
        steps = 0
        self.setup(data, weights)

        for epoch in range(cfg.epochs):
            for rows in self.batches(data.n, weights, rng):
                loss, grad = self.loss_and_grad(theta, X[rows], y[rows], z[rows], weights[rows])
                if not np.isfinite(loss) or not np.isfinite(grad).all():
                    raise DivergedError(f"{self.get_name()} loss became non-finite at epoch {epoch}", epoch=epoch)
                steps += 1
                if cfg.optimizer == "adam":
                    b1, b2 = _ADAM_BETAS
                    moment = b1 * moment + (1 - b1) * grad
                    velocity = b2 * velocity + (1 - b2) * grad**2
                    m_hat = moment / (1 - b1**steps)
                    v_hat = velocity / (1 - b2**steps)
                    theta = theta - cfg.lr_rate * m_hat / (np.sqrt(v_hat) + _ADAM_EPS)
                else:
                    theta = theta - cfg.lr_rate * grad
            self.after_epoch(theta, data, weights, epoch)

        logger.debug(f"{self.get_name()} finished {cfg.epochs} epochs, theta={theta.round(4)}")
        return LinearModel(
            theta,
            meta={
                "method": self.get_name(),
                "epochs": cfg.epochs,
                "lr_rate": cfg.lr_rate,
                "seed": cfg.seed,
                "config": cfg.to_dict(),
            },
        )
