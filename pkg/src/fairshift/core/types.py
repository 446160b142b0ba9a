"""
Core types - shared dataclasses used across the project.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DegenerateWeightsError, InvalidDatasetError, InvalidRatiosError

# Canonical (y, z) order used for ratio vectors everywhere: (1,1), (1,0), (0,1), (0,0).
CELLS: tuple[tuple[int, int], ...] = ((1, 1), (1, 0), (0, 1), (0, 0))

RATIO_TOLERANCE = 1e-9


def cell_index(labels: np.ndarray, groups: np.ndarray) -> np.ndarray:
    """Map (y, z) pairs to positions in CELLS."""
    labels = np.asarray(labels, dtype=int)
    groups = np.asarray(groups, dtype=int)
    return 2 * (1 - labels) + (1 - groups)


def _as_binary(values: Sequence, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise InvalidDatasetError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InvalidDatasetError(f"{name} must contain only 0 and 1")
    return arr.astype(np.int64)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TabularDataset:
    """Feature matrix with a binary label and a binary sensitive group per row.

    Arrays are copied and made read-only on construction, so derived datasets
    never alias their source.
    """
    features: np.ndarray
    labels: np.ndarray
    groups: np.ndarray
    feature_names: tuple[str, ...] = ()

    def __post_init__(self):
        features = np.asarray(self.features, dtype=float)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise InvalidDatasetError(f"features must be 2-D, got shape {features.shape}")

        labels = _as_binary(self.labels, "labels")
        groups = _as_binary(self.groups, "groups")
        n = features.shape[0]
        if labels.shape[0] != n or groups.shape[0] != n:
            raise InvalidDatasetError(
                f"row counts differ: features={n}, labels={labels.shape[0]}, groups={groups.shape[0]}"
            )

        names = tuple(self.feature_names) or tuple(f"x{i + 1}" for i in range(features.shape[1]))
        if len(names) != features.shape[1]:
            raise InvalidDatasetError(
                f"{len(names)} feature names for {features.shape[1]} feature columns"
            )

        object.__setattr__(self, "features", _frozen(features))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "groups", _frozen(groups))
        object.__setattr__(self, "feature_names", names)

    @property
    def n(self) -> int:
        return int(self.features.shape[0])

    @property
    def p(self) -> int:
        return int(self.features.shape[1])

    def __len__(self) -> int:
        return self.n

    def take(self, indices: Sequence[int]) -> "TabularDataset":
        """Return a new dataset made of the given rows (duplicates allowed)."""
        idx = np.asarray(indices, dtype=np.int64)
        return TabularDataset(
            self.features[idx], self.labels[idx], self.groups[idx], self.feature_names
        )

    def with_groups(self, groups: Sequence[int]) -> "TabularDataset":
        """Return a copy with the sensitive column replaced."""
        return TabularDataset(self.features, self.labels, groups, self.feature_names)

    def cells(self) -> np.ndarray:
        """Position of each row's (y, z) class in CELLS."""
        return cell_index(self.labels, self.groups)

    def cell_counts(self) -> np.ndarray:
        """Row counts per class, in CELLS order."""
        return np.bincount(self.cells(), minlength=4)

    def points(self) -> np.ndarray:
        """Rows as points (features, y, z) for distance computations."""
        return np.column_stack([self.features, self.labels, self.groups]).astype(float)


@dataclass(frozen=True)
class JointRatios:
    """Joint distribution of (y, z) over the four classes."""
    w11: float
    w10: float
    w01: float
    w00: float

    def __post_init__(self):
        values = [float(v) for v in (self.w11, self.w10, self.w01, self.w00)]
        if any(not np.isfinite(v) for v in values):
            raise InvalidRatiosError(f"ratios must be finite, got {values}")
        if any(v < -RATIO_TOLERANCE or v > 1 + RATIO_TOLERANCE for v in values):
            raise InvalidRatiosError(f"ratios must lie in [0, 1], got {values}")
        if abs(sum(values) - 1.0) > RATIO_TOLERANCE:
            raise InvalidRatiosError(f"ratios must sum to 1, got sum {sum(values)!r}")
        for name, value in zip(("w11", "w10", "w01", "w00"), values):
            object.__setattr__(self, name, min(max(value, 0.0), 1.0))

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "JointRatios":
        arr = np.asarray(values, dtype=float).ravel()
        if arr.shape != (4,):
            raise InvalidRatiosError(f"expected 4 ratios, got {arr.shape[0]}")
        return cls(*(float(v) for v in arr))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "JointRatios":
        counts = np.asarray(counts, dtype=float)
        return cls.from_array(counts / counts.sum())

    @classmethod
    def from_dict(cls, data: dict) -> "JointRatios":
        try:
            return cls(data["w11"], data["w10"], data["w01"], data["w00"])
        except KeyError as e:
            raise InvalidRatiosError(f"missing ratio {e.args[0]}") from e

    def as_array(self) -> np.ndarray:
        return np.array([self.w11, self.w10, self.w01, self.w00], dtype=float)

    def to_dict(self) -> dict:
        return {"w11": self.w11, "w10": self.w10, "w01": self.w01, "w00": self.w00}

    def get(self, y: int, z: int) -> float:
        return float(self.as_array()[CELLS.index((y, z))])

    def __iter__(self) -> Iterator[float]:
        return iter(self.as_array().tolist())

    @property
    def py(self) -> float:
        """Pr(y = 1)."""
        return self.w11 + self.w10

    @property
    def pz(self) -> float:
        """Pr(z = 1)."""
        return self.w11 + self.w01


@dataclass(frozen=True, eq=False)
class SampleWeights:
    """Non-negative per-row weights aligned with a dataset."""
    weights: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if not np.isfinite(w).all() or (w < 0).any():
            raise DegenerateWeightsError("weights must be finite and non-negative")
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    @property
    def total(self) -> float:
        return float(self.weights.sum())


def as_weights(weights: Optional[object], n: int) -> np.ndarray:
    """Normalize ``SampleWeights`` / array / None into a length-n array."""
    if weights is None:
        return np.ones(n, dtype=float)
    if isinstance(weights, SampleWeights):
        return np.asarray(weights.weights, dtype=float)
    return SampleWeights(np.asarray(weights, dtype=float)).weights.astype(float)
