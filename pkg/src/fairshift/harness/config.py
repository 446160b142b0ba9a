"""
Experiment configuration - one JSON document parsed into dataclasses.

Precedence is flags > config file > defaults; ``apply_overrides`` applies the
flags.
"""

import json
import re
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional, Union

from ..core.config import DEFAULT_GAMMA, DEFAULT_SEEDS, WASSERSTEIN_SUBSAMPLE
from ..core.errors import ConfigError
from ..trainers.base import TARGETS, TrainConfig

SHIFT_MODES = ("target_fraction", "given", "estimated")
ANCHORS = ("absolute", "train", "test")
DATASET_KINDS = ("synthetic", "csv")
TEST_CONSTRUCTIONS = ("resampled", "rotated")

_PIPELINE_RE = re.compile(
    r"^(?:(?P<prep>rw|ours|ours\+optional|ours\+min_dist)\+)?(?P<method>lr|fc|fb_lite)(?P<at_test>@test)?$"
)


@dataclass(frozen=True)
class Pipeline:
    """Parsed pipeline id: optional pre-processing, a trainer, optional test-distribution training."""
    name: str
    prep: str
    method: str
    at_test: bool = False

    @property
    def uses_ratios(self) -> bool:
        return self.prep in ("ours", "ours+min_dist")


def parse_pipeline(name: str) -> Pipeline:
    """Parse ids such as ``lr``, ``rw+fc``, ``ours+fb_lite``, ``ours+optional+fc``, ``fb_lite@test``.

    Raises:
        ConfigError: If the id is not recognized.
    """
    match = _PIPELINE_RE.match(name.strip())
    if not match:
        raise ConfigError(f"unknown pipeline {name!r}")
    prep = match.group("prep") or "none"
    if prep == "ours+optional":
        prep = "ours+min_dist"
    at_test = bool(match.group("at_test"))
    if at_test and prep != "none":
        raise ConfigError(f"pipeline {name!r}: @test cannot be combined with pre-processing")
    return Pipeline(name=name.strip(), prep=prep, method=match.group("method"), at_test=at_test)


def _from_dict(cls, data: dict, label: str):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown {label} fields: {sorted(unknown)}")
    return cls(**data)


@dataclass(frozen=True)
class DatasetSpec:
    """Where train/test data come from and how the shifted test set is built."""
    kind: str = "synthetic"
    n_train: int = 2000
    n_test: int = 1000
    k: float = 4.0
    train_path: Optional[str] = None
    test_path: Optional[str] = None
    label_column: str = "y"
    group_column: str = "z"
    test_construction: str = "resampled"

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ConfigError(f"dataset kind must be one of {DATASET_KINDS}, got {self.kind!r}")
        if self.test_construction not in TEST_CONSTRUCTIONS:
            raise ConfigError(f"test_construction must be one of {TEST_CONSTRUCTIONS}")
        if self.kind == "csv":
            if not self.train_path or not self.test_path:
                raise ConfigError("csv datasets need train_path and test_path")
            if self.test_construction == "rotated":
                raise ConfigError("rotated test construction needs the synthetic generator")


@dataclass(frozen=True)
class ShiftSpec:
    """How the deployment correlation is known.

    Modes:
        target_fraction: the range is the built test set's exact c.
        given: [alpha, beta] supplied; ``anchor`` says whether they are
            absolute, multiples of c_train, or offsets from c_test.
        estimated: [alpha, beta] estimated from m deployment rows at
            confidence 1 - delta.

    ``fraction`` sets the test-set correlation to fraction * c_train in every
    mode; None leaves the test set unshifted.
    """
    mode: str = "target_fraction"
    fraction: Optional[float] = 0.5
    alpha: Optional[float] = None
    beta: Optional[float] = None
    anchor: str = "absolute"
    m: int = 2000
    delta: float = 0.05

    def __post_init__(self):
        if self.mode not in SHIFT_MODES:
            raise ConfigError(f"shift mode must be one of {SHIFT_MODES}, got {self.mode!r}")
        if self.anchor not in ANCHORS:
            raise ConfigError(f"anchor must be one of {ANCHORS}, got {self.anchor!r}")
        if self.mode == "given":
            if self.alpha is None or self.beta is None or self.alpha > self.beta:
                raise ConfigError("given mode needs alpha <= beta")
        if self.mode == "estimated" and (self.m < 2 or not 0 < self.delta < 1):
            raise ConfigError("estimated mode needs m >= 2 and delta in (0, 1)")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one experiment run."""
    name: str = "experiment"
    dataset: DatasetSpec = field(default_factory=DatasetSpec)
    shift: ShiftSpec = field(default_factory=ShiftSpec)
    pipelines: tuple[str, ...] = ("lr",)
    trainers: dict = field(default_factory=dict)
    tuning: dict = field(default_factory=dict)
    fairness_target: str = "dp"
    gamma_y: float = DEFAULT_GAMMA
    gamma_z: float = DEFAULT_GAMMA
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    grid_m: int = 10
    feature_index: int = 0
    subsample: int = WASSERSTEIN_SUBSAMPLE
    output_dir: Optional[str] = None
    workers: Optional[int] = None

    def __post_init__(self):
        if not self.pipelines:
            raise ConfigError("config needs at least one pipeline")
        if not self.seeds:
            raise ConfigError("config needs at least one seed")
        if self.fairness_target not in TARGETS:
            raise ConfigError(f"fairness_target must be one of {TARGETS}")
        for name in self.pipelines:
            parse_pipeline(name)
        for method in self.trainers:
            self.trainer_config(method)

    @property
    def parsed_pipelines(self) -> list[Pipeline]:
        return [parse_pipeline(name) for name in self.pipelines]

    def trainer_config(self, method: str, seed: int = 0) -> TrainConfig:
        """TrainConfig for ``method`` from the per-method overrides."""
        overrides = dict(self.trainers.get(method, {}))
        overrides.setdefault("fairness_target", self.fairness_target)
        overrides["method"] = method
        overrides["seed"] = seed
        return TrainConfig.from_dict(overrides)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["pipelines"] = list(self.pipelines)
        data["seeds"] = list(self.seeds)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        if "dataset" in data:
            data["dataset"] = _from_dict(DatasetSpec, data["dataset"], "dataset")
        if "shift" in data:
            data["shift"] = _from_dict(ShiftSpec, data["shift"], "shift")
        for key in ("pipelines", "seeds"):
            if key in data:
                data[key] = tuple(data[key])
        return _from_dict(cls, data, "experiment")


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read an experiment config JSON file.

    Raises:
        ConfigError: If the file is missing, not JSON, or has invalid fields.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return ExperimentConfig.from_dict(data)


def apply_overrides(config: ExperimentConfig, **flags: Any) -> ExperimentConfig:
    """Replace config fields with every flag that is not None."""
    changes = {k: v for k, v in flags.items() if v is not None}
    for key in ("pipelines", "seeds"):
        if key in changes:
            changes[key] = tuple(changes[key])
    return replace(config, **changes) if changes else config
