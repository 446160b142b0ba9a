"""
Experiment runner - build data per seed, run every (pipeline, seed) cell, aggregate.

A failure in one cell is recorded on that cell and never affects the others.
"""

import logging
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from ..core.config import get_worker_count
from ..core.errors import FairShiftError
from ..core.types import TabularDataset
from ..data.io import load_csv
from ..data.ratios import joint_ratios
from ..preprocess.pipeline import preprocess
from ..preprocess.reweighing import reweighing_weights
from ..sim.synthetic import SyntheticSpec, calibrate_rotation, generate_synthetic, make_test_rotated
from ..sim.testsets import make_test_resampled
from ..stats.estimator import ShiftRange, estimate
from ..stats.fairness import correlation
from ..trainers import evaluate, select_hyperparameters, train
from .config import ExperimentConfig, Pipeline

logger = logging.getLogger(__name__)

# Seed offsets for independent draws of the same seed.
_TEST_OFFSET = 10_000
_TEST_DIST_OFFSET = 20_000
_DEPLOY_OFFSET = 30_000


@dataclass
class SeedData:
    """Train/test data shared (read-only) by every cell of one seed."""
    seed: int
    train: TabularDataset
    test: TabularDataset
    c_train: float
    c_test: float
    shift_range: ShiftRange
    test_target: Optional[float] = None
    k_test: Optional[float] = None


@dataclass
class CellResult:
    """Outcome of one (pipeline, seed) cell."""
    pipeline: str
    seed: int
    c_train: Optional[float] = None
    c_pre: Optional[float] = None
    c_test: Optional[float] = None
    accuracy: Optional[float] = None
    dp: Optional[float] = None
    eo: Optional[float] = None
    combined: Optional[float] = None
    solution: Optional[dict] = None
    shift_range: Optional[dict] = None
    trainer: Optional[dict] = None
    error: Optional[str] = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class RunRecord:
    """Per-pipeline aggregate over seeds (mean and population std)."""
    pipeline: str
    sweep: str
    seeds: list
    n_failed: int
    c_train: Optional[float]
    c_pre: Optional[float]
    c_test: Optional[float]
    accuracy_mean: Optional[float]
    accuracy_std: Optional[float]
    dp_mean: Optional[float]
    dp_std: Optional[float]
    eo_mean: Optional[float]
    eo_std: Optional[float]
    combined_mean: Optional[float]
    combined_std: Optional[float]
    wall_time: float = 0.0
    cells: list = field(default_factory=list)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["cells"] = [c.to_dict() if isinstance(c, CellResult) else c for c in self.cells]
        return data


def cell_seed(seed: int, pipeline: str) -> int:
    """Seed owned by one cell, derived from the run seed and the pipeline id."""
    state = np.random.SeedSequence([seed, zlib.crc32(pipeline.encode("utf-8"))]).generate_state(1)
    return int(state[0])


def _c(data: TabularDataset) -> float:
    return correlation(joint_ratios(data)).c


# =============================================================================
# Data construction
# =============================================================================

def _synthetic_spec(config: ExperimentConfig, n: int, seed: int) -> SyntheticSpec:
    return SyntheticSpec(n=n, k=config.dataset.k, seed=seed)


def build_test_distribution(
    config: ExperimentConfig, seed: int, c_train: float, n: int, offset: int
) -> tuple[TabularDataset, Optional[float], Optional[float]]:
    """Draw a test-distribution sample: base data shifted to fraction * c_train.

    Returns:
        Tuple of (data, target c or None, rotation k or None).
    """
    ds, shift = config.dataset, config.shift
    target = None if shift.fraction is None else shift.fraction * c_train

    if ds.kind == "csv":
        base = load_csv(ds.test_path, ds.label_column, ds.group_column)
        if target is None:
            return base, None, None
        return make_test_resampled(base, target, seed=seed + offset, size=n), target, None

    spec = _synthetic_spec(config, n, seed + offset)
    if target is None:
        return generate_synthetic(spec), None, None
    if ds.test_construction == "rotated":
        k_test = calibrate_rotation(spec, target)
        return make_test_rotated(spec, k_test), target, k_test
    return make_test_resampled(generate_synthetic(spec), target, seed=seed + offset), target, None


def _shift_range(config: ExperimentConfig, seed: int, c_train: float, c_test: float) -> ShiftRange:
    shift = config.shift
    if shift.mode == "target_fraction":
        return ShiftRange.given(c_test, c_test)
    if shift.mode == "given":
        if shift.anchor == "train":
            ends = sorted((shift.alpha * c_train, shift.beta * c_train))
        elif shift.anchor == "test":
            ends = [c_test + shift.alpha, c_test + shift.beta]
        else:
            ends = [shift.alpha, shift.beta]
        low, high = (min(max(v, -1.0), 1.0) for v in ends)
        return ShiftRange.given(low, high)
    deploy, _, _ = build_test_distribution(config, seed, c_train, shift.m, _DEPLOY_OFFSET)
    return estimate(deploy.labels, deploy.groups, shift.delta)


def build_seed_data(config: ExperimentConfig, seed: int) -> SeedData:
    """Train set, shifted test set and correlation range for one seed."""
    ds = config.dataset
    if ds.kind == "csv":
        train_data = load_csv(ds.train_path, ds.label_column, ds.group_column)
    else:
        train_data = generate_synthetic(_synthetic_spec(config, ds.n_train, seed))
    c_train = _c(train_data)
    test, target, k_test = build_test_distribution(config, seed, c_train, ds.n_test, _TEST_OFFSET)
    c_test = _c(test)
    return SeedData(
        seed=seed,
        train=train_data,
        test=test,
        c_train=c_train,
        c_test=c_test,
        shift_range=_shift_range(config, seed, c_train, c_test),
        test_target=target,
        k_test=k_test,
    )


# =============================================================================
# Cells
# =============================================================================

def run_cell(config: ExperimentConfig, pipeline: Pipeline, data: SeedData) -> CellResult:
    """Pre-process, train and evaluate one pipeline on one seed's data."""
    started = time.perf_counter()
    result = CellResult(
        pipeline=pipeline.name,
        seed=data.seed,
        c_train=data.c_train,
        c_test=data.c_test,
        shift_range=data.shift_range.to_dict(),
    )
    own_seed = cell_seed(data.seed, pipeline.name)

    try:
        fit_data, weights = data.train, None
        if pipeline.prep == "rw":
            weights = reweighing_weights(data.train)
        elif pipeline.uses_ratios:
            prepared = preprocess(
                data.train,
                data.shift_range,
                gamma_y=config.gamma_y,
                gamma_z=config.gamma_z,
                seed=own_seed,
                use_min_dist=pipeline.prep == "ours+min_dist",
                grid_m=config.grid_m,
                feature_index=config.feature_index,
                subsample=config.subsample,
            )
            fit_data = prepared.data
            result.solution = prepared.solution.to_dict()
            result.c_pre = _c(fit_data)
        elif pipeline.at_test:
            fit_data, _, _ = build_test_distribution(
                config, data.seed, data.c_train, data.train.n, _TEST_DIST_OFFSET
            )

        trainer_config = config.trainer_config(pipeline.method, seed=own_seed)
        grid = config.tuning.get(pipeline.method)
        if grid:
            trainer_config = select_hyperparameters(
                fit_data, trainer_config, grid, seed=own_seed, sample_weight=weights
            ).best
        result.trainer = trainer_config.to_dict()

        model = train(fit_data, trainer_config, sample_weight=weights)
        accuracy, report = evaluate(model, data.test)
        result.accuracy = accuracy
        result.dp, result.eo, result.combined = report.dp, report.eo, report.combined
    except FairShiftError as e:
        logger.error(f"Cell {pipeline.name} seed {data.seed} failed: {e}")
        result.error = str(e)

    result.wall_time = time.perf_counter() - started
    return result


def _stats(values: list[float]) -> tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def _mean(values: list[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    return float(np.mean(present)) if present else None


def aggregate(pipeline: str, sweep: str, cells: list[CellResult]) -> RunRecord:
    """Deterministic reduction of one pipeline's cells."""
    ok = [c for c in cells if c.ok]
    acc = _stats([c.accuracy for c in ok])
    dp = _stats([c.dp for c in ok])
    eo = _stats([c.eo for c in ok])
    combined = _stats([c.combined for c in ok])
    return RunRecord(
        pipeline=pipeline,
        sweep=sweep,
        seeds=[c.seed for c in cells],
        n_failed=len(cells) - len(ok),
        c_train=_mean([c.c_train for c in cells]),
        c_pre=_mean([c.c_pre for c in ok]),
        c_test=_mean([c.c_test for c in cells]),
        accuracy_mean=acc[0],
        accuracy_std=acc[1],
        dp_mean=dp[0],
        dp_std=dp[1],
        eo_mean=eo[0],
        eo_std=eo[1],
        combined_mean=combined[0],
        combined_std=combined[1],
        wall_time=sum(c.wall_time for c in cells),
        cells=cells,
    )


def run_experiment(config: ExperimentConfig, sweep: str = "") -> list[RunRecord]:
    """Run every (pipeline, seed) cell and aggregate per pipeline.

    Returns:
        One RunRecord per pipeline, in config order.
    """
    pipelines = config.parsed_pipelines
    workers = get_worker_count(config.workers)
    logger.info(
        f"Running '{config.name}' {sweep}: {len(pipelines)} pipelines x {len(config.seeds)} seeds "
        f"({workers} workers)"
    )

    seed_data: dict[int, object] = {}
    for seed in config.seeds:
        try:
            seed_data[seed] = build_seed_data(config, seed)
        except FairShiftError as e:
            logger.error(f"Data construction for seed {seed} failed: {e}")
            seed_data[seed] = e

    def run(job: tuple[Pipeline, int]) -> CellResult:
        pipeline, seed = job
        data = seed_data[seed]
        if isinstance(data, FairShiftError):
            return CellResult(pipeline=pipeline.name, seed=seed, error=str(data))
        return run_cell(config, pipeline, data)

    jobs = [(p, s) for p in pipelines for s in config.seeds]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    records = []
    for pipeline in pipelines:
        cells = [r for r in results if r.pipeline == pipeline.name]
        records.append(aggregate(pipeline.name, sweep, cells))
    return records


def with_shift(config: ExperimentConfig, **changes) -> ExperimentConfig:
    """Copy of ``config`` with shift fields replaced."""
    return replace(config, shift=replace(config.shift, **changes))
