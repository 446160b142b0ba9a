#!/usr/bin/env python3
"""
fairshift CLI - data generation, shift estimation, ratio optimization,
pre-processing, training, evaluation, and config-driven experiments.

Every subcommand exits 0 on success and 1 on a fairshift error; ``run`` and
the sweeps exit 1 if any experiment cell failed.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from .core.config import ORACLE_RESOLUTION, WASSERSTEIN_SUBSAMPLE, configure_logging
from .core.errors import FairShiftError
from .core.types import JointRatios

logger = logging.getLogger("fairshift.cli")


def _ratios_arg(text: str) -> JointRatios:
    from .utils.jsonio import load_json_arg

    value = load_json_arg(text)
    if isinstance(value, dict):
        return JointRatios.from_dict(value)
    return JointRatios.from_array(value)


def _emit(value) -> None:
    from .utils.jsonio import dumps

    print(dumps(value))


def _add_data_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="CSV with features, label and group columns")
    parser.add_argument("--label-column", default="y")
    parser.add_argument("--group-column", default="z")


def _load(args):
    from .data.io import load_csv

    return load_csv(args.data, args.label_column, args.group_column)


# =============================================================================
# Subcommands
# =============================================================================

def cmd_gen_synthetic(args) -> int:
    from .data.io import write_csv
    from .sim.synthetic import SyntheticSpec, generate_synthetic

    data = generate_synthetic(SyntheticSpec(n=args.n, k=args.k, seed=args.seed))
    path = write_csv(data, args.out)
    logger.info(f"Wrote {data.n} synthetic rows to {path}")
    return 0


def cmd_estimate_shift(args) -> int:
    from .stats.estimator import estimate

    data = _load(args)
    _emit(estimate(data.labels, data.groups, args.delta))
    return 0


def cmd_optimize_ratios(args) -> int:
    from .data.ratios import joint_ratios
    from .optim import RatioProblem, grid_oracle, optimize_ratios
    from .stats.estimator import ShiftRange

    current = _ratios_arg(args.ratios) if args.ratios else joint_ratios(_load(args))
    problem = RatioProblem(current, ShiftRange.given(args.alpha, args.beta), args.gamma_y, args.gamma_z)
    if args.method == "grid":
        solution = grid_oracle(problem, resolution=args.resolution)
    else:
        solution = optimize_ratios(problem)
    _emit(solution)
    return 0


def cmd_preprocess(args) -> int:
    from .data.io import write_csv
    from .data.ratios import joint_ratios
    from .preprocess.pipeline import preprocess
    from .stats.estimator import ShiftRange
    from .stats.fairness import correlation
    from .utils.jsonio import dump_json

    train_data = _load(args)
    result = preprocess(
        train_data,
        ShiftRange.given(args.alpha, args.beta),
        gamma_y=args.gamma_y,
        gamma_z=args.gamma_z,
        seed=args.seed,
        use_min_dist=args.min_dist,
        grid_m=args.grid_m,
        subsample=args.subsample,
    )
    path = write_csv(result.data, args.out, args.label_column, args.group_column)
    sidecar = dump_json(
        {
            "solution": result.solution,
            "achieved_c": correlation(joint_ratios(result.data)).c,
            "weights": result.weights.meta,
        },
        Path(str(path) + ".json"),
    )
    logger.info(f"Wrote {path} and {sidecar}")
    return 0


def cmd_train(args) -> int:
    from .trainers import TrainConfig, train
    from .utils.jsonio import dump_json

    config = TrainConfig(
        method=args.method,
        fairness_target=args.target,
        lam=args.lam,
        step=args.step,
        knob=args.knob,
        epochs=args.epochs,
        batch_size=args.batch_size,
        lr_rate=args.lr,
        seed=args.seed,
    )
    model = train(_load(args), config)
    dump_json(model, args.out)
    logger.info(f"Wrote model to {args.out}")
    return 0


def cmd_eval(args) -> int:
    from .trainers import LinearModel, evaluate
    from .utils.jsonio import load_json_arg

    model = LinearModel.from_dict(load_json_arg(args.model))
    accuracy, report = evaluate(model, _load(args))
    _emit({"accuracy": accuracy, **report.to_dict()})
    return 0


def cmd_frontier(args) -> int:
    from .sim.frontier import frontier

    points = frontier(_ratios_arg(args.ratios), step=args.step)
    frame = pd.DataFrame([p.to_dict() for p in points])
    frame.to_csv(args.out, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(points)} frontier points to {args.out}")
    return 0


def _config(args):
    from .harness.config import apply_overrides, load_config

    return apply_overrides(
        load_config(args.config),
        seeds=args.seeds,
        workers=args.workers,
        output_dir=args.output_dir,
        pipelines=args.pipelines,
    )


def _finish(records, config, stem: str) -> int:
    from .harness.report import write_report

    write_report(records, config.output_dir, stem=stem)
    failed = sum(r.n_failed for r in records)
    if failed:
        logger.error(f"{failed} cells failed")
        return 1
    return 0


def cmd_run(args) -> int:
    from .harness.runner import run_experiment

    config = _config(args)
    return _finish(run_experiment(config), config, config.name)


def cmd_sweep_c(args) -> int:
    from .harness.sweeps import run_c_sweep

    config = _config(args)
    return _finish(run_c_sweep(config, args.fractions), config, f"{config.name}-sweep-c")


def cmd_sweep_misspec(args) -> int:
    from .harness.sweeps import run_misspecification

    config = _config(args)
    records = run_misspecification(config, args.true_fraction, args.specified)
    return _finish(records, config, f"{config.name}-misspec")


def cmd_sweep_range(args) -> int:
    from .harness.sweeps import run_range_sweep

    config = _config(args)
    records = run_range_sweep(config, args.widths, args.fraction)
    return _finish(records, config, f"{config.name}-range")


def cmd_align(args) -> int:
    from .data.ratios import joint_ratios
    from .harness.diagnostics import alignment_table
    from .sim.synthetic import SyntheticSpec, generate_synthetic
    from .stats.fairness import correlation

    train_data = generate_synthetic(SyntheticSpec(n=args.n_train, k=args.k, seed=args.seed))
    test_base = generate_synthetic(SyntheticSpec(n=args.n_test, k=args.k, seed=args.seed + 10_000))
    c_train = correlation(joint_ratios(train_data)).c
    targets = [f * c_train for f in args.fractions]
    rows = alignment_table(train_data, test_base, targets, gamma=args.gamma, seed=args.seed)
    frame = pd.DataFrame([r.to_dict() for r in rows])
    if args.out:
        frame.to_csv(args.out, index=False, lineterminator="\n")
    print(frame.to_string(index=False))
    return 0


def cmd_tradeoff(args) -> int:
    from .data.io import load_csv
    from .harness.diagnostics import tradeoff_curve
    from .stats.estimator import ShiftRange
    from .trainers import TrainConfig

    train_data = _load(args)
    test = load_csv(args.test, args.label_column, args.group_column)
    config = TrainConfig(method=args.method, fairness_target=args.target, seed=args.seed)
    shift = ShiftRange.given(args.alpha, args.beta) if args.alpha is not None else None
    points = tradeoff_curve(train_data, test, config, args.strengths, shift_range=shift)
    frame = pd.DataFrame([p.to_dict() for p in points])
    frame.to_csv(args.out, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(points)} tradeoff points to {args.out}")
    return 0


# =============================================================================
# Parser
# =============================================================================

def _add_experiment_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="Experiment config JSON")
    parser.add_argument("--seeds", type=int, nargs="+", help="Override config seeds")
    parser.add_argument("--pipelines", nargs="+", help="Override config pipelines")
    parser.add_argument("--workers", type=int, help="Concurrent cells (default FAIRSHIFT_WORKERS)")
    parser.add_argument("--output-dir", help="Report directory (default FAIRSHIFT_OUTPUT_DIR)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairshift",
        description="Fair training under correlation shifts.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-synthetic", help="Write a synthetic dataset")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--k", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_synthetic)

    p = sub.add_parser("estimate-shift", help="Confidence interval for c from a deployment sample")
    _add_data_args(p)
    p.add_argument("--delta", type=float, default=0.05)
    p.set_defaults(func=cmd_estimate_shift)

    p = sub.add_parser("optimize-ratios", help="Closest class ratios with c in [alpha, beta]")
    p.add_argument("--ratios", help="Current ratios as JSON (object or [w11, w10, w01, w00])")
    p.add_argument("--data", help="CSV to take current ratios from")
    p.add_argument("--label-column", default="y")
    p.add_argument("--group-column", default="z")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma-y", type=float, default=0.1)
    p.add_argument("--gamma-z", type=float, default=0.1)
    p.add_argument("--method", choices=["sdp", "grid"], default="sdp")
    p.add_argument("--resolution", type=int, default=ORACLE_RESOLUTION)
    p.set_defaults(func=cmd_optimize_ratios)

    p = sub.add_parser("preprocess", help="Resample training data toward a correlation range")
    _add_data_args(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma-y", type=float, default=0.1)
    p.add_argument("--gamma-z", type=float, default=0.1)
    p.add_argument("--min-dist", action="store_true")
    p.add_argument("--grid-m", type=int, default=10)
    p.add_argument("--subsample", type=int, default=WASSERSTEIN_SUBSAMPLE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train", help="Train a linear model")
    _add_data_args(p)
    p.add_argument("--method", choices=["lr", "fc", "fb_lite"], default="lr")
    p.add_argument("--target", choices=["dp", "eo", "dp_and_eo"], default="dp")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--knob", type=float, default=0.5)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--batch-size", type=int, default=100)
    p.add_argument("--lr", type=float, default=0.0005)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="Accuracy and disparities of a saved model")
    _add_data_args(p)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("frontier", help="Enumerate rate classifiers for given ratios")
    p.add_argument("--ratios", required=True)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("run", help="Run a config-driven experiment")
    _add_experiment_args(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep-c", help="Sweep the test correlation as a fraction of c_train")
    _add_experiment_args(p)
    p.add_argument("--fractions", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7])
    p.set_defaults(func=cmd_sweep_c)

    p = sub.add_parser("sweep-misspec", help="Sweep a misspecified target correlation")
    _add_experiment_args(p)
    p.add_argument("--true-fraction", type=float, default=0.6)
    p.add_argument("--specified", type=float, nargs="+", default=[0.4, 0.5, 0.54, 0.6, 0.66, 0.7, 0.8, 1.0])
    p.set_defaults(func=cmd_sweep_misspec)

    p = sub.add_parser("sweep-range", help="Sweep the width of the correlation range")
    _add_experiment_args(p)
    p.add_argument("--widths", type=float, nargs="+", default=[10, 50, 100])
    p.add_argument("--fraction", type=float, default=0.5)
    p.set_defaults(func=cmd_sweep_range)

    p = sub.add_parser("align", help="Alignment of pre-processed and test data on synthetic data")
    p.add_argument("--n-train", type=int, default=2000)
    p.add_argument("--n-test", type=int, default=1000)
    p.add_argument("--k", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--fractions", type=float, nargs="+", default=[0.1, 0.5, 1.0])
    p.add_argument("--out")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("tradeoff", help="Accuracy/unfairness over a fairness-strength sweep")
    _add_data_args(p)
    p.add_argument("--test", required=True, help="Test CSV")
    p.add_argument("--method", choices=["fc", "fb_lite"], default="fc")
    p.add_argument("--target", choices=["dp", "eo", "dp_and_eo"], default="dp")
    p.add_argument("--strengths", type=float, nargs="+", default=[0.0, 0.1, 1.0, 10.0])
    p.add_argument("--alpha", type=float, help="Pre-process toward [alpha, beta] first")
    p.add_argument("--beta", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tradeoff)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point for the ``fairshift`` command."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    if args.command == "optimize-ratios" and not (args.ratios or args.data):
        parser.error("optimize-ratios needs --ratios or --data")
    if args.command == "tradeoff" and args.alpha is not None and args.beta is None:
        args.beta = args.alpha

    try:
        return args.func(args)
    except FairShiftError as e:
        logger.error(str(e))
        return 1
    except (json.JSONDecodeError, OSError) as e:
        logger.error(f"cannot read input: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
