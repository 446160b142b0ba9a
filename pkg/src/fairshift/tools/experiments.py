"""
Experiment tools - synthetic data, fairness-accuracy frontier, config-driven runs.
"""

from typing import Optional


def register_experiment_tools(mcp):
    """Register experiment tools with the MCP server."""

    @mcp.tool(description="Generate a synthetic two-feature dataset whose groups correlate with labels via rotation pi/k.")
    async def generate_synthetic_csv(n: int = 2000, k: float = 4.0, seed: int = 0, output_name: Optional[str] = None) -> str:
        """Write a synthetic CSV to the output directory.

        Args:
            n: Number of rows.
            k: Rotation parameter (larger k means stronger label/group correlation).
            seed: Random seed.
        """
        from ..core.config import get_output_dir
        from ..core.errors import FairShiftError
        from ..data.io import write_csv
        from ..data.ratios import joint_ratios
        from ..sim.synthetic import SyntheticSpec, generate_synthetic
        from ..stats.fairness import correlation

        try:
            data = generate_synthetic(SyntheticSpec(n=n, k=k, seed=seed))
        except FairShiftError as e:
            return e.describe()

        out = write_csv(data, get_output_dir() / (output_name or f"synthetic-k{k:g}-s{seed}.csv"))
        c = correlation(joint_ratios(data)).c
        return f"Generated {data.n} rows (c = {c:.4f})\nWritten to: {out}"

    @mcp.tool(description="Best achievable accuracy under a disparity limit tau, over all group-aware randomized classifiers.")
    async def frontier_summary(
        w11: float,
        w10: float,
        w01: float,
        w00: float,
        taus: Optional[list[float]] = None,
        metric: str = "combined",
        step: float = 0.1,
    ) -> str:
        """Exact fairness-accuracy frontier for given class ratios.

        Args:
            w11, w10, w01, w00: Class ratios of the evaluation distribution.
            taus: Disparity limits to report (default 0, 0.05, 0.1, 0.2).
            metric: "dp", "eo" or "combined".
            step: Rate grid step.
        """
        from ..core.errors import FairShiftError
        from ..core.types import JointRatios
        from ..sim.frontier import best_accuracy, frontier

        try:
            points = frontier(JointRatios(w11, w10, w01, w00), step=step)
            output = f"Frontier over {len(points)} classifiers ({metric}):\n"
            for tau in taus or [0.0, 0.05, 0.1, 0.2]:
                best = best_accuracy(points, tau, metric)
                if best is None:
                    output += f"  tau={tau:g}: no classifier\n"
                else:
                    output += f"  tau={tau:g}: accuracy {best.accuracy:.4f} (rates {best.rates})\n"
        except FairShiftError as e:
            return e.describe()
        return output

    @mcp.tool(description="Run an experiment config (JSON path or inline JSON) and write CSV/JSON reports.")
    async def run_experiment_config(config: str, seeds: Optional[list[int]] = None) -> str:
        """Run every pipeline and seed of an experiment config.

        Args:
            config: Path to a config JSON file, or the JSON text itself.
            seeds: Optional seed override.
        """
        import json

        from ..core.errors import ConfigError, FairShiftError
        from ..harness import ExperimentConfig, apply_overrides, run_experiment, write_report
        from ..utils.jsonio import load_json_arg

        try:
            try:
                data = load_json_arg(config)
            except (json.JSONDecodeError, OSError) as e:
                raise ConfigError(f"cannot read config: {e}") from e
            experiment = apply_overrides(ExperimentConfig.from_dict(data), seeds=seeds)
            records = run_experiment(experiment)
        except FairShiftError as e:
            return e.describe()

        csv_path, json_path = write_report(records, experiment.output_dir, experiment.name)
        output = f"Experiment '{experiment.name}': {len(records)} pipelines\n"
        for record in records:
            acc = "n/a" if record.accuracy_mean is None else f"{record.accuracy_mean:.4f}"
            output += f"  {record.pipeline}: accuracy {acc}, failed cells {record.n_failed}\n"
        output += f"Reports: {csv_path}, {json_path}\n"
        return output
