"""
Pipeline tools - pre-process a CSV, transport cost, train and evaluate models.
"""

from typing import Optional


def register_pipeline_tools(mcp):
    """Register pre-processing and training tools with the MCP server."""

    @mcp.tool(description="Resample a training CSV so its label/group correlation c lands in [alpha, beta].")
    async def preprocess_csv(
        path: str,
        alpha: float,
        beta: Optional[float] = None,
        gamma_y: float = 0.1,
        gamma_z: float = 0.1,
        seed: int = 0,
        use_min_dist: bool = False,
        output_name: Optional[str] = None,
    ) -> str:
        """Run correlation-shift pre-processing and write the result.

        Args:
            path: Training CSV (label column y, group column z).
            alpha: Lower end of the target c range.
            beta: Upper end (defaults to alpha).
            use_min_dist: Choose per-half masses that minimize transport cost.
            output_name: File name inside the output directory.
        """
        from pathlib import Path

        from ..core.config import get_output_dir
        from ..core.errors import FairShiftError
        from ..data.io import load_csv, write_csv
        from ..data.ratios import joint_ratios
        from ..preprocess.pipeline import preprocess
        from ..stats.estimator import ShiftRange
        from ..stats.fairness import correlation

        try:
            train_data = load_csv(path)
            result = preprocess(
                train_data,
                ShiftRange.given(alpha, beta),
                gamma_y=gamma_y,
                gamma_z=gamma_z,
                seed=seed,
                use_min_dist=use_min_dist,
            )
        except FairShiftError as e:
            return e.describe()

        name = output_name or f"{Path(path).stem}-preprocessed.csv"
        out = write_csv(result.data, get_output_dir() / name)
        c_before = correlation(joint_ratios(train_data)).c
        c_after = correlation(joint_ratios(result.data)).c
        return (
            f"Pre-processed {train_data.n} rows via {result.solution.method}\n"
            f"c: {c_before:.4f} -> {c_after:.4f} (target [{alpha}, {beta if beta is not None else alpha}])\n"
            f"Written to: {out}\n"
        )

    @mcp.tool(description="Empirical Wasserstein cost (mean squared matching cost) between two CSV datasets.")
    async def wasserstein_distance(path_a: str, path_b: str, subsample: int = 256, seed: int = 0) -> str:
        """Transport cost between two datasets over (features, y, z).

        Args:
            path_a: First CSV.
            path_b: Second CSV.
            subsample: Points drawn from each side.
        """
        from ..core.errors import FairShiftError
        from ..data.io import load_csv
        from ..preprocess.transport import transport_plan

        try:
            plan = transport_plan(load_csv(path_a), load_csv(path_b), subsample=subsample, seed=seed)
        except FairShiftError as e:
            return e.describe()
        return f"Wasserstein cost: {plan.cost:.6f} over {plan.size} matched points"

    @mcp.tool(description="Train a linear model (lr, fc or fb_lite) on a CSV and save it as JSON.")
    async def train_model(
        path: str,
        method: str = "lr",
        fairness_target: str = "dp",
        lam: float = 1.0,
        step: float = 0.005,
        epochs: int = 200,
        seed: int = 0,
        output_name: Optional[str] = None,
    ) -> str:
        """Train and save a model.

        Args:
            path: Training CSV.
            method: "lr", "fc" or "fb_lite".
            fairness_target: "dp", "eo" or "dp_and_eo".
            lam: Penalty strength for fc.
            step: Adaptation rate for fb_lite.
        """
        from pathlib import Path

        from ..core.config import get_output_dir
        from ..core.errors import FairShiftError
        from ..data.io import load_csv
        from ..trainers import TrainConfig, train
        from ..utils.jsonio import dump_json

        try:
            config = TrainConfig(
                method=method, fairness_target=fairness_target, lam=lam, step=step, epochs=epochs, seed=seed
            )
            model = train(load_csv(path), config)
        except FairShiftError as e:
            return e.describe()

        out = dump_json(model, get_output_dir() / (output_name or f"{Path(path).stem}-{method}.json"))
        return f"Trained {method} ({fairness_target}); theta = {model.theta.round(4).tolist()}\nSaved to: {out}"

    @mcp.tool(description="Accuracy and DP/EO/PP disparities of a saved model on a CSV dataset.")
    async def evaluate_model(model_path: str, path: str) -> str:
        """Evaluate a saved model.

        Args:
            model_path: Model JSON written by train_model.
            path: Test CSV.
        """
        import json

        from ..core.errors import FairShiftError
        from ..data.io import load_csv
        from ..trainers import LinearModel, evaluate

        try:
            with open(model_path, encoding="utf-8") as f:
                model = LinearModel.from_dict(json.load(f))
            accuracy, report = evaluate(model, load_csv(path))
        except FileNotFoundError:
            return f"Model not found: {model_path}"
        except FairShiftError as e:
            return e.describe()

        output = f"Accuracy: {accuracy:.4f}\n"
        output += f"DP: {report.dp:.4f} (pairwise {report.dp_pairwise:.4f})\n"
        output += f"EO: {report.eo:.4f} (pairwise {report.eo_pairwise:.4f})\n"
        output += f"PP (pairwise): {report.pp_pairwise:.4f}\n"
        output += f"Combined: {report.combined:.4f}\n"
        if report.flags:
            output += f"Flags: {', '.join(report.flags)}\n"
        return output
