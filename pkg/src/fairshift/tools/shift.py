"""
Shift tools - correlation report, deployment-range estimate, ratio optimization.
"""

from typing import Optional


def register_shift_tools(mcp):
    """Register correlation and ratio-optimization tools with the MCP server."""

    @mcp.tool(description="Pearson rho, conditional difference c, and eta band for joint ratios (w11, w10, w01, w00).")
    async def correlation_report(
        w11: float, w10: float, w01: float, w00: float, gamma_y: float = 0.0, gamma_z: float = 0.0
    ) -> str:
        """Correlation statistics for joint (y, z) ratios.

        Args:
            w11, w10, w01, w00: Class ratios summing to 1.
            gamma_y: Allowed drift of Pr(y=1) for the eta band.
            gamma_z: Allowed drift of Pr(z=1) for the eta band.
        """
        from ..core.errors import FairShiftError
        from ..core.types import JointRatios
        from ..stats.fairness import alignment, correlation

        try:
            ratios = JointRatios(w11, w10, w01, w00)
            report = correlation(ratios, gamma_y, gamma_z)
        except FairShiftError as e:
            return e.describe()

        return (
            f"rho = {report.rho:.6f}\n"
            f"c = {report.c:.6f}\n"
            f"alignment Pr(y=1|z=1) + Pr(y=0|z=0) = {alignment(ratios):.6f}\n"
            f"eta band = [{report.eta_low:.6f}, {report.eta_high:.6f}]\n"
        )

    @mcp.tool(description="Estimate the deployment correlation range [alpha, beta] from a labeled CSV sample.")
    async def estimate_shift(
        path: str, delta: float = 0.05, label_column: str = "y", group_column: str = "z"
    ) -> str:
        """Confidence interval for c at level 1 - delta.

        Args:
            path: CSV sample from the deployment distribution.
            delta: Failure probability in (0, 1).
        """
        from ..core.errors import FairShiftError
        from ..data.io import load_csv
        from ..stats.estimator import estimate

        try:
            data = load_csv(path, label_column, group_column)
            shift = estimate(data.labels, data.groups, delta)
        except FairShiftError as e:
            return e.describe()

        return (
            f"c_hat = {shift.c_hat:.4f} (n1={shift.n1}, n0={shift.n0})\n"
            f"[alpha, beta] = [{shift.alpha:.4f}, {shift.beta:.4f}] at confidence {shift.confidence:.3f}\n"
        )

    @mcp.tool(description="Per-group sample size needed for an interval half-width eps at confidence 1 - delta.")
    async def required_sample_size(eps: float, delta: float = 0.05) -> str:
        """Sample size per group for a given interval half-width.

        Args:
            eps: Target half-width in (0, 2].
            delta: Failure probability in (0, 1).
        """
        from ..core.errors import FairShiftError
        from ..stats.estimator import required_samples

        try:
            n = required_samples(eps, delta)
        except FairShiftError as e:
            return e.describe()
        return f"Required samples per group: {n}"

    @mcp.tool(description="Closest class ratios with c in [alpha, beta] within marginal bands (SDP or grid search).")
    async def optimize_class_ratios(
        w11: float,
        w10: float,
        w01: float,
        w00: float,
        alpha: float,
        beta: Optional[float] = None,
        gamma_y: float = 0.1,
        gamma_z: float = 0.1,
        method: str = "sdp",
        resolution: int = 200,
    ) -> str:
        """Optimize target class ratios.

        Args:
            w11, w10, w01, w00: Current class ratios.
            alpha: Lower end of the target c range.
            beta: Upper end (defaults to alpha).
            method: "sdp" (relaxation with repair) or "grid" (exhaustive oracle).
            resolution: Grid resolution for the oracle.
        """
        from ..core.errors import FairShiftError
        from ..core.types import JointRatios
        from ..optim import RatioProblem, grid_oracle, optimize_ratios
        from ..stats.estimator import ShiftRange

        try:
            problem = RatioProblem(
                JointRatios(w11, w10, w01, w00), ShiftRange.given(alpha, beta), gamma_y, gamma_z
            )
            if method == "grid":
                solution = grid_oracle(problem, resolution=resolution)
            elif method == "sdp":
                solution = optimize_ratios(problem)
            else:
                return f"Unknown method '{method}'. Use 'sdp' or 'grid'."
        except FairShiftError as e:
            return e.describe()

        r = solution.ratios
        output = f"Method: {solution.method}\n"
        output += f"Ratios: w11={r.w11:.4f}, w10={r.w10:.4f}, w01={r.w01:.4f}, w00={r.w00:.4f}\n"
        output += f"Achieved c: {solution.achieved_c:.4f}\n"
        output += f"Objective: {solution.objective:.6g}\n"
        if solution.relaxation_lower_bound is not None:
            output += f"Relaxation lower bound: {solution.relaxation_lower_bound:.6g}\n"
        return output
