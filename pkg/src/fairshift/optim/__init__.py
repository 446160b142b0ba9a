"""
Optimization module - class-ratio search via SDP relaxation, repair, and grid oracle.
"""

from .oracle import grid_oracle
from .problem import RatioProblem, RatioSolution, conditional_difference
from .repair import repair
from .sdp import (
    SdpInstance,
    build_sdp,
    correlation_form,
    extract_solution,
    has_feasible_ratios,
    optimize_ratios,
    solve_sdp,
)

__all__ = [
    "RatioProblem",
    "RatioSolution",
    "SdpInstance",
    "build_sdp",
    "conditional_difference",
    "correlation_form",
    "extract_solution",
    "grid_oracle",
    "has_feasible_ratios",
    "optimize_ratios",
    "repair",
    "solve_sdp",
]
