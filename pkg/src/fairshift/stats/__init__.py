"""
Statistics module - correlation, disparities, incompatibility bounds, and shift estimation.
"""

from .bounds import dpeo_bound_lhs, eopp_bound_lhs, ppdp_bound_lhs
from .estimator import CoverageReport, ShiftRange, coverage_experiment, estimate, required_samples
from .fairness import (
    CorrelationReport,
    DisparityReport,
    alignment,
    correlation,
    correlation_shift,
    disparities,
    eta_band,
)

__all__ = [
    "CorrelationReport",
    "CoverageReport",
    "DisparityReport",
    "ShiftRange",
    "alignment",
    "correlation",
    "correlation_shift",
    "coverage_experiment",
    "disparities",
    "dpeo_bound_lhs",
    "eopp_bound_lhs",
    "estimate",
    "eta_band",
    "ppdp_bound_lhs",
    "required_samples",
]
