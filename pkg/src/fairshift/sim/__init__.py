"""
Simulation module - synthetic data, shifted test sets, and the classifier frontier.
"""

from .frontier import (
    FrontierPoint,
    best_accuracy,
    evaluate_rates,
    frontier,
    rate_grid,
    reevaluate,
    sample_classifier,
)
from .synthetic import (
    SyntheticSpec,
    calibrate_rotation,
    generate_synthetic,
    group_probability,
    make_test_rotated,
)
from .testsets import make_test_resampled

__all__ = [
    "FrontierPoint",
    "SyntheticSpec",
    "best_accuracy",
    "calibrate_rotation",
    "evaluate_rates",
    "frontier",
    "generate_synthetic",
    "group_probability",
    "make_test_resampled",
    "make_test_rotated",
    "rate_grid",
    "reevaluate",
    "sample_classifier",
]
