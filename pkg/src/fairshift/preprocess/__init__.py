"""
Pre-processing module - correlation-shift resampling, reweighing, and transport cost.
"""

from .mindist import SplitWeights, evaluate_candidates, min_dist_change, split_classes
from .pipeline import PreprocessResult, preprocess
from .reweighing import reweighing_weights
from .transport import TransportPlan, transport_plan, wasserstein_cost

__all__ = [
    "PreprocessResult",
    "SplitWeights",
    "TransportPlan",
    "evaluate_candidates",
    "min_dist_change",
    "preprocess",
    "reweighing_weights",
    "split_classes",
    "transport_plan",
    "wasserstein_cost",
]
