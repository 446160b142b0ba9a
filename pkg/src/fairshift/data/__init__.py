"""
Data module - dataset ratios, weighting, resampling, and CSV I/O.
"""

from .io import load_csv, write_csv
from .ratios import class_weights, joint_ratios, weighted_resample

__all__ = [
    "class_weights",
    "joint_ratios",
    "load_csv",
    "weighted_resample",
    "write_csv",
]
