"""
Core module - shared types, errors, and configuration.
"""

from .config import configure_logging, get_output_dir, get_worker_count
from .errors import (
    ConfigError,
    DegenerateMarginalError,
    DegenerateWeightsError,
    DivergedError,
    EmptyCellError,
    EmptyClassError,
    EmptyDatasetError,
    ExtractionFailedError,
    FairShiftError,
    GroupMissingError,
    InfeasibleError,
    InvalidArgumentError,
    InvalidDatasetError,
    InvalidDeltaError,
    InvalidRatiosError,
    ParseError,
    SdpNonConvergedError,
    SingleGroupError,
    UndefinedPPError,
    UnsplittableClassError,
    WidthMismatchError,
)
from .types import CELLS, JointRatios, SampleWeights, TabularDataset, as_weights, cell_index

__all__ = [
    # Types
    "CELLS",
    "JointRatios",
    "SampleWeights",
    "TabularDataset",
    "as_weights",
    "cell_index",
    # Config
    "configure_logging",
    "get_output_dir",
    "get_worker_count",
    # Errors
    "ConfigError",
    "DegenerateMarginalError",
    "DegenerateWeightsError",
    "DivergedError",
    "EmptyCellError",
    "EmptyClassError",
    "EmptyDatasetError",
    "ExtractionFailedError",
    "FairShiftError",
    "GroupMissingError",
    "InfeasibleError",
    "InvalidArgumentError",
    "InvalidDatasetError",
    "InvalidDeltaError",
    "InvalidRatiosError",
    "ParseError",
    "SdpNonConvergedError",
    "SingleGroupError",
    "UndefinedPPError",
    "UnsplittableClassError",
    "WidthMismatchError",
]
