"""
Errors - exception hierarchy shared by every fairshift module.

Each error carries a stable ``code`` string so callers (CLI, harness, MCP tools)
can report failures without matching on message text.
"""

from typing import Optional


class FairShiftError(Exception):
    """Base exception for fairshift errors."""

    code = "fairshift-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"

    def describe(self) -> str:
        """One-line text for tool responses."""
        return f"Error [{self.code}]: {self.message}"


# =============================================================================
# Dataset errors
# =============================================================================

class InvalidDatasetError(FairShiftError):
    """Columns have mismatched lengths or labels/groups are not binary."""
    code = "invalid-dataset"


class EmptyDatasetError(FairShiftError):
    """Dataset has no rows."""
    code = "empty-dataset"


class EmptyClassError(FairShiftError):
    """A (y, z) class needed with positive mass has no rows."""
    code = "empty-class"


class InvalidRatiosError(FairShiftError):
    """Joint ratios are outside [0, 1] or do not sum to 1."""
    code = "invalid-ratios"


class DegenerateWeightsError(FairShiftError):
    """Sample weights sum to zero."""
    code = "degenerate-weights"


class ParseError(FairShiftError):
    """A CSV file could not be parsed."""
    code = "parse-error"

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row


class WidthMismatchError(FairShiftError):
    """Feature width differs from what a model was trained on."""
    code = "width-mismatch"


# =============================================================================
# Statistics errors
# =============================================================================

class DegenerateMarginalError(FairShiftError):
    """A label or group marginal is 0 or 1, or an interval endpoint is undefined."""
    code = "degenerate-marginal"


class SingleGroupError(FairShiftError):
    """Only one sensitive group is present."""
    code = "single-group"


class EmptyCellError(FairShiftError):
    """A (y, z) cell required by a bound is empty."""
    code = "empty-cell"


class UndefinedPPError(FairShiftError):
    """Predictive parity is undefined for every label value."""
    code = "undefined-pp"


class GroupMissingError(FairShiftError):
    """A deployment sample lacks one of the groups."""
    code = "group-missing"


class InvalidDeltaError(FairShiftError):
    """Confidence parameter outside (0, 1)."""
    code = "invalid-delta"


# =============================================================================
# Optimization errors
# =============================================================================

class SdpNonConvergedError(FairShiftError):
    """Interior-point solver stopped without a certificate."""
    code = "sdp-nonconverged"

    def __init__(self, message: str, residuals: Optional[dict] = None):
        super().__init__(message)
        self.residuals = residuals or {}


class InfeasibleError(FairShiftError):
    """No joint ratios satisfy the correlation range and marginal bands."""
    code = "infeasible"


class ExtractionFailedError(FairShiftError):
    """Relaxed solution could not be turned into feasible ratios."""
    code = "extraction-failed"

    def __init__(self, message: str, residuals: Optional[dict] = None):
        super().__init__(message)
        self.residuals = residuals or {}


class UnsplittableClassError(FairShiftError):
    """A class has fewer than two rows and cannot be split by a feature median."""
    code = "unsplittable-class"


# =============================================================================
# Training and configuration errors
# =============================================================================

class DivergedError(FairShiftError):
    """Training produced a non-finite loss."""
    code = "diverged"

    def __init__(self, message: str, epoch: Optional[int] = None):
        super().__init__(message)
        self.epoch = epoch


class ConfigError(FairShiftError):
    """Experiment or trainer configuration is invalid."""
    code = "invalid-config"


class InvalidArgumentError(FairShiftError):
    """An argument is outside its documented domain."""
    code = "invalid-argument"
