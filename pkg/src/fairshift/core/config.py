"""
Core configuration - environment variables, paths, and numeric defaults.
"""

import logging
import os
from pathlib import Path
from typing import Optional

# Environment variables for configuration
WORKERS = int(os.environ.get("FAIRSHIFT_WORKERS", 1))
OUTPUT_DIR = Path(os.environ.get("FAIRSHIFT_OUTPUT_DIR", "runs"))
LOG_LEVEL = os.environ.get("FAIRSHIFT_LOG_LEVEL", "INFO")

# MCP HTTP transport
MCP_HOST = os.environ.get("MCP_HOST", "0.0.0.0")
MCP_PORT = int(os.environ.get("MCP_PORT", 8000))

# Solver defaults
SDP_MAX_ITERS = 200
SDP_GAP_TOL = 1e-8
SDP_FEAS_TOL = 1e-8
REPAIR_C_TOL = 1e-3
ORACLE_RESOLUTION = 200

# Experiment defaults
DEFAULT_GAMMA = 0.1
DEFAULT_SEEDS = (0, 1, 2, 3, 4)
WASSERSTEIN_SUBSAMPLE = 256

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: bool = False) -> None:
    """Configure root logging for entry points.

    Args:
        verbose: Force DEBUG level regardless of FAIRSHIFT_LOG_LEVEL.
    """
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT)


def get_output_dir(override: Optional[Path] = None) -> Path:
    """Get the directory where run reports are written.

    Returns:
        ``override`` if given, else FAIRSHIFT_OUTPUT_DIR (default ./runs), created if missing.
    """
    output_dir = Path(override) if override is not None else OUTPUT_DIR
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir


def get_worker_count(override: Optional[int] = None) -> int:
    """Number of worker threads for independent experiment cells."""
    workers = WORKERS if override is None else override
    return max(1, int(workers))
