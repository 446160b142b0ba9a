#!/usr/bin/env python3
"""
fairshift - FastMCP Server for fair training under correlation shifts

Provides tools for:
- Dataset inspection (class ratios, label/group correlation, reweighing)
- Deployment shift estimation and target ratio optimization
- Pre-processing, training and evaluation of fair linear models
- Synthetic data, frontier summaries and config-driven experiments
"""

from fastmcp import FastMCP

from .core.config import MCP_HOST, MCP_PORT, configure_logging
from .tools import register_all_tools

mcp = FastMCP(
    "fairshift",
    instructions="""fairshift MCP Server - Fair training when the label/group correlation shifts.

Typical workflow:
1. dataset_ratios() - inspect the training data's class ratios and correlation c
2. estimate_shift() - estimate the deployment range [alpha, beta] from a labeled sample
3. optimize_class_ratios() - find target ratios inside that range
4. preprocess_csv() - resample the training data to the target ratios
5. train_model() / evaluate_model() - fit and score a fair linear model

All files are written to the output directory (FAIRSHIFT_OUTPUT_DIR).""",
)

register_all_tools(mcp)


# =============================================================================
# Entry Points
# =============================================================================

def run():
    """Entry point for STDIO transport (default)."""
    configure_logging()
    mcp.run()


def main():
    """Entry point for HTTP transport."""
    configure_logging()
    mcp.run(transport="sse", host=MCP_HOST, port=MCP_PORT)


if __name__ == "__main__":
    run()
