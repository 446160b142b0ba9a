"""
Tools module - MCP tool definitions organized by category.

All tools are registered with the FastMCP server in server.py.
"""

from .data import register_data_tools
from .experiments import register_experiment_tools
from .pipeline import register_pipeline_tools
from .shift import register_shift_tools


def register_all_tools(mcp):
    """Register all tools with the MCP server.

    Args:
        mcp: FastMCP server instance.
    """
    register_data_tools(mcp)
    register_shift_tools(mcp)
    register_pipeline_tools(mcp)
    register_experiment_tools(mcp)


__all__ = [
    "register_all_tools",
    "register_data_tools",
    "register_experiment_tools",
    "register_pipeline_tools",
    "register_shift_tools",
]
