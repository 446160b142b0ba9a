"""
Utilities module - serialization helpers.
"""

from .jsonio import dump_json, dumps, load_json_arg, to_jsonable

__all__ = [
    "dump_json",
    "dumps",
    "load_json_arg",
    "to_jsonable",
]
