"""
JSON helpers - numpy-aware serialization and JSON-or-path arguments.
"""

import dataclasses
import json
import math
from pathlib import Path
from typing import Any, Union

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Convert dataclasses, numpy values and paths into JSON-compatible objects.

    Non-finite floats become None so the output stays strict JSON.
    """
    if hasattr(value, "to_dict") and not isinstance(value, type):
        return to_jsonable(value.to_dict())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(dataclasses.asdict(value))
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, sort_keys=False)


def dump_json(value: Any, path: Union[str, Path]) -> Path:
    """Write ``value`` as indented JSON, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(value) + "\n", encoding="utf-8")
    return path


def load_json_arg(text_or_path: str) -> Any:
    """Parse inline JSON, or read it from a file when the argument is a path."""
    candidate = Path(text_or_path)
    if not text_or_path.lstrip().startswith(("{", "[")) and candidate.exists():
        return json.loads(candidate.read_text(encoding="utf-8"))
    return json.loads(text_or_path)
