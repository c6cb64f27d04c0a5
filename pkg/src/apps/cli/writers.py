"""CSV and JSON writers with a reproducible header.

Files carry no timestamps, so a fixed configuration and seed always give
the same bytes. Floats use ``FLOAT_DIGITS`` significant digits (17 by
default, enough to round-trip a double).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, TextIO

import numpy as np

from configs.config import get_settings

# Settings that never influence a computed number.
_PRESENTATION_SETTINGS = {"PROJECT_NAME", "VERSION", "OUTPUT_DIR", "FLOAT_DIGITS", "DEFAULT_SEED"}


@dataclass(frozen=True)
class Column:
    name: str
    unit: str
    description: str


@dataclass
class Table:
    """Rows of one command's output in input order, plus ``#`` footer entries."""

    columns: Sequence[Column]
    rows: List[Sequence[Any]] = field(default_factory=list)
    footer: Dict[str, Any] = field(default_factory=dict)


def format_value(value: Any, digits: Optional[int] = None) -> str:
    """Deterministic text form: floats in ``digits`` significant digits, enums by value."""
    if value is None:
        return "none"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        n = digits or get_settings().FLOAT_DIGITS
        return format(float(value), f".{n}g")
    if isinstance(value, (list, tuple)):
        return "[" + " ".join(format_value(v, digits) for v in value) + "]"
    return str(value)


def numeric_settings() -> Dict[str, Any]:
    """Settings fields that enter the numerics, echoed into every header."""
    data = get_settings().model_dump()
    return {k: v for k, v in sorted(data.items()) if k not in _PRESENTATION_SETTINGS}


def header_lines(command: str, parameters: Mapping[str, Any], seed: int) -> List[str]:
    cfg = get_settings()
    lines = [f"{cfg.PROJECT_NAME} {cfg.VERSION}", f"command: {command}", f"seed: {seed}"]
    lines += [f"param {k}: {format_value(v)}" for k, v in parameters.items()]
    lines += [f"setting {k}: {format_value(v)}" for k, v in numeric_settings().items()]
    return lines


def render_csv(table: Table, *, command: str, parameters: Mapping[str, Any], seed: int) -> str:
    """Full CSV text: ``#`` header, column line, rows, ``#`` footer."""
    buffer = io.StringIO()
    for line in header_lines(command, parameters, seed):
        buffer.write(f"# {line}\n")
    for col in table.columns:
        buffer.write(f"# column {col.name} [{col.unit}]: {col.description}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([col.name for col in table.columns])
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    for key, value in table.footer.items():
        buffer.write(f"# {key} = {format_value(value)}\n")
    return buffer.getvalue()


def _jsonable(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_json(result: Mapping[str, Any], *, command: str, parameters: Mapping[str, Any], seed: int) -> str:
    """Sorted-key JSON holding the same echo as the CSV header."""
    cfg = get_settings()
    document = {
        "tool": f"{cfg.PROJECT_NAME} {cfg.VERSION}",
        "command": command,
        "seed": seed,
        "parameters": _jsonable(dict(parameters)),
        "settings": _jsonable(numeric_settings()),
        "result": _jsonable(dict(result)),
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Text stream for ``path``; ``-`` means stdout. Parent directories are created."""
    if path == "-" or path is None:
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        yield handle


def default_output(command: str, suffix: str) -> str:
    return str(Path(get_settings().OUTPUT_DIR) / f"{command}.{suffix}")


__all__ = [
    "Column",
    "Table",
    "format_value",
    "numeric_settings",
    "header_lines",
    "render_csv",
    "render_json",
    "open_output",
    "default_output",
]
