"""JSON encoding of matrices.

A matrix file looks like::

    {"rows": 2, "cols": 3, "data": [["1", "2", "3"], ["4", "5", "-2/3"]]}

Entries are integer or fraction strings (plain JSON integers are accepted as
well). Output is always canonical: the same object serializes to the same
bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .matrix import Matrix, to_rational


class MatrixParseError(ValueError):
    """Base class for malformed matrix input."""


class MalformedJSONError(MatrixParseError):
    def __init__(self, source: str, err: json.JSONDecodeError):
        super().__init__(f"{source}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}")
        self.line = err.lineno
        self.column = err.colno


class DimensionError(MatrixParseError):
    """``rows``/``cols`` missing, negative, or disagreeing with ``data``."""


class RaggedRowsError(MatrixParseError):
    """A row of ``data`` has the wrong number of entries."""


class EntryParseError(MatrixParseError):
    """An entry is not an integer or fraction."""


def parse_matrix(obj: Any, source: str = "<matrix>") -> Matrix:
    if not isinstance(obj, dict):
        raise DimensionError(f"{source}: expected an object with rows, cols and data")
    for key in ("rows", "cols"):
        value = obj.get(key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise DimensionError(f"{source}: field {key!r} must be a non-negative integer, got {value!r}")
    rows, cols = obj["rows"], obj["cols"]
    data = obj.get("data")
    if not isinstance(data, list):
        raise DimensionError(f"{source}: field 'data' must be a list of rows")
    if len(data) != rows:
        raise DimensionError(f"{source}: 'rows' is {rows} but 'data' has {len(data)} rows")
    grid = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise RaggedRowsError(f"{source}: data[{i}] should have {cols} entries, got {got}")
        parsed = []
        for j, entry in enumerate(row):
            try:
                parsed.append(to_rational(entry))
            except (TypeError, ValueError) as exc:
                raise EntryParseError(f"{source}: data[{i}][{j}]: {exc}") from None
        grid.append(parsed)
    return Matrix(rows, cols, grid)


def parse_matrix_file(path: str | Path) -> Matrix:
    path = Path(path)
    text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedJSONError(str(path), err) from None
    return parse_matrix(obj, str(path))


def _encode(obj: Any, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_encode(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        # lists of scalars (matrix rows, name lists) stay on one line
        if all(not isinstance(x, (dict, list)) for x in obj):
            return json.dumps(obj)
        items = [f"{pad}  {_encode(x, indent + 1)}" for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(obj: Any) -> str:
    """Deterministic JSON text with matrix rows kept on one line."""
    return _encode(obj, 0) + "\n"


def write_matrix_file(path: str | Path, m: Matrix) -> None:
    Path(path).write_text(dumps(m.to_json()))
