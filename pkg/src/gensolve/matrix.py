"""Exact dense matrices over the rationals.

Entries are :class:`fractions.Fraction`, so every product, inverse and
elimination step is exact. Matrices are immutable; all operations return
new objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class ShapeError(ValueError):
    """Operand shapes do not compose."""


class SingularMatrixError(ValueError):
    """Raised by :func:`mat_inverse` when no pivot exists in some column."""

    def __init__(self, column: int):
        super().__init__(f"matrix is singular: no pivot in column {column}")
        self.column = column


def to_rational(value: Any) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Strings must look like ``"5"`` or ``"-2/3"``; decimal strings and floats
    are rejected so that nothing inexact leaks in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not a rational entry: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError(f"not an integer or fraction string: {value!r}")
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise TypeError(f"not a rational entry: {value!r}")


class Matrix:
    """Immutable ``rows x cols`` matrix of Fractions, stored row-major.

    Zero-sized shapes (``0 x n`` and ``m x 0``) are allowed; they arise as
    empty blocks when a rank equals one of the dimensions.
    """

    __slots__ = ("_rows", "_cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable[Any]] = ()):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        grid = tuple(tuple(to_rational(x) for x in row) for row in data)
        if not grid and rows:
            grid = tuple((Fraction(0),) * cols for _ in range(rows))
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise ShapeError(f"data does not match declared shape {rows}x{cols}")
        self._rows = rows
        self._cols = cols
        self._data = grid
        self._hash = None

    @classmethod
    def _wrap(cls, rows: int, cols: int, grid: tuple) -> "Matrix":
        # trusted constructor: grid is already a tuple of tuples of Fractions
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._cols = cols
        obj._data = grid
        obj._hash = None
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Matrix":
        """Build from a non-empty list of rows; use :meth:`zeros` for empty shapes."""
        rows = list(rows)
        if not rows:
            raise ShapeError("from_rows needs at least one row; use Matrix.zeros for 0xn")
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def column(cls, values: Sequence[Any]) -> "Matrix":
        return cls(len(values), 1, [[v] for v in values])

    @classmethod
    def row_vector(cls, values: Sequence[Any]) -> "Matrix":
        return cls(1, len(values), [list(values)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        zero = Fraction(0)
        return cls._wrap(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def entries(self) -> Iterable[Fraction]:
        """Entries in row-major order."""
        for row in self._data:
            yield from row

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def transpose(self) -> "Matrix":
        grid = tuple(zip(*self._data)) if self._rows else ()
        if not grid and self._cols:
            grid = tuple(() for _ in range(self._cols))
        return Matrix._wrap(self._cols, self._rows, grid)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows ``r0:r1`` and columns ``c0:c1``."""
        grid = tuple(row[c0:c1] for row in self._data[r0:r1])
        return Matrix._wrap(len(grid), max(0, min(c1, self._cols) - c0), grid)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self._rows != other._rows:
            raise ShapeError(f"cannot hstack {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        grid = tuple(a + b for a, b in zip(self._data, other._data))
        return Matrix._wrap(self._rows, self._cols + other._cols, grid)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self._cols != other._cols:
            raise ShapeError(f"cannot vstack {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        return Matrix._wrap(self._rows + other._rows, self._cols, self._data + other._data)

    def reshape(self, rows: int, cols: int) -> "Matrix":
        flat = list(self.entries())
        if rows * cols != len(flat):
            raise ShapeError(f"cannot reshape {self._rows}x{self._cols} to {rows}x{cols}")
        return Matrix._wrap(rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        grid = tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self._data, other._data))
        return Matrix._wrap(self._rows, self._cols, grid)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self._rows, self._cols, tuple(tuple(-x for x in row) for row in self._data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Any) -> "Matrix":
        f = to_rational(factor)
        return Matrix._wrap(self._rows, self._cols, tuple(tuple(f * x for x in row) for row in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rows, self._cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"Matrix({self._rows}x{self._cols}, [{body}])"

    def to_json(self) -> dict:
        return {
            "rows": self._rows,
            "cols": self._cols,
            "data": [[str(x) for x in row] for row in self._data],
        }


def mat_mul(lhs: Matrix, rhs: Matrix) -> Matrix:
    if lhs.cols != rhs.rows:
        raise ShapeError(f"cannot multiply {lhs.rows}x{lhs.cols} by {rhs.rows}x{rhs.cols}")
    rcols = rhs.transpose()._data if rhs.cols else ()
    zero = Fraction(0)
    grid = tuple(
        tuple(sum((a * b for a, b in zip(row, col) if a and b), zero) for col in rcols) if rcols else ()
        for row in lhs._data
    )
    return Matrix._wrap(lhs.rows, rhs.cols, grid)


def mat_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse. Raises :class:`SingularMatrixError` on the first pivotless column."""
    if m.rows != m.cols:
        raise ShapeError(f"cannot invert non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    work = m.tolist()
    inv = Matrix.identity(n).tolist()
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(col)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        if p != 1:
            work[col] = [x / p for x in work[col]]
            inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            f = work[r][col]
            if r != col and f != 0:
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return Matrix(n, n, inv)
