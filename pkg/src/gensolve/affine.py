"""Affine expressions in named free parameters, and matrices of them.

Only degree <= 1 is representable: a product of two parametric matrices is
rejected with :class:`DegreeError` instead of producing quadratic terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .matrix import Matrix, ShapeError, to_rational


class DegreeError(ValueError):
    """Both factors of a product carry parameters."""


class UnboundParameterError(KeyError):
    def __init__(self, param: "Param"):
        super().__init__(f"no value assigned to parameter {param.name}")
        self.param = param

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True, order=True)
class Param:
    """A free parameter. Ordering (and printing order) follows ``ordinal``."""

    ordinal: int
    name: str

    def __str__(self) -> str:
        return self.name


_ZERO = Fraction(0)


class AffineExpr:
    """``constant + sum(coef * param)`` with no zero coefficients stored."""

    __slots__ = ("constant", "_terms", "_hash")

    def __init__(self, constant: Any = 0, terms: Mapping[Param, Any] | None = None):
        self.constant = to_rational(constant)
        items = ((p, to_rational(c)) for p, c in (terms or {}).items())
        self._terms = tuple(sorted(((p, c) for p, c in items if c != 0), key=lambda pc: pc[0]))
        self._hash = None

    @classmethod
    def _from_dict(cls, constant: Fraction, terms: dict) -> "AffineExpr":
        obj = cls.__new__(cls)
        obj.constant = constant
        obj._terms = tuple(sorted(((p, c) for p, c in terms.items() if c != 0), key=lambda pc: pc[0]))
        obj._hash = None
        return obj

    @classmethod
    def of(cls, param: Param) -> "AffineExpr":
        return cls._from_dict(_ZERO, {param: Fraction(1)})

    @property
    def terms(self) -> dict[Param, Fraction]:
        return dict(self._terms)

    def coefficient(self, param: Param) -> Fraction:
        for p, c in self._terms:
            if p == param:
                return c
        return _ZERO

    @property
    def params(self) -> tuple[Param, ...]:
        return tuple(p for p, _ in self._terms)

    def is_constant(self) -> bool:
        return not self._terms

    def is_zero(self) -> bool:
        return not self._terms and self.constant == 0

    def __add__(self, other: Any) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            try:
                other = AffineExpr(other)
            except TypeError:
                return NotImplemented
        terms = dict(self._terms)
        for p, c in other._terms:
            terms[p] = terms.get(p, _ZERO) + c
        return AffineExpr._from_dict(self.constant + other.constant, terms)

    __radd__ = __add__

    def __neg__(self) -> "AffineExpr":
        return AffineExpr._from_dict(-self.constant, {p: -c for p, c in self._terms})

    def __sub__(self, other: Any) -> "AffineExpr":
        return self + (-other)

    def __rsub__(self, other: Any) -> "AffineExpr":
        return (-self) + other

    def __mul__(self, scalar: Any) -> "AffineExpr":
        if isinstance(scalar, AffineExpr):
            if scalar.is_constant():
                scalar = scalar.constant
            elif self.is_constant():
                return scalar * self.constant
            else:
                raise DegreeError("product of two non-constant affine expressions")
        s = to_rational(scalar)
        if s == 0:
            return AffineExpr()
        return AffineExpr._from_dict(self.constant * s, {p: c * s for p, c in self._terms})

    __rmul__ = __mul__

    def evaluate(self, assignment: Mapping[Any, Any]) -> Fraction:
        total = self.constant
        for p, c in self._terms:
            total += c * _lookup(assignment, p)
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AffineExpr):
            return self.constant == other.constant and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return not self._terms and self.constant == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.constant, self._terms))
        return self._hash

    def __str__(self) -> str:
        parts: list[str] = []
        if self.constant != 0 or not self._terms:
            parts.append(str(self.constant))
        for p, c in self._terms:
            if not parts:
                parts.append(f"{c}*{p.name}")
            elif c < 0:
                parts.append(f"- {-c}*{p.name}")
            else:
                parts.append(f"+ {c}*{p.name}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"AffineExpr({str(self)!r})"


def _lookup(assignment: Mapping[Any, Any], param: Param) -> Fraction:
    if param in assignment:
        return to_rational(assignment[param])
    if param.name in assignment:
        return to_rational(assignment[param.name])
    raise UnboundParameterError(param)


_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)(?:\*([A-Za-z_][A-Za-z0-9_]*))?")


def parse_affine(text: str, params: Mapping[str, Param]) -> AffineExpr:
    """Inverse of ``str(AffineExpr)``; ``params`` maps names to parameters."""
    s = text.strip()
    pos = 0
    constant = _ZERO
    terms: dict[Param, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos or (not first and not m.group(1)):
            raise ValueError(f"cannot parse affine expression {text!r} at offset {pos}")
        sign, number, name = m.groups()
        value = to_rational(number)
        if sign == "-":
            value = -value
        if name is None:
            constant += value
        else:
            if name not in params:
                raise ValueError(f"unknown parameter {name!r} in {text!r}")
            p = params[name]
            terms[p] = terms.get(p, _ZERO) + value
        first = False
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    if first:
        raise ValueError("empty affine expression")
    return AffineExpr._from_dict(constant, terms)


class ParamMatrix:
    """Immutable matrix whose entries are :class:`AffineExpr`."""

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable[Any]] = ()):
        grid = tuple(tuple(x if isinstance(x, AffineExpr) else AffineExpr(x) for x in row) for row in data)
        if not grid and rows:
            zero = AffineExpr()
            grid = tuple((zero,) * cols for _ in range(rows))
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise ShapeError(f"data does not match declared shape {rows}x{cols}")
        self._rows = rows
        self._cols = cols
        self._data = grid

    @classmethod
    def _wrap(cls, rows: int, cols: int, grid: tuple) -> "ParamMatrix":
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._cols = cols
        obj._data = grid
        return obj

    @classmethod
    def from_matrix(cls, m: Matrix) -> "ParamMatrix":
        return cls._wrap(m.rows, m.cols, tuple(tuple(AffineExpr._from_dict(x, {}) for x in m.row(i)) for i in range(m.rows)))

    @classmethod
    def from_params(cls, grid: Sequence[Sequence[Param]], cols: int | None = None) -> "ParamMatrix":
        rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if rows else 0
        return cls(rows, cols, [[AffineExpr.of(p) for p in row] for row in grid])

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    def __getitem__(self, index: tuple[int, int]) -> AffineExpr:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> tuple[AffineExpr, ...]:
        return self._data[i]

    def entries(self) -> Iterable[AffineExpr]:
        for row in self._data:
            yield from row

    def params(self) -> tuple[Param, ...]:
        seen: set[Param] = set()
        for e in self.entries():
            seen.update(e.params)
        return tuple(sorted(seen))

    def is_constant(self) -> bool:
        return all(e.is_constant() for e in self.entries())

    def constant_part(self) -> Matrix:
        return Matrix._wrap(self._rows, self._cols, tuple(tuple(e.constant for e in row) for row in self._data))

    def transpose(self) -> "ParamMatrix":
        grid = tuple(zip(*self._data)) if self._rows else ()
        if not grid and self._cols:
            grid = tuple(() for _ in range(self._cols))
        return ParamMatrix._wrap(self._cols, self._rows, grid)

    @property
    def T(self) -> "ParamMatrix":
        return self.transpose()

    def hstack(self, other: "ParamMatrix | Matrix") -> "ParamMatrix":
        other = as_param_matrix(other)
        if self._rows != other._rows:
            raise ShapeError(f"cannot hstack {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        return ParamMatrix._wrap(self._rows, self._cols + other._cols, tuple(a + b for a, b in zip(self._data, other._data)))

    def vstack(self, other: "ParamMatrix | Matrix") -> "ParamMatrix":
        other = as_param_matrix(other)
        if self._cols != other._cols:
            raise ShapeError(f"cannot vstack {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        return ParamMatrix._wrap(self._rows + other._rows, self._cols, self._data + other._data)

    def __add__(self, other: "ParamMatrix | Matrix") -> "ParamMatrix":
        other = as_param_matrix(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self._rows}x{self._cols} and {other._rows}x{other._cols}")
        return ParamMatrix._wrap(self._rows, self._cols, tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "ParamMatrix | Matrix") -> "ParamMatrix":
        other = as_param_matrix(other)
        return self + ParamMatrix._wrap(other._rows, other._cols, tuple(tuple(-x for x in row) for row in other._data))

    def __matmul__(self, other: "ParamMatrix | Matrix") -> "ParamMatrix":
        return pm_mul(self, other)

    def __rmatmul__(self, other: Matrix) -> "ParamMatrix":
        return pm_mul(other, self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            other = ParamMatrix.from_matrix(other)
        if not isinstance(other, ParamMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"ParamMatrix({self._rows}x{self._cols}, [{body}])"

    def to_json(self) -> dict:
        return {
            "rows": self._rows,
            "cols": self._cols,
            "params": [p.name for p in self.params()],
            "data": [[str(x) for x in row] for row in self._data],
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "ParamMatrix":
        """Read the encoding produced by :meth:`to_json`; ordinals follow the ``params`` list."""
        names = obj.get("params", [])
        params = {name: Param(k, name) for k, name in enumerate(names, start=1)}
        return cls(obj["rows"], obj["cols"], [[parse_affine(x, params) for x in row] for row in obj["data"]])


def as_param_matrix(x: "ParamMatrix | Matrix") -> ParamMatrix:
    if isinstance(x, ParamMatrix):
        return x
    if isinstance(x, Matrix):
        return ParamMatrix.from_matrix(x)
    raise TypeError(f"expected Matrix or ParamMatrix, got {type(x).__name__}")


def _combine(pairs: Iterable[tuple[Fraction, AffineExpr]]) -> AffineExpr:
    constant = _ZERO
    terms: dict[Param, Fraction] = {}
    for s, e in pairs:
        if not s:
            continue
        constant += s * e.constant
        for p, c in e._terms:
            terms[p] = terms.get(p, _ZERO) + s * c
    return AffineExpr._from_dict(constant, terms)


def pm_mul(lhs: "ParamMatrix | Matrix", rhs: "ParamMatrix | Matrix") -> ParamMatrix:
    """Product where at most one factor has parameters."""
    if lhs.cols != rhs.rows:
        raise ShapeError(f"cannot multiply {lhs.rows}x{lhs.cols} by {rhs.rows}x{rhs.cols}")
    lhs_const = isinstance(lhs, Matrix) or lhs.is_constant()
    rhs_const = isinstance(rhs, Matrix) or rhs.is_constant()
    if not lhs_const and not rhs_const:
        raise DegreeError("both factors contain parameters; the product would not be affine")
    if isinstance(lhs, Matrix) and isinstance(rhs, Matrix):
        return ParamMatrix.from_matrix(lhs @ rhs)

    if lhs_const:
        scal = lhs.constant_part() if isinstance(lhs, ParamMatrix) else lhs
        expr = as_param_matrix(rhs)
        ecols = expr.transpose()._data
        grid = tuple(
            tuple(_combine(zip(scal.row(i), ecols[j])) for j in range(rhs.cols))
            for i in range(lhs.rows)
        )
    else:
        scal = rhs.constant_part() if isinstance(rhs, ParamMatrix) else rhs
        scols = scal.transpose()
        grid = tuple(
            tuple(_combine(zip(scols.row(j), lhs.row(i))) for j in range(rhs.cols))
            for i in range(lhs.rows)
        )
    return ParamMatrix._wrap(lhs.rows, rhs.cols, grid)


def instantiate(pm: ParamMatrix, assignment: Mapping[Any, Any]) -> Matrix:
    """Evaluate every entry; keys may be :class:`Param` objects or their names."""
    return Matrix(pm.rows, pm.cols, [[e.evaluate(assignment) for e in pm.row(i)] for i in range(pm.rows)])


def param_coefficient_matrix(pm: ParamMatrix) -> tuple[Matrix, list[Param]]:
    """Coefficients of each parameter in each entry, entries flattened row-major.

    Row ``r`` is entry ``r`` of the flattening, column ``j`` is ``params[j]``.
    The constant part is not included.
    """
    params = list(pm.params())
    index = {p: j for j, p in enumerate(params)}
    rows = []
    for e in pm.entries():
        row = [_ZERO] * len(params)
        for p, c in e._terms:
            row[index[p]] = c
        rows.append(row)
    return Matrix(len(rows), len(params), rows), params

