"""Consistency tests and general solutions for linear systems and matrix equations.

Every solver works in the coordinates given by the rank normal form. For
``A X = C`` with ``Q A P = E_a`` the equation is solvable iff the last
``m - a`` rows of ``Q C`` vanish, and then

    X = P [[C'_a], [T]]

with ``C'_a`` the leading ``a`` rows of ``Q C`` and ``T`` a block of fresh
parameters. Row systems ``X B = D`` and the two-sided ``A X B = C`` follow
the same pattern with ``R B S = E_b``.

Fresh parameters are named ``t_1, t_2, ...`` in row-major order of the free
block and numbered per solve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .affine import AffineExpr, Param, ParamMatrix, instantiate, param_coefficient_matrix, pm_mul
from .matrix import Matrix, ShapeError
from .oneinv import rohde_inverse
from .rnf import RankDecomposition, decompose, decompose_for_row_system


class Status(str, enum.Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Solution:
    """Outcome of a solve.

    ``witness`` is the ``(row, col)`` of a nonzero entry of the transformed
    right-hand side (``Q c``, ``Q C``, ``D S`` or ``Q C S``) in a position
    that must vanish; it is None for consistent systems.
    """

    status: Status
    general: ParamMatrix | None = None
    params: tuple[Param, ...] = ()
    particular: Matrix | None = None
    witness: tuple[int, int] | None = None
    decompositions: tuple[RankDecomposition, ...] = field(default=(), repr=False, compare=False)

    @property
    def consistent(self) -> bool:
        return self.status is Status.CONSISTENT

    @property
    def shape(self) -> tuple[int, int] | None:
        return self.general.shape if self.general is not None else None

    def degrees_of_freedom(self) -> int:
        """Rank of the parameter-coefficient matrix: the dimension of the solution set."""
        if self.general is None:
            return 0
        coeffs, _ = param_coefficient_matrix(self.general)
        return decompose(coeffs).rank

    def at(self, assignment) -> Matrix:
        if self.general is None:
            raise ValueError("inconsistent system has no solutions")
        return instantiate(self.general, assignment)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "particular": self.particular.to_json() if self.particular is not None else None,
            "general": self.general.to_json() if self.general is not None else None,
            "params": [p.name for p in self.params],
        }


def _fresh(rows: int, cols: int, start: int = 1) -> tuple[tuple[Param, ...], ...]:
    return tuple(tuple(Param(start + i * cols + j, f"t_{start + i * cols + j}") for j in range(cols)) for i in range(rows))


def _consistent(general: ParamMatrix, params: tuple[Param, ...], decs: tuple[RankDecomposition, ...]) -> Solution:
    particular = instantiate(general, {p: 0 for p in params})
    return Solution(Status.CONSISTENT, general, params, particular, None, decs)


def _first_nonzero(m: Matrix, forbidden) -> tuple[int, int] | None:
    for i in range(m.rows):
        for j in range(m.cols):
            if forbidden(i, j) and m[i, j] != 0:
                return (i, j)
    return None


def _require_rows(a: Matrix, c: Matrix, what: str) -> None:
    if c.rows != a.rows:
        raise ShapeError(f"{what}: coefficient matrix is {a.rows}x{a.cols} but right-hand side is {c.rows}x{c.cols}")


def _require_column(c: Matrix, name: str) -> None:
    if c.cols != 1:
        raise ShapeError(f"{name} must be a column vector, got {c.rows}x{c.cols}")


def _require_cols(b: Matrix, d: Matrix, what: str) -> None:
    if d.cols != b.cols:
        raise ShapeError(f"{what}: coefficient matrix is {b.rows}x{b.cols} but right-hand side is {d.rows}x{d.cols}")


# -- A x = c and A X = C -----------------------------------------------------


def consistent_mat_left(a: Matrix, c: Matrix, dec: RankDecomposition | None = None) -> bool:
    """``A X = C`` is solvable iff rows ``a+1..m`` of ``Q C`` are zero."""
    _require_rows(a, c, "AX=C")
    dec = dec or decompose(a)
    return (dec.q @ c).submatrix(dec.rank, a.rows, 0, c.cols).is_zero()


def consistent_vec(a: Matrix, c: Matrix) -> bool:
    _require_column(c, "c")
    return consistent_mat_left(a, c)


def solve_AX_C(a: Matrix, c: Matrix) -> Solution:
    _require_rows(a, c, "AX=C")
    dec = decompose(a)
    r, n, k = dec.rank, a.cols, c.cols
    c_prime = dec.q @ c
    witness = _first_nonzero(c_prime, lambda i, j: i >= r)
    if witness is not None:
        return Solution(Status.INCONSISTENT, witness=witness, decompositions=(dec,))
    free = _fresh(n - r, k)
    stacked = ParamMatrix.from_matrix(c_prime.submatrix(0, r, 0, k)).vstack(ParamMatrix.from_params(free, k))
    general = pm_mul(dec.p, stacked)
    return _consistent(general, tuple(p for row in free for p in row), (dec,))


def general_solution_vec(a: Matrix, c: Matrix) -> Solution:
    """General solution of ``A x = c`` with ``n - a`` fresh parameters."""
    _require_column(c, "c")
    return solve_AX_C(a, c)


def homogeneous_solution(a: Matrix) -> Solution:
    """Null space of ``A`` as a parametric column."""
    return general_solution_vec(a, Matrix.zeros(a.rows, 1))


def short_form_solution(a: Matrix, c: Matrix) -> Solution:
    """``x = G c`` with ``G`` the symbolic Rohde inverse of ``A``.

    The result is ``P [[c'_a], [V c'_a]]``; its parameters are the entries of
    ``V`` that meet a nonzero coordinate of ``c'_a``. Each row of ``V c'_a``
    is an independent affine form, so the set described equals that of
    :func:`general_solution_vec`, but the parameter count is
    ``(n - a) * nnz(c'_a)`` rather than ``n - a``.
    """
    _require_column(c, "c")
    _require_rows(a, c, "Ax=c")
    if c.is_zero():
        raise ValueError("short form needs c != 0; for c = 0 it degenerates to x = 0")
    dec = decompose(a)
    c_prime = dec.q @ c
    witness = _first_nonzero(c_prime, lambda i, j: i >= dec.rank)
    if witness is not None:
        return Solution(Status.INCONSISTENT, witness=witness, decompositions=(dec,))
    general = pm_mul(rohde_inverse(dec).pm, c)
    return _consistent(general, general.params(), (dec,))


# -- x B = d and X B = D -----------------------------------------------------


def consistent_mat_right(b: Matrix, d: Matrix, dec: RankDecomposition | None = None) -> bool:
    """``X B = D`` is solvable iff columns ``b+1..m`` of ``D S`` are zero."""
    _require_cols(b, d, "XB=D")
    dec = dec or decompose_for_row_system(b)
    return (d @ dec.p).submatrix(0, d.rows, dec.rank, b.cols).is_zero()


def consistent_row(b: Matrix, d: Matrix) -> bool:
    if d.rows != 1:
        raise ShapeError(f"d must be a row vector, got {d.rows}x{d.cols}")
    return consistent_mat_right(b, d)


def solve_XB_D(b: Matrix, d: Matrix) -> Solution:
    """General solution of ``X B = D`` for ``B`` n x m and ``D`` k x m."""
    _require_cols(b, d, "XB=D")
    dec = decompose_for_row_system(b)
    r_mat, s_mat, rank = dec.q, dec.p, dec.rank
    n, k = b.rows, d.rows
    d_prime = d @ s_mat
    witness = _first_nonzero(d_prime, lambda i, j: j >= rank)
    if witness is not None:
        return Solution(Status.INCONSISTENT, witness=witness, decompositions=(dec,))
    free = _fresh(k, n - rank)
    joined = ParamMatrix.from_matrix(d_prime.submatrix(0, k, 0, rank)).hstack(ParamMatrix.from_params(free, n - rank))
    general = pm_mul(joined, r_mat)
    return _consistent(general, tuple(p for row in free for p in row), (dec,))


def general_solution_row(b: Matrix, d: Matrix) -> Solution:
    """General solution of the row system ``x B = d`` with ``n - b`` parameters."""
    if d.rows != 1:
        raise ShapeError(f"d must be a row vector, got {d.rows}x{d.cols}")
    return solve_XB_D(b, d)


# -- A X B = C ---------------------------------------------------------------


def _two_sided_core(a: Matrix, b: Matrix, c: Matrix):
    if c.rows != a.rows or c.cols != b.cols:
        raise ShapeError(
            f"AXB=C: A is {a.rows}x{a.cols}, B is {b.rows}x{b.cols}, so C must be "
            f"{a.rows}x{b.cols}, got {c.rows}x{c.cols}"
        )
    left = decompose(a)
    right = decompose_for_row_system(b)
    core = left.q @ c @ right.p
    witness = _first_nonzero(core, lambda i, j: i >= left.rank or j >= right.rank)
    return left, right, core, witness


def consistent_two_sided(a: Matrix, b: Matrix, c: Matrix) -> bool:
    """``A X B = C`` is solvable iff ``Q C S`` is zero outside its leading ``a x b`` block."""
    return _two_sided_core(a, b, c)[3] is None


def solve_AXB_C(a: Matrix, b: Matrix, c: Matrix) -> Solution:
    """General solution of ``A X B = C`` with ``A`` m x n, ``B`` k x l, ``C`` m x l.

    Solvable iff ``Q C S`` vanishes outside its leading ``a x b`` block
    ``G``; then ``X = P [[G, F], [H, L]] R`` with ``F``, ``H``, ``L`` free,
    ``n k - a b`` parameters in all.
    """
    left, right, core, witness = _two_sided_core(a, b, c)
    ra, rb = left.rank, right.rank
    n, k = a.cols, b.rows
    if witness is not None:
        return Solution(Status.INCONSISTENT, witness=witness, decompositions=(left, right))
    params: list[Param] = []
    data = []
    for i in range(n):
        row = []
        for j in range(k):
            if i < ra and j < rb:
                row.append(AffineExpr(core[i, j]))
            else:
                p = Param(len(params) + 1, f"t_{len(params) + 1}")
                params.append(p)
                row.append(AffineExpr.of(p))
        data.append(row)
    middle = ParamMatrix(n, k, data)
    general = pm_mul(pm_mul(left.p, middle), right.q)
    return _consistent(general, tuple(params), (left, right))

