"""Classical Gauss-Jordan solver used as ground truth.

Nothing here touches the rank normal form or generalized inverses; the only
shared code is :class:`~gensolve.matrix.Matrix`. Speed is not a concern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import param_coefficient_matrix
from .matrix import Matrix, ShapeError


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a list of rows and its pivot columns."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        hit = next((i for i in range(top, len(work)) if work[i][col] != 0), None)
        if hit is None:
            continue
        work[top], work[hit] = work[hit], work[top]
        lead = work[top][col]
        work[top] = [x / lead for x in work[top]]
        for i in range(len(work)):
            if i != top and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[top])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work, pivots


def rank(m: Matrix) -> int:
    return len(rref(m.tolist(), m.cols)[1])


@dataclass(frozen=True)
class AffineSet:
    """``particular + span(basis)``, all members shaped like ``particular``."""

    particular: Matrix
    basis: tuple[Matrix, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        for v in self.basis:
            if v.shape != self.particular.shape:
                raise ShapeError(f"basis element {v.rows}x{v.cols} does not match ambient shape {self.shape}")
        if _flat_rank(self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @property
    def shape(self) -> tuple[int, int]:
        return self.particular.shape

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, point: Matrix) -> bool:
        """Membership, by solving for coordinates of ``point - particular`` in the basis."""
        if point.shape != self.shape:
            return False
        diff = list((point - self.particular).entries())
        if not self.basis:
            return all(x == 0 for x in diff)
        columns = Matrix(len(self.basis), len(diff), [list(v.entries()) for v in self.basis]).transpose()
        return gauss_solve(columns, Matrix.column(diff)) is not None


def _flat_rank(vectors: Sequence[Matrix]) -> int:
    if not vectors:
        return 0
    width = vectors[0].rows * vectors[0].cols
    return len(rref([list(v.entries()) for v in vectors], width)[1])


def gauss_solve(a: Matrix, c: Matrix) -> AffineSet | None:
    """Solve ``A x = c`` by row reduction of ``[A | c]``; None if inconsistent."""
    if c.rows != a.rows or c.cols != 1:
        raise ShapeError(f"gauss_solve needs an {a.rows}x1 right-hand side, got {c.rows}x{c.cols}")
    n = a.cols
    augmented = [list(a.row(i)) + [c[i, 0]] for i in range(a.rows)]
    reduced, pivots = rref(augmented, n + 1)
    if n in pivots:
        return None
    particular = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        particular[p] = reduced[i][n]
    basis = []
    for free in (j for j in range(n) if j not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][free]
        basis.append(Matrix.column(v))
    return AffineSet(Matrix.column(particular), tuple(basis))


def axb_coefficients(a: Matrix, b: Matrix) -> Matrix:
    """Matrix of ``X -> A X B`` on row-major flattenings: ``(m l) x (n k)``.

    Built entrywise: ``(A X B)[i, j] = sum_{p, q} A[i, p] B[q, j] X[p, q]``.
    """
    m, n = a.shape
    k, l = b.shape
    data = [[a[i, p] * b[q, j] for p in range(n) for q in range(k)] for i in range(m) for j in range(l)]
    return Matrix(m * l, n * k, data)


def gauss_solve_axb(a: Matrix, b: Matrix, c: Matrix) -> AffineSet | None:
    """Solve ``A X B = C`` through the flattened system; ``X`` is n x k."""
    if c.shape != (a.rows, b.cols):
        raise ShapeError(f"C must be {a.rows}x{b.cols}, got {c.rows}x{c.cols}")
    n, k = a.cols, b.rows
    flat = gauss_solve(axb_coefficients(a, b), c.reshape(c.rows * c.cols, 1))
    if flat is None:
        return None
    return AffineSet(flat.particular.reshape(n, k), tuple(v.reshape(n, k) for v in flat.basis))


def gauss_solve_ax(a: Matrix, c: Matrix) -> AffineSet | None:
    return gauss_solve_axb(a, Matrix.identity(c.cols), c)


def gauss_solve_xb(b: Matrix, d: Matrix) -> AffineSet | None:
    return gauss_solve_axb(Matrix.identity(d.rows), b, d)


def kron_nullity(a: Matrix, b: Matrix) -> int:
    """Dimension of the kernel of ``X -> A X B``."""
    return a.cols * b.rows - rank(axb_coefficients(a, b))


def solution_to_affine_set(sol) -> AffineSet:
    """Particular solution plus the parameter directions of ``sol.general``.

    Directions that are linearly dependent on earlier ones are dropped so the
    basis stays independent.
    """
    if sol.general is None:
        raise ValueError("inconsistent solution has no affine set")
    rows, cols = sol.general.shape
    coeffs, _ = param_coefficient_matrix(sol.general)
    directions = [Matrix.column(coeffs.col(j)).reshape(rows, cols) for j in range(coeffs.cols)]
    kept: list[Matrix] = []
    for v in directions:
        if _flat_rank(kept + [v]) > len(kept):
            kept.append(v)
    particular = sol.particular if sol.particular is not None else sol.general.constant_part()
    return AffineSet(particular, tuple(kept))


def affine_sets_equal(s1: AffineSet, s2: AffineSet) -> bool:
    if s1.shape != s2.shape:
        return False
    if not (s2.contains(s1.particular) and s1.contains(s2.particular)):
        return False
    joint = _flat_rank(list(s1.basis) + list(s2.basis))
    return joint == len(s1.basis) == len(s2.basis)
