"""Rank normal form ``Q A P = E_a`` by Gauss-Jordan elimination.

Row operations reduce ``A`` to reduced row echelon form and are accumulated
into ``Q``; column swaps then gather the pivot columns to the front and
column eliminations clear the remaining block, accumulated into ``P``. The
inverse of each elementary operation is applied alongside, so ``Q^-1`` and
``P^-1`` come out without a separate inversion.

Pivoting takes the first nonzero entry from the top in the leftmost
unconsumed column, which keeps the output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import Matrix


@dataclass(frozen=True)
class RankDecomposition:
    """Regular ``q``, ``p`` (with inverses) such that ``q @ A @ p`` is ``E_rank``.

    For the row-system variant (:func:`decompose_for_row_system`) ``q`` is the
    left factor ``R`` and ``p`` the right factor ``S`` of ``R B S = E_b``.
    """

    q: Matrix
    q_inv: Matrix
    p: Matrix
    p_inv: Matrix
    rank: int

    @property
    def m(self) -> int:
        return self.q.rows

    @property
    def n(self) -> int:
        return self.p.rows

    def normal_form(self) -> Matrix:
        """``E_a``: the ``m x n`` matrix with ``I_a`` in the leading block."""
        a = self.rank
        return Matrix(self.m, self.n, [[int(i == j and i < a) for j in range(self.n)] for i in range(self.m)])

    def holds_for(self, a: Matrix) -> bool:
        """Check every defining identity against ``a`` exactly."""
        m, n = a.shape
        return (
            self.q.shape == (m, m)
            and self.p.shape == (n, n)
            and self.q @ self.q_inv == Matrix.identity(m)
            and self.p @ self.p_inv == Matrix.identity(n)
            and self.q @ a @ self.p == self.normal_form()
        )


def decompose(a: Matrix) -> RankDecomposition:
    m, n = a.shape
    work = a.tolist()
    q = Matrix.identity(m).tolist()
    # q_inv is kept transposed so column operations on it become row operations
    q_inv_t = Matrix.identity(m).tolist()

    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        pivot = next((r for r in range(row, m) if work[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            work[row], work[pivot] = work[pivot], work[row]
            q[row], q[pivot] = q[pivot], q[row]
            q_inv_t[row], q_inv_t[pivot] = q_inv_t[pivot], q_inv_t[row]
        p = work[row][col]
        if p != 1:
            work[row] = [x / p for x in work[row]]
            q[row] = [x / p for x in q[row]]
            q_inv_t[row] = [x * p for x in q_inv_t[row]]
        for r in range(m):
            f = work[r][col]
            if r == row or f == 0:
                continue
            # row_r -= f * row_pivot; inverse op: col_pivot(Q^-1) += f * col_r(Q^-1)
            work[r] = [x - f * y for x, y in zip(work[r], work[row])]
            q[r] = [x - f * y for x, y in zip(q[r], q[row])]
            q_inv_t[row] = [y + f * x for x, y in zip(q_inv_t[r], q_inv_t[row])]
        pivots.append(col)
        row += 1

    rank = len(pivots)
    # P and P^-1 both start at I_n; P is kept transposed for the same reason as Q^-1
    p_t = Matrix.identity(n).tolist()
    p_inv = Matrix.identity(n).tolist()

    def swap_cols(i: int, j: int) -> None:
        for r in work:
            r[i], r[j] = r[j], r[i]
        p_t[i], p_t[j] = p_t[j], p_t[i]
        p_inv[i], p_inv[j] = p_inv[j], p_inv[i]

    for k, col in enumerate(pivots):
        if col != k:
            swap_cols(k, col)

    # work is now [[I_a, X], [0, 0]]; clear X with column operations
    for j in range(rank, n):
        for i in range(rank):
            f = work[i][j]
            if f == 0:
                continue
            # col_j -= f * col_i; inverse op on rows of P^-1: row_i += f * row_j
            for r in range(rank):
                work[r][j] -= f * work[r][i]
            p_t[j] = [x - f * y for x, y in zip(p_t[j], p_t[i])]
            p_inv[i] = [x + f * y for x, y in zip(p_inv[i], p_inv[j])]

    return RankDecomposition(
        q=Matrix(m, m, q),
        q_inv=Matrix(m, m, q_inv_t).transpose(),
        p=Matrix(n, n, p_t).transpose(),
        p_inv=Matrix(n, n, p_inv),
        rank=rank,
    )


def decompose_for_row_system(b: Matrix) -> RankDecomposition:
    """``R``, ``S`` with ``R B S = E_b``, obtained by decomposing ``B^T``.

    If ``Q' B^T P' = E`` then ``P'^T B Q'^T = E^T``, so ``R = P'^T`` and
    ``S = Q'^T``.
    """
    dec = decompose(b.transpose())
    return RankDecomposition(
        q=dec.p.transpose(),
        q_inv=dec.p_inv.transpose(),
        p=dec.q.transpose(),
        p_inv=dec.q_inv.transpose(),
        rank=dec.rank,
    )
