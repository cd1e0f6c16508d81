"""Rohde's parametrization of all {1}-inverses.

Given ``Q A P = E_a``, every ``G`` with ``A G A = A`` is

    G = P [[I_a, U], [V, W]] Q

for free blocks ``U`` (a x (m-a)), ``V`` ((n-a) x a) and ``W``
((n-a) x (m-a)). The inverse is returned symbolically, with one parameter per
free entry.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineExpr, Param, ParamMatrix, instantiate, pm_mul
from .matrix import Matrix, ShapeError
from .rnf import RankDecomposition, decompose_for_row_system

logger = logging.getLogger(__name__)

ParamGrid = tuple[tuple[Param, ...], ...]


@dataclass(frozen=True)
class RohdeInverse:
    """Symbolic {1}-inverse together with the decomposition it was built from.

    ``u_params``, ``v_params`` and ``w_params`` are the free blocks in
    top-right, bottom-left, bottom-right order. For the row-side constructor
    they hold the ``m``, ``n`` and ``k`` parameters respectively.
    """

    pm: ParamMatrix
    decomposition: RankDecomposition
    u_params: ParamGrid
    v_params: ParamGrid
    w_params: ParamGrid
    letters: tuple[str, str, str] = ("u", "v", "w")

    @property
    def param_count(self) -> int:
        return sum(len(row) for grid in (self.u_params, self.v_params, self.w_params) for row in grid)

    def block_shapes(self) -> dict[str, tuple[int, int]]:
        a = self.decomposition.rank
        rows, cols = self.pm.shape
        return {
            self.letters[0].upper(): (a, cols - a),
            self.letters[1].upper(): (rows - a, a),
            self.letters[2].upper(): (rows - a, cols - a),
        }


def _grid(letter: str, rows: int, cols: int, start: int) -> ParamGrid:
    return tuple(
        tuple(Param(start + i * cols + j, f"{letter}_{i + 1}_{j + 1}") for j in range(cols))
        for i in range(rows)
    )


def _middle(rank: int, rows: int, cols: int, letters: tuple[str, str, str]) -> tuple[ParamMatrix, ParamGrid, ParamGrid, ParamGrid]:
    """``[[I_a, U], [V, W]]`` of shape rows x cols with fresh parameter blocks."""
    a = rank
    top = _grid(letters[0], a, cols - a, 1)
    left = _grid(letters[1], rows - a, a, 1 + a * (cols - a))
    corner = _grid(letters[2], rows - a, cols - a, 1 + a * (cols - a) + (rows - a) * a)
    one, zero = AffineExpr(1), AffineExpr()
    data = []
    for i in range(rows):
        row = []
        for j in range(cols):
            if i < a and j < a:
                row.append(one if i == j else zero)
            elif i < a:
                row.append(AffineExpr.of(top[i][j - a]))
            elif j < a:
                row.append(AffineExpr.of(left[i - a][j]))
            else:
                row.append(AffineExpr.of(corner[i - a][j - a]))
        data.append(row)
    return ParamMatrix(rows, cols, data), top, left, corner


def rohde_inverse(dec: RankDecomposition) -> RohdeInverse:
    """``P [[I_a, U], [V, W]] Q`` for the matrix that ``dec`` decomposes."""
    n, m = dec.p.rows, dec.q.rows
    middle, u, v, w = _middle(dec.rank, n, m, ("u", "v", "w"))
    pm = pm_mul(pm_mul(dec.p, middle), dec.q)
    return RohdeInverse(pm, dec, u, v, w)


def rohde_inverse_row_side(b: Matrix) -> RohdeInverse:
    """``S [[I_b, M], [N, K]] R`` where ``R B S = E_b``; ``B`` is n x m."""
    dec = decompose_for_row_system(b)
    r, s = dec.q, dec.p
    middle, mm, nn, kk = _middle(dec.rank, s.rows, r.rows, ("m", "n", "k"))
    pm = pm_mul(pm_mul(s, middle), r)
    return RohdeInverse(pm, dec, mm, nn, kk, letters=("m", "n", "k"))


def g1_residual(a: Matrix, g: ParamMatrix) -> tuple[int, int] | None:
    """First entry where ``A g A - A`` is not identically zero, or None."""
    if g.shape != (a.cols, a.rows):
        raise ShapeError(f"{{1}}-inverse of a {a.rows}x{a.cols} matrix must be {a.cols}x{a.rows}, got {g.rows}x{g.cols}")
    aga = pm_mul(pm_mul(a, g), a)
    for i in range(a.rows):
        for j in range(a.cols):
            e = aga[i, j]
            if not e.is_constant() or e.constant != a[i, j]:
                return (i, j)
    return None


def verify_g1(a: Matrix, g: ParamMatrix | Matrix, trials: int = 0, rng: random.Random | None = None) -> bool:
    """True iff ``A g A = A`` holds identically in the parameters of ``g``.

    The symbolic check decides; ``trials`` random instantiations are also
    multiplied out numerically and must agree with it.
    """
    if isinstance(g, Matrix):
        g = ParamMatrix.from_matrix(g)
    bad = g1_residual(a, g)
    if bad is not None:
        logger.info("A g A != A at entry %s", bad)
        return False
    rng = rng or random.Random(0)
    params = g.params()
    for _ in range(trials):
        point = {p: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for p in params}
        gi = instantiate(g, point)
        if a @ gi @ a != a:
            logger.info("A g A != A at instantiation %s", point)
            return False
    return True
