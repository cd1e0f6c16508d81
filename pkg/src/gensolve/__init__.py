"""Exact {1}-inverses in Rohde form and minimal-parameter general solutions
of linear systems and matrix equations over the rationals."""

from .affine import AffineExpr, DegreeError, Param, ParamMatrix, UnboundParameterError, instantiate, param_coefficient_matrix, pm_mul
from .matrix import Matrix, ShapeError, SingularMatrixError, mat_inverse, mat_mul
from .oneinv import RohdeInverse, rohde_inverse, rohde_inverse_row_side, verify_g1
from .rnf import RankDecomposition, decompose, decompose_for_row_system
from .solve import (
    Solution,
    Status,
    consistent_mat_left,
    consistent_mat_right,
    consistent_row,
    consistent_two_sided,
    consistent_vec,
    general_solution_row,
    general_solution_vec,
    homogeneous_solution,
    short_form_solution,
    solve_AX_C,
    solve_AXB_C,
    solve_XB_D,
)

__version__ = "0.1.0"
