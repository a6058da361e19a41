"""Exact integer/rational linear algebra: matrices, Smith form, cokernels."""

from .matrix import IntMatrix, RatMatrix
from .snf import (
    Cokernel,
    SingularMatrixError,
    SmithDecomposition,
    cokernel_presentation,
    lattice_kernel,
    rational_inverse,
    smith_normal_form,
    solve_integer,
    xgcd,
)
from .kernels import BACKEND

__all__ = [
    "IntMatrix", "RatMatrix", "Cokernel", "SingularMatrixError", "SmithDecomposition",
    "cokernel_presentation", "lattice_kernel", "rational_inverse", "smith_normal_form",
    "solve_integer", "xgcd", "BACKEND",
]
