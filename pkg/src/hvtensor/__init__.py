"""Exact computations with the twisted Heisenberg-Virasoro algebra and its modules."""

from .algebra import C, Generator, I, L, LieElement, bracket, jacobi_check
from .exact import DivisionByZero, NonRationalRootsRemain, Scalar, binomial, rational_roots
from .linalg import Matrix, SingularMatrix, SparseVector, linear_solve
from .report import VERSION as __version__

__all__ = [
    "C", "DivisionByZero", "Generator", "I", "L", "LieElement", "Matrix", "NonRationalRootsRemain",
    "Scalar", "SingularMatrix", "SparseVector", "__version__", "binomial", "bracket", "jacobi_check",
    "linear_solve", "rational_roots",
]
