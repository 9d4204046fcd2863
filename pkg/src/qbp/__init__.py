"""Quantum bootstrap product (QBP) codes.

Solve the bootstrap equation for a triple ``(p, q, w)``, assemble the
resulting CSS code from classical input codes and compute its parameters.
"""

from qbp.assembly import ClassicalCode, CssCode, build_css, hgp_reference, instantiate, qbp_code
from qbp.gf2 import BitMatrix, SparseMatrix, nullspace_basis, rank, rref
from qbp.lattice import TdLabel, codes_equivalent, td_build, td_valid
from qbp.metrics import code_params, distance_estimate, distance_exact, logical_count
from qbp.poly import BoundaryPolynomial, elementary_symmetric, poly_product
from qbp.solver import ForkComplexSpec, solve_fork

__all__ = [
    "BitMatrix",
    "BoundaryPolynomial",
    "ClassicalCode",
    "CssCode",
    "ForkComplexSpec",
    "SparseMatrix",
    "TdLabel",
    "build_css",
    "code_params",
    "codes_equivalent",
    "distance_estimate",
    "distance_exact",
    "elementary_symmetric",
    "hgp_reference",
    "instantiate",
    "logical_count",
    "nullspace_basis",
    "poly_product",
    "qbp_code",
    "rank",
    "rref",
    "solve_fork",
    "td_build",
    "td_valid",
]
