"""Exact second-order cone representations of epigraphs of convex polynomials."""

from .exactpoly import BiPoly, UniPoly, certified_radius, nonneg_on_interval
from .tensorcalc import (
    TensorDecomposition,
    flat_decompose,
    positive_residue_decompose,
    s_polynomial,
    strict_decompose,
    tangent_tensor,
    taylor_remainder,
)

__version__ = "0.1.0"
