"""
alphaspectra - alpha-spectral radii of unicyclic and bicyclic graphs.

This package computes the largest eigenvalue and the exact characteristic
polynomial of A_alpha(G) = alpha D(G) + (1 - alpha) A(G), builds the extremal
graph families of given order and diameter, and checks them against an
exhaustive census.
"""

__version__ = "0.3.0"

from .charpoly import (
    RationalPolynomial,
    compare_largest_roots,
    largest_real_root,
    path_poly,
    phi,
    psi,
)
from .enumeration import (
    ExtremalReport,
    SearchSpace,
    argmax_radius,
    compare_pair,
    enumerate_by_subsets,
    enumerate_graphs,
)
from .families import Family, FamilySpec, build, bstar3, bstar5, ustar2
from .graph import Graph, canonical_form, diameter, from_graph6, is_isomorphic, to_graph6
from .settings import Settings
from .spectral import SpectralResult, alpha_matrix, spectral_radius
from .validators import (
    val_alpha,
    val_cyclomatic,
    val_decimal_alpha,
    val_non_negative_int,
    val_positive_int,
    val_simple_edges,
    val_trimmed_coefficients,
)

__all__ = [
    "Graph",
    "canonical_form",
    "diameter",
    "from_graph6",
    "is_isomorphic",
    "to_graph6",
    "SpectralResult",
    "alpha_matrix",
    "spectral_radius",
    "RationalPolynomial",
    "compare_largest_roots",
    "largest_real_root",
    "path_poly",
    "phi",
    "psi",
    "Family",
    "FamilySpec",
    "build",
    "bstar3",
    "bstar5",
    "ustar2",
    "ExtremalReport",
    "SearchSpace",
    "argmax_radius",
    "compare_pair",
    "enumerate_by_subsets",
    "enumerate_graphs",
    "Settings",
    "val_alpha",
    "val_cyclomatic",
    "val_decimal_alpha",
    "val_non_negative_int",
    "val_positive_int",
    "val_simple_edges",
    "val_trimmed_coefficients",
]
