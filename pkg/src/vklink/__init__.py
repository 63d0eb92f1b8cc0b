"""Intrinsic linking of simplicial n-complexes in R^{2n}, checked by exact computation."""

__version__ = "0.1.0"
