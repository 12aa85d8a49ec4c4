"""Certified verification of irrationality criteria for odd zeta values and Dirichlet beta values."""

__version__ = "0.1.0"

from .params import BetaCollection, InfeasibleCollectionError, ZetaCollection

__all__ = ["BetaCollection", "InfeasibleCollectionError", "ZetaCollection", "__version__"]
