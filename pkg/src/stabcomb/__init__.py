"""Exact construction and stability analysis of combinatorial polynomial families."""

from .exactpoly import Poly

__version__ = "0.1.0"

__all__ = ["Poly", "__version__"]
