"""Exact motives of pair-moduli spaces on curves and non-abelian zeta functions."""

from .kernel import backend_name

__all__ = ["backend_name"]
__version__ = "0.1.0"
