"""Exact computations with idempotent recollements of module categories and glued cotorsion pairs."""

from .exactla import Field

__version__ = "0.1.0"

__all__ = ["Field", "__version__"]
