"""operadlab: operads, soul complexes and natural cochain operations over exact rationals."""

__version__ = "0.1.0"
