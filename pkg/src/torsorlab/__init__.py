"""Exact computations with pre-torsors, comonads, entwinings and Galois data."""

__version__ = "0.1.0"
