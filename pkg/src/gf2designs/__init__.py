"""Kramer-Mesner search toolkit for subspace designs over GF(2)."""

__version__ = "0.1.0"
