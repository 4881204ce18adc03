"""Exact computational algebraic geometry toolkit with a numeric elliptic/modular companion."""

__version__ = "0.1.0"
