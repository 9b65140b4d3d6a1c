"""Algebraic models of homotopy 3-types of commutative algebras, computed exactly."""

__version__ = "0.1.0"
