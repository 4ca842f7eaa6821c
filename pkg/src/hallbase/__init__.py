"""Exact canonical bases for Hall algebras of the Kronecker quiver and cyclic tubes."""

__version__ = "0.1.0"
