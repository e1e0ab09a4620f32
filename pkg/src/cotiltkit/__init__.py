"""Exact computations with quiver algebras, relative exact structures and cotilting modules."""

__version__ = "0.1.0"
