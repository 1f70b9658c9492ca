"""Exact computations with Hom-Hopf algebras, crossed products and cleft extensions."""

__version__ = "0.1.0"
