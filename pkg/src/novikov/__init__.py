"""Exact verification and construction of left-symmetric and Novikov
structures on finite-dimensional Lie algebras over Q."""

__version__ = "0.1.0"
