"""Weighted factorization lengths on numerical semigroups and their
B-spline asymptotics."""

__version__ = "0.1.0"
