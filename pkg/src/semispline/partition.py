"""Vector partition function t_A for two-row integer systems.

``vpf(A, (m, n))`` counts nonnegative integer ``x`` with ``A x = (m, n)``,
i.e. the factorizations of ``n`` whose weighted length is ``m``.
"""
from __future__ import annotations

from fractions import Fraction

from . import semigroup
from .tpower import SystemMatrix, system, truncated_power

__all__ = [
    "vpf",
    "vpf_approx",
    "normalized_estimate",
    "length_count",
]


def _integer_system(A) -> SystemMatrix:
    if not isinstance(A, SystemMatrix):
        A = SystemMatrix.from_rows(A)
    for v in A.weights + A.generators:
        if isinstance(v, float) or Fraction(v).denominator != 1:
            raise ValueError("vector partition function needs integer entries")
    return A


def vpf(A, b) -> int:
    """Exact number of nonnegative integer solutions of ``A x = b``."""
    A = _integer_system(A)
    m, n = int(b[0]), int(b[1])
    gens = tuple(int(g) for g in A.generators)
    weights = tuple(int(w) for w in A.weights)
    if n < 0:
        return 0
    table = semigroup.length_table(gens, weights, n)
    return table.count(n, m)


def vpf_approx(A, b):
    """The spline approximation of ``t_A(b)``; equal to ``T_A(b)``."""
    if not isinstance(A, SystemMatrix):
        A = SystemMatrix.from_rows(A)
    return truncated_power(A, b[0], b[1])


def normalized_estimate(A, b) -> float:
    """``|Z_S(n)| / n * M(m/n; m_i/n_i)``, normalizing by the true count."""
    A = _integer_system(A)
    m, n = b
    if n <= 0:
        return 0.0
    gens = tuple(int(g) for g in A.generators)
    z = semigroup.count_factorizations(gens, n)
    return float(Fraction(z, n) * A.spline(Fraction(m, n)))


def length_count(gens, weights, n, m) -> int:
    """Factorizations of ``n`` with weighted length exactly ``m``."""
    return vpf(system(weights, gens), (m, n))
