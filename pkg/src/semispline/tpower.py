"""Multivariate truncated power T_A for two-row systems.

For ``A = [m; n]`` with positive second row, T_A at ``(m, n)`` is a scaled
B-spline evaluated at ``m / n`` with knots ``m_i / n_i``.  The segment
route at ``k = 3`` measures the solution polytope directly and exists to
check the spline route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import bspline
from .errors import AllKnotsEqual, DegenerateRows, TooFewKnots
from .values import unify

__all__ = ["SystemMatrix", "system", "truncated_power", "segment_oracle_k3"]


@dataclass(frozen=True)
class SystemMatrix:
    """The 2 x k matrix with weights on top and generators below."""

    weights: tuple
    generators: tuple

    def __post_init__(self):
        if len(self.weights) != len(self.generators):
            raise ValueError("rows must have equal length")
        if any(g <= 0 for g in self.generators):
            raise ValueError("second row must be positive")

    @classmethod
    def from_rows(cls, rows) -> "SystemMatrix":
        top, bottom = rows
        w, _ = unify(top)
        g, _ = unify(bottom)
        return cls(w, g)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def rows(self) -> tuple:
        return self.weights, self.generators

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.weights + self.generators)

    @cached_property
    def knots(self) -> bspline.KnotSequence:
        ratios = [Fraction(m) / Fraction(n) if self.exact else m / n
                  for m, n in zip(self.weights, self.generators)]
        try:
            return bspline.make_knots(ratios)
        except (AllKnotsEqual, TooFewKnots) as exc:
            raise DegenerateRows("rows are linearly dependent") from exc

    @cached_property
    def spline(self) -> bspline.PiecewisePolynomial:
        return bspline.piecewise_expand(self.knots)

    @cached_property
    def normalizer(self):
        """``(k-1)! * n_1 * ... * n_k``."""
        return math.factorial(self.k - 1) * math.prod(self.generators)


def system(weights, generators) -> SystemMatrix:
    w, _ = unify(weights)
    g, _ = unify(generators)
    return SystemMatrix(w, g)


def truncated_power(A: SystemMatrix, m, n):
    """T_A evaluated at the column vector ``(m, n)``."""
    if not isinstance(A, SystemMatrix):
        A = SystemMatrix.from_rows(A)
    pp = A.spline
    if n <= 0:
        return Fraction(0) if A.exact else 0.0
    if A.exact and not isinstance(m, float) and not isinstance(n, float):
        m, n = Fraction(m), Fraction(n)
    else:
        m, n = float(m), float(n)
    return n ** (A.k - 2) / A.normalizer * pp(m / n)


def segment_oracle_k3(A: SystemMatrix, m, n) -> float:
    """T_A at ``(m, n)`` for k = 3 as segment length / sqrt(det(A A^T)).

    The solution set ``{x >= 0 : A x = (m, n)}`` is a segment along the
    null direction of A; its length comes from plain float linear algebra.
    """
    if not isinstance(A, SystemMatrix):
        A = SystemMatrix.from_rows(A)
    if A.k != 3:
        raise ValueError("the segment oracle needs exactly three columns")
    M = np.array([[float(v) for v in A.weights], [float(v) for v in A.generators]])
    gram = M @ M.T
    det = float(np.linalg.det(gram))
    if det <= 1e-12 * float(np.abs(gram).max()) ** 2:
        raise DegenerateRows("rows are linearly dependent")
    b = np.array([float(m), float(n)])
    x0 = M.T @ np.linalg.solve(gram, b)
    d = np.cross(M[0], M[1])
    lo, hi = -math.inf, math.inf
    for xi, di in zip(x0, d):
        if abs(di) < 1e-300:
            if xi < -1e-12 * max(1.0, abs(b).max()):
                return 0.0
            continue
        t = -xi / di
        if di > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if not hi > lo:
        return 0.0
    length = (hi - lo) * float(np.linalg.norm(d))
    return length / math.sqrt(det)
