"""Integer predicates used as theorem hypotheses.

A 2 x k integer matrix A satisfies ``A Z^k = Z^2`` exactly when the gcd of
its 2 x 2 minors is 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from .errors import NotUnimodular

__all__ = [
    "MinorSet",
    "minors",
    "unimodularity",
    "is_unimodular",
    "delta_gcd",
    "is_primitive_vector",
    "integer_preimage",
    "xgcd",
]


def _rows(A):
    rows = A.rows if hasattr(A, "rows") else A
    top, bottom = rows
    if len(top) != len(bottom):
        raise ValueError("rows must have equal length")
    out = []
    for row in (top, bottom):
        ints = []
        for v in row:
            if int(v) != v:
                raise ValueError(f"entry {v!r} is not an integer")
            ints.append(int(v))
        out.append(tuple(ints))
    return tuple(out)


@dataclass(frozen=True)
class MinorSet:
    """All 2 x 2 minors, keyed by the column pair (zero-based)."""

    values: dict

    @property
    def gcd(self) -> int:
        return reduce(math.gcd, self.values.values(), 0)

    @property
    def unimodular(self) -> bool:
        return self.gcd == 1


def minors(A) -> MinorSet:
    top, bottom = _rows(A)
    vals = {
        (i, j): top[i] * bottom[j] - top[j] * bottom[i]
        for i, j in combinations(range(len(top)), 2)
    }
    return MinorSet(vals)


def unimodularity(A) -> MinorSet:
    return minors(A)


def is_unimodular(A) -> bool:
    """Whether ``A Z^k = Z^2``."""
    if len(_rows(A)[0]) < 2:
        return False
    return minors(A).unimodular


def delta_gcd(gens) -> int:
    """gcd of consecutive differences; independent of generator order."""
    gens = [int(g) for g in gens]
    return reduce(math.gcd, (b - a for a, b in zip(gens, gens[1:])), 0)


def is_primitive_vector(gens) -> bool:
    """Whether the lattice spanned by ``gens`` in Z^k is primitive."""
    return reduce(math.gcd, (int(g) for g in gens), 0) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def integer_preimage(A, b) -> tuple[int, ...]:
    """An integer ``z`` with ``A z == b``.

    Bezout coefficients ``c_I`` for the minors give ``sum c_I det(A_I) = 1``;
    combining the adjugate solutions of each 2 x 2 block with those weights
    solves the full system.
    """
    top, bottom = _rows(A)
    ms = minors((top, bottom))
    if not ms.unimodular:
        raise NotUnimodular(f"gcd of 2x2 minors is {ms.gcd}")
    b1, b2 = int(b[0]), int(b[1])
    coeffs = {}
    g = 0
    for pair, d in ms.values.items():
        g, s, t = xgcd(g, d)
        for key in coeffs:
            coeffs[key] *= s
        coeffs[pair] = t
    z = [0] * len(top)
    for (i, j), c in coeffs.items():
        if c == 0:
            continue
        # adj([[a, b], [c, d]]) = [[d, -b], [-c, a]]
        z[i] += c * (bottom[j] * b1 - top[j] * b2)
        z[j] += c * (-bottom[i] * b1 + top[i] * b2)
    return tuple(z)
