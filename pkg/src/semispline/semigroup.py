"""Factorizations and weighted factorization lengths.

Generators are tuples of positive integers.  Repeats and non-minimal
presentations are allowed: ``(2, 2, 3)`` has two distinguishable copies of
``2``, so its factorization sets differ from those of ``(2, 3)``.

Integer and rational weights are handled by a dynamic programme over
``(element, weighted length)`` that never materializes factorizations.
Float weights fall back to vectorized enumeration.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

import numpy as np

from .errors import CapacityError
from .values import unify

__all__ = [
    "LengthMultiset",
    "LengthTable",
    "check_generators",
    "check_weights",
    "enumerate_factorizations",
    "factorization_array",
    "count_factorizations",
    "denumerants",
    "denumerant_estimate",
    "length_table",
    "weighted_lengths",
    "float_lengths",
    "polytope_diameter_bound",
]

# Cells allowed in one (element x length) table before we refuse.
MAX_TABLE_CELLS = 60_000_000
_INT64_SAFE = 2**62


def check_generators(gens) -> tuple[int, ...]:
    if isinstance(gens, str):
        gens = [int(g) for g in gens.split(",")]
    out = []
    for g in gens:
        if isinstance(g, bool) or int(g) != g:
            raise ValueError(f"generator {g!r} is not an integer")
        if g <= 0:
            raise ValueError(f"generators must be positive, got {g!r}")
        out.append(int(g))
    if not out:
        raise ValueError("need at least one generator")
    return tuple(out)


def check_weights(weights, k: int):
    vals, exact = unify(weights)
    if len(vals) != k:
        raise ValueError(f"{len(vals)} weights for {k} generators")
    return vals, exact


def is_numerical_semigroup(gens) -> bool:
    """Whether the generators have gcd 1 (advisory; never enforced)."""
    return reduce(math.gcd, check_generators(gens)) == 1


def _check_n(n) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return int(n)


def denumerants(gens, n_max: int) -> list[int]:
    """``[|Z_S(0)|, ..., |Z_S(n_max)|]`` as exact integers."""
    gens = check_generators(gens)
    n_max = _check_n(n_max)
    counts = [0] * (n_max + 1)
    counts[0] = 1
    for g in gens:
        for v in range(g, n_max + 1):
            counts[v] += counts[v - g]
    return counts


def count_factorizations(gens, n) -> int:
    """|Z_S(n)| without materializing any factorization."""
    return denumerants(gens, n)[-1]


def denumerant_estimate(gens, n) -> Fraction:
    """Leading term ``n^(k-1) / ((k-1)! n_1 ... n_k)``."""
    gens = check_generators(gens)
    k = len(gens)
    return Fraction(n ** (k - 1), math.factorial(k - 1) * math.prod(gens))


def _solutions(gens, n):
    # Rows of nonnegative x with gens . x == n, in lexicographic order.
    k = len(gens)
    g = gens[0]
    if k == 1:
        if n % g == 0:
            return np.array([[n // g]], dtype=np.int64)
        return np.empty((0, 1), dtype=np.int64)
    if k == 2:
        h = gens[1]
        x = np.arange(n // g + 1, dtype=np.int64)
        rest = n - g * x
        x = x[rest % h == 0]
        return np.column_stack([x, (n - g * x) // h])
    blocks = []
    for x0 in range(n // g + 1):
        sub = _solutions(gens[1:], n - g * x0)
        if len(sub):
            blocks.append(np.column_stack([np.full(len(sub), x0, dtype=np.int64), sub]))
    if not blocks:
        return np.empty((0, k), dtype=np.int64)
    return np.concatenate(blocks)


def factorization_array(gens, n, limit: int | None = None) -> np.ndarray:
    """All factorizations of ``n`` as rows of an integer array, lexicographic."""
    gens = check_generators(gens)
    n = _check_n(n)
    if limit is not None:
        total = count_factorizations(gens, n)
        if total > limit:
            raise CapacityError(f"{total} factorizations exceed the limit {limit}")
    return _solutions(gens, n)


def enumerate_factorizations(gens, n, limit: int | None = 1_000_000) -> list[tuple[int, ...]]:
    """Z_S(n) as a list of tuples in lexicographic order."""
    arr = factorization_array(gens, n, limit)
    return [tuple(int(v) for v in row) for row in arr]


@dataclass(frozen=True)
class LengthMultiset:
    """Weighted length -> multiplicity, over all factorizations of ``n``."""

    counts: dict
    total: int
    exact: bool = True

    def __post_init__(self):
        assert sum(self.counts.values()) == self.total

    def items(self):
        return sorted(self.counts.items())

    def keys(self):
        return sorted(self.counts)

    def __getitem__(self, key):
        return self.counts.get(key, 0)

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class LengthTable:
    """Multiplicities of integer weighted lengths for every element ``v <= n_max``.

    ``counts[v, j]`` is the number of factorizations of ``v`` whose weighted
    length equals ``j + offset``.
    """

    gens: tuple
    weights: tuple
    offset: int
    counts: np.ndarray

    @property
    def n_max(self) -> int:
        return self.counts.shape[0] - 1

    def row(self, v) -> dict[int, int]:
        r = self.counts[v]
        idx = np.nonzero(r)[0]
        return {int(j) + self.offset: int(r[j]) for j in idx}

    def count(self, v, length) -> int:
        j = length - self.offset
        if v < 0 or v > self.n_max or j < 0 or j >= self.counts.shape[1]:
            return 0
        return int(self.counts[v, j])


def _length_range(gens, weights, n_max):
    lo = min(0, min(Fraction(w, g) for w, g in zip(weights, gens)) * n_max)
    hi = max(0, max(Fraction(w, g) for w, g in zip(weights, gens)) * n_max)
    return math.floor(lo), math.ceil(hi)


@lru_cache(maxsize=8)
def _length_table(gens: tuple, weights: tuple, n_max: int) -> LengthTable:
    lo, hi = _length_range(gens, weights, n_max)
    width = hi - lo + 1
    if (n_max + 1) * width > MAX_TABLE_CELLS:
        raise CapacityError(
            f"length table of {(n_max + 1) * width} cells exceeds {MAX_TABLE_CELLS}"
        )
    biggest = max(denumerants(gens, n_max))
    dtype = np.int64 if biggest < _INT64_SAFE else object
    dp = np.zeros((n_max + 1, width), dtype=dtype)
    dp[0, -lo] = 1
    for g, w in zip(gens, weights):
        # Unbounded knapsack: ascending v lets each generator repeat.
        for v in range(g, n_max + 1):
            src = dp[v - g]
            if w > 0:
                dp[v, w:] += src[: width - w]
            elif w < 0:
                dp[v, : width + w] += src[-w:]
            else:
                dp[v] += src
    dp.setflags(write=False)
    return LengthTable(gens, weights, lo, dp)


def _integer_weights(weights):
    vals, exact = unify(weights)
    if not exact:
        raise ValueError("integer or rational weights required")
    scale = reduce(math.lcm, (Fraction(w).denominator for w in vals), 1)
    return tuple(int(w * scale) for w in vals), scale


def length_table(gens, weights, n_max) -> LengthTable:
    """Length multiplicities for all elements up to ``n_max``.

    Weights must be integers; use :func:`weighted_lengths` for rationals.
    """
    gens = check_generators(gens)
    ints, scale = _integer_weights(weights)
    if scale != 1:
        raise ValueError("length_table needs integer weights")
    if len(ints) != len(gens):
        raise ValueError(f"{len(ints)} weights for {len(gens)} generators")
    return _length_table(gens, ints, _check_n(n_max))


def weighted_lengths(gens, weights, n, limit: int | None = 50_000_000) -> LengthMultiset:
    """Multiset of ``m . x`` over all ``x`` in Z_S(n).

    Exact weights give ``Fraction`` keys; float weights give the raw float
    lengths, merged only when bitwise identical.
    """
    gens = check_generators(gens)
    n = _check_n(n)
    vals, exact = check_weights(weights, len(gens))
    if exact:
        ints, scale = _integer_weights(vals)
        table = _length_table(gens, ints, n)
        row = table.row(n)
        counts = {Fraction(l, scale): c for l, c in row.items()}
        return LengthMultiset(counts, sum(row.values()), True)
    lengths = float_lengths(gens, vals, n, limit)
    c = Counter(lengths.tolist())
    return LengthMultiset(dict(c), len(lengths), False)


def float_lengths(gens, weights, n, limit: int | None = 50_000_000) -> np.ndarray:
    """Raw weighted lengths (one per factorization) as a float array."""
    gens = check_generators(gens)
    w = np.array([float(v) for v in check_weights(weights, len(gens))[0]])
    arr = factorization_array(gens, n, limit)
    return arr.astype(float) @ w


def polytope_diameter_bound(gens, n) -> float:
    """Largest vertex distance of the simplex {x >= 0 : gens . x = n}.

    Never exceeds ``sqrt(2) * n``.
    """
    gens = check_generators(gens)
    n = _check_n(n)
    if len(gens) == 1 or n == 0:
        return 0.0
    # The two smallest generators give the largest pair distance.
    a, b = sorted(gens)[:2]
    return n * math.sqrt(1 / a**2 + 1 / b**2)
