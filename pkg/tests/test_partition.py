import itertools
import math
import random
from fractions import Fraction as F

import pytest

from semispline.bounds import e2
from semispline.lattice import is_unimodular
from semispline.partition import length_count, normalized_estimate, vpf, vpf_approx
from semispline.semigroup import count_factorizations
from semispline.tpower import system, truncated_power

CANES = system((2, 3, 3), (3, 4, 6))
CANES_EXT = system((2, 3, 3, 1, 1), (3, 4, 6, 2, 3))


def brute_vpf(weights, gens, m, n):
    total = 0
    for x in itertools.product(*(range(n // g + 1) for g in gens)):
        if sum(g * v for g, v in zip(gens, x)) == n and sum(w * v for w, v in zip(weights, x)) == m:
            total += 1
    return total


def test_vpf_examples():
    assert vpf(CANES, (25, 40)) == 2
    assert vpf(CANES_EXT, (125, 200)) == 2995
    assert vpf(CANES, (0, 0)) == 1
    assert vpf(CANES, (5, -1)) == 0


def test_vpf_approx_examples():
    assert round(float(vpf_approx(CANES, (625, 1000))), 1) == 41.7
    assert vpf_approx(CANES, (10, 40)) == 0
    assert round(normalized_estimate(CANES_EXT, (625, 1000)), 1) == 322389.9
    assert vpf_approx(CANES, (625, 1000)) == truncated_power(CANES, 625, 1000)


def test_normalized_estimate_definition():
    z = count_factorizations((3, 4, 6, 2, 3), 200)
    expect = F(z, 200) * CANES_EXT.spline(F(125, 200))
    assert normalized_estimate(CANES_EXT, (125, 200)) == pytest.approx(float(expect))


def test_length_count_examples():
    assert length_count((2, 3, 5, 8), (1, 1, 1, 1), 9, 3) == 2
    assert length_count((6, 9, 20), (1, 1, 1), 100, -3) == 0
    for m in range(0, 20):
        assert length_count((6, 9, 20), (1, 1, 1), 100, m) == brute_vpf((1, 1, 1), (6, 9, 20), m, 100)


def test_rejects_rational_entries():
    with pytest.raises(ValueError):
        vpf(system((F(1, 2), 1), (1, 2)), (1, 2))


def test_against_brute_force_hundred_instances():
    rng = random.Random(5)
    for _ in range(100):
        k = rng.randint(1, 5)
        gens = [rng.randint(1, 9) for _ in range(k)]
        weights = [rng.randint(-3, 5) for _ in range(k)]
        n = rng.randint(0, 300 if k <= 3 else 40)
        counts = {}
        for x in itertools.product(*(range(n // g + 1) for g in gens)):
            if sum(g * v for g, v in zip(gens, x)) == n:
                m = sum(w * v for w, v in zip(weights, x))
                counts[m] = counts.get(m, 0) + 1
        A = system(weights, gens)
        ms = range(min(counts, default=0) - 2, max(counts, default=0) + 3)
        for m in ms:
            assert vpf(A, (m, n)) == counts.get(m, 0)


@pytest.mark.parametrize("weights,gens", [((1, 1, 1), (6, 9, 20)), ((2, 1, 1, 2), (2, 3, 5, 8)), ((1, -2, 3, 1), (5, 5, 6, 7))])
def test_marginalization(weights, gens):
    A = system(weights, gens)
    for n in (0, 13, 100, 257):
        lo = min(min(weights), 0) * n
        hi = max(max(weights), 0) * n
        assert sum(vpf(A, (m, n)) for m in range(lo, hi + 1)) == count_factorizations(gens, n)


def test_theorem_b_inequality_on_unimodular_systems():
    rng = random.Random(8)
    checked = 0
    while checked < 30:
        k = rng.randint(3, 4)
        gens = [rng.randint(1, 8) for _ in range(k)]
        weights = [rng.randint(-3, 4) for _ in range(k)]
        if len({F(w, g) for w, g in zip(weights, gens)}) == 1:
            continue
        A = system(weights, gens)
        if not is_unimodular(A):
            continue
        checked += 1
        for n in (1, 20, 90):
            lo, hi = (math.floor(v * n) for v in A.spline.support)
            for m in range(lo - 1, hi + 2):
                assert abs(vpf(A, (m, n)) - truncated_power(A, m, n)) <= n ** (k - 3) * e2(k)


def test_parity_counterexample():
    weights, gens = (2, 1, 1, 2), (2, 3, 5, 8)
    A = system(weights, gens)
    assert not is_unimodular(A)
    # n - m = sum (n_i - m_i) x_i and every n_i - m_i is even, so t_A vanishes
    # whenever n - m is odd; spot-check that with the exact counter.
    assert all((g - w) % 2 == 0 for w, g in zip(weights, gens))
    for n in range(2, 200, 6):
        for m in range(1, n, 2):
            assert vpf(A, (m, n)) == 0
    # T_A grows like n^2 while the bound grows like n, so the bound fails
    n = 2_000_000
    m = int(F(17, 53) * n) | 1
    assert truncated_power(A, m, n) > n ** (A.k - 3) * e2(A.k)
