import itertools
import math
import random
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from semispline.errors import NotUnimodular
from semispline.lattice import (
    delta_gcd,
    integer_preimage,
    is_primitive_vector,
    is_unimodular,
    minors,
    xgcd,
)
from semispline.tpower import system


def test_unimodular_examples():
    assert not is_unimodular([(2, 1, 1, 2), (2, 3, 5, 8)])
    assert minors([(2, 1, 1, 2), (2, 3, 5, 8)]).gcd == 2
    assert is_unimodular([(1, 1, 1), (6, 9, 20)])
    assert is_unimodular([(1, 0), (0, 1)])
    assert is_unimodular(system((2, 3, 3), (3, 4, 6)))


def test_minor_count_and_values():
    ms = minors([(1, 2, 3, 4), (5, 6, 7, 9)])
    assert len(ms.values) == 6
    assert ms.values[(0, 1)] == 1 * 6 - 2 * 5


def test_single_column_is_not_unimodular():
    assert not is_unimodular([(1,), (1,)])


def test_delta_gcd_examples():
    assert delta_gcd((2, 3, 5, 8)) == 1
    assert delta_gcd((3, 5, 7, 9)) == 2
    assert delta_gcd((5, 5)) == 0


def test_primitive_examples():
    assert is_primitive_vector((6, 9, 20))
    assert not is_primitive_vector((6, 9, 21))
    assert not is_primitive_vector((2,))


def test_non_integer_entries_rejected():
    with pytest.raises(ValueError):
        minors([(0.5, 1), (1, 2)])


def test_delta_matches_all_ones_system():
    rng = random.Random(4)
    for _ in range(100):
        gens = [rng.randint(1, 40) for _ in range(rng.randint(2, 5))]
        ones = [1] * len(gens)
        assert is_unimodular([ones, gens]) == (delta_gcd(gens) == 1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_delta_gcd_permutation_invariant(k):
    rng = random.Random(k)
    for _ in range(10):
        gens = [rng.randint(1, 30) for _ in range(k)]
        values = {delta_gcd(p) for p in itertools.permutations(gens)}
        assert len(values) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


def test_preimage_on_random_unimodular_systems():
    rng = random.Random(9)
    found = 0
    while found < 100:
        k = rng.randint(2, 5)
        top = [rng.randint(-6, 6) for _ in range(k)]
        bottom = [rng.randint(1, 9) for _ in range(k)]
        if not is_unimodular([top, bottom]):
            continue
        found += 1
        n = rng.randint(0, 500)
        m = rng.randint(min(top) * n, max(top) * n) if n else rng.randint(-5, 5)
        z = integer_preimage([top, bottom], (m, n))
        assert sum(a * x for a, x in zip(top, z)) == m
        assert sum(a * x for a, x in zip(bottom, z)) == n


def test_preimage_requires_unimodular():
    with pytest.raises(NotUnimodular):
        integer_preimage([(2, 1, 1, 2), (2, 3, 5, 8)], (1, 2))


def test_gcd_conventions():
    assert minors([(0, 0), (0, 0)]).gcd == 0
    assert minors([(1, 2), (3, -4)]).gcd == abs(1 * -4 - 2 * 3)
    assert reduce(math.gcd, [0, 0], 0) == 0
