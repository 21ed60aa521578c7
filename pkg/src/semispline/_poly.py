# Dense polynomials as coefficient tuples in ascending degree. Coefficients
# may be Fractions or floats; the arithmetic is whatever the coefficients do.
from __future__ import annotations

from fractions import Fraction

import numpy as np


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return trim(out)


def scale(p, c):
    return trim(c * a for a in p)


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def deriv(p):
    return trim(i * p[i] for i in range(1, len(p)))


def antideriv(p):
    if not p:
        return ()
    # int / int would drop to float
    return trim([0] + [c / Fraction(i + 1) if isinstance(c, int) else c / (i + 1)
                       for i, c in enumerate(p)])


def shift_power(p, r):
    """Multiply by x**r."""
    if not p:
        return ()
    return tuple([0] * r) + tuple(p)


def real_roots(p, lo, hi):
    """Float roots of ``p`` strictly inside ``(lo, hi)``."""
    p = trim(p)
    if len(p) <= 1:
        return []
    coeffs = [float(c) for c in reversed(p)]
    roots = np.roots(coeffs)
    flo, fhi = float(lo), float(hi)
    out = []
    for r in roots:
        if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)) and flo < r.real < fhi:
            out.append(float(r.real))
    return sorted(out)
