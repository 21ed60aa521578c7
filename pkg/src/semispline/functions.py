"""Named test functions f with analytic bounds on an interval.

Each entry knows ``sup |f|`` and ``sup |f'|`` on any finite ``[a, b]``,
which is what the statistic bound needs for its constants.  Polynomials
also carry their coefficients so integrals against a rational spline stay
exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate as _quad

from . import _poly
from .bspline import PiecewisePolynomial, _as_pp, _clip

__all__ = ["NamedFunction", "get_function", "integrate_against", "FUNCTION_NAMES"]


@dataclass(frozen=True)
class NamedFunction:
    name: str
    func: Callable[[float], float]
    sup_abs: Callable[[float, float], float]
    sup_abs_deriv: Callable[[float, float], float]
    poly: tuple | None = None
    vec: Callable | None = None

    def __call__(self, t):
        if self.poly is not None:
            return _poly.evaluate(self.poly, t)
        return self.func(float(t))

    def on_array(self, t: np.ndarray) -> np.ndarray:
        if self.vec is not None:
            return self.vec(t)
        return np.array([self.func(float(v)) for v in t])


def _reach(a, b):
    return max(abs(float(a)), abs(float(b)))


def _power(r: int) -> NamedFunction:
    if r < 0:
        raise ValueError("power must be nonnegative")
    coeffs = tuple([0] * r + [1])
    return NamedFunction(
        name=f"power:{r}",
        func=lambda t: t**r,
        sup_abs=lambda a, b: _reach(a, b) ** r,
        sup_abs_deriv=lambda a, b: r * _reach(a, b) ** (r - 1) if r else 0.0,
        poly=coeffs,
        vec=lambda t: np.asarray(t, dtype=float) ** r,
    )


def _exp_sin_sq() -> NamedFunction:
    # |sin u| <= min(1, |u|);  f' = e^t (sin t^2 + 2 t cos t^2)
    def sup(a, b):
        return math.exp(float(b)) * min(1.0, _reach(a, b) ** 2)

    def dsup(a, b):
        r = _reach(a, b)
        return math.exp(float(b)) * (min(1.0, r * r) + 2 * r)

    return NamedFunction(
        "exp_sin_sq",
        lambda t: math.exp(t) * math.sin(t * t),
        sup,
        dsup,
        vec=lambda t: np.exp(t) * np.sin(t * t),
    )


_FIXED = {
    "one": lambda: NamedFunction(
        "one", lambda t: 1.0, lambda a, b: 1, lambda a, b: 0, (1,), np.ones_like
    ),
    "indicator": lambda: NamedFunction(
        "indicator", lambda t: 1.0, lambda a, b: 1, lambda a, b: 0, (1,), np.ones_like
    ),
    "exp": lambda: NamedFunction(
        "exp",
        math.exp,
        lambda a, b: math.exp(float(b)),
        lambda a, b: math.exp(float(b)),
        vec=np.exp,
    ),
    "exp_sin_sq": _exp_sin_sq,
    "mean": lambda: _power(1),
}

FUNCTION_NAMES = tuple(_FIXED) + ("power:<r>",)


def get_function(name) -> NamedFunction:
    """Look up ``one``, ``indicator``, ``exp``, ``exp_sin_sq``, ``mean`` or
    ``power:<r>``.  The indicator is 1 on the statistic's own interval."""
    if isinstance(name, NamedFunction):
        return name
    key = name.strip().lower()
    if key.startswith("power"):
        return _power(int(key.split(":", 1)[1]))
    try:
        return _FIXED[key]()
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {FUNCTION_NAMES}") from None


def integrate_against(spline, f, alpha=None, beta=None):
    """Integral of ``f(t) * M(t)`` over ``[alpha, beta]``.

    Exact for polynomial ``f`` and rational knots; adaptive quadrature on
    each polynomial piece otherwise.
    """
    pp: PiecewisePolynomial = _as_pp(spline)
    f = get_function(f)
    lo, hi = _clip(pp, alpha, beta)
    if f.poly is not None:
        total = 0 if pp.exact else 0.0
        for l, r, p in pp.intervals():
            l, r = max(l, lo), min(r, hi)
            if l < r:
                P = _poly.antideriv(_poly.mul(p, f.poly))
                total += _poly.evaluate(P, r) - _poly.evaluate(P, l)
        return total
    total = 0.0
    for l, r, p in pp.intervals():
        l, r = max(l, lo), min(r, hi)
        if l < r:
            fp = tuple(float(c) for c in p)
            val, _ = _quad.quad(
                lambda t: f.func(t) * _poly.evaluate(fp, t),
                float(l), float(r), epsabs=1e-15, epsrel=1e-13, limit=200,
            )
            total += val
    return total
