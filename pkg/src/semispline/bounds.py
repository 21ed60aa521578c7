"""Explicit error constants and machine checks of the three bounds.

* counting bound: factorizations with scaled weighted length in
  ``[alpha, beta]`` versus ``n^(k-1)`` times a spline integral, error at
  most ``n^(k-2) * e1(k)``;
* partition bound: ``|t_A(b) - T_A(b)| <= n^(k-3) * e2(k)`` for unimodular A;
* statistic bound: weighted sums of ``f`` versus the spline integral of
  ``f``, error at most ``e3(n, k, ...)``.

Constants with half-integer exponents are evaluated with 40 significant
digits and rounded up to the next float, so a check can never pass on
rounding alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import mpmath

from . import lattice, semigroup
from .bspline import integrate, lipschitz_bound, max_abs
from .errors import DegenerateRows, DomainError, IntervalTooNarrow, NotUnimodular
from .functions import get_function, integrate_against
from .partition import vpf
from .tpower import SystemMatrix, system, truncated_power
from .values import format_value, parse_value, to_value

__all__ = [
    "BoundReport",
    "DependentRows",
    "e1",
    "e2",
    "e3",
    "check_theorem_a",
    "check_theorem_b",
    "check_theorem_c",
    "run_descriptor",
]

DependentRows = DegenerateRows
FLOAT_CUSHION = 1e-9


def _round_up(x: mpmath.mpf) -> float:
    f = float(x)
    if math.isfinite(f) and mpmath.mpf(f) < x:
        f = math.nextafter(f, math.inf)
    return f


def _constant(base: int, k_exp: int, num: int) -> float:
    # 8**k_exp * base**(num / 2)
    with mpmath.workdps(40):
        val = mpmath.mpf(8) ** k_exp * mpmath.mpf(base) ** (mpmath.mpf(num) / 2)
        return _round_up(val)


def e1(k: int) -> float:
    """``8^(k-2) * (k-1)^((3k^2 - k - 7)/2)``."""
    if k < 2:
        raise ValueError("e1 needs k >= 2")
    return _constant(k - 1, k - 2, 3 * k * k - k - 7)


def e2(k: int) -> float:
    """``8^(k-3) * (k-2)^((3k^2 - 7k - 3)/2)``."""
    if k < 3:
        raise ValueError("e2 needs k >= 3")
    return _constant(k - 2, k - 3, 3 * k * k - 7 * k - 3)


def e3(n: int, k: int, alpha, beta, c1, c2, c3) -> float:
    """Error bound for weighted statistic sums."""
    if n < 1 or k < 3:
        raise ValueError("e3 needs n >= 1 and k >= 3")
    if beta < alpha:
        raise ValueError("alpha must not exceed beta")
    if min(c1, c2, c3) < 0:
        raise ValueError("constants must be nonnegative")
    width = float(beta) - float(alpha)
    k1 = float(c1) * e2(k)
    head = width * (k1 + float(c3)) + 2 * float(c2)
    return head * float(n) ** (k - 2) + k1 * float(n) ** (k - 3)


@dataclass
class BoundReport:
    theorem: str
    instance: dict
    lhs: object
    bound: float
    details: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return float(self.bound) - float(self.lhs)

    @property
    def passed(self) -> bool:
        if isinstance(self.lhs, Fraction) and math.isfinite(self.bound):
            return self.lhs <= Fraction(self.bound)
        return float(self.lhs) <= self.bound * (1 + FLOAT_CUSHION)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "lhs": format_value(self.lhs),
            "lhs_float": float(self.lhs),
            "bound": self.bound,
            "slack": self.slack,
            "pass": self.passed,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, Fraction):
        return format_value(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _endpoint(v, default):
    if v is None:
        return default
    if isinstance(v, str):
        v = parse_value(v)
    return to_value(v)


def _in_interval(x, lo, hi) -> bool:
    return lo <= x <= hi


def check_theorem_a(gens, weights, n, alpha=None, beta=None) -> BoundReport:
    """Count of scaled weighted lengths in ``[alpha, beta]`` against the
    spline integral."""
    gens = semigroup.check_generators(gens)
    if reduce(math.gcd, gens) != 1:
        raise DomainError("generators must have gcd 1")
    if n < 1:
        raise ValueError("n must be positive")
    A = system(weights, gens)
    pp = A.spline  # raises DependentRows
    a = _endpoint(alpha, -math.inf)
    b = _endpoint(beta, math.inf)
    if a > b:
        raise ValueError("alpha must not exceed beta")
    k = len(gens)
    if A.exact:
        lengths = semigroup.weighted_lengths(gens, A.weights, n)
        lo = a * n if math.isfinite(a) else a
        hi = b * n if math.isfinite(b) else b
        count = sum(c for l, c in lengths.counts.items() if _in_interval(l, lo, hi))
        integral = integrate(pp, a, b)
        approx = Fraction(n) ** (k - 1) * integral / A.normalizer
        lhs = abs(count - approx)
    else:
        vals = semigroup.float_lengths(gens, A.weights, n) / n
        count = int(((vals >= a) & (vals <= b)).sum())
        integral = float(integrate(pp, a, b))
        approx = float(n) ** (k - 1) * integral / float(A.normalizer)
        lhs = abs(count - approx)
    bound = float(n) ** (k - 2) * e1(k)
    instance = {
        "generators": list(gens),
        "weights": [_jsonable(w) for w in A.weights],
        "n": n,
        "alpha": _jsonable(a),
        "beta": _jsonable(b),
    }
    return BoundReport("A", instance, lhs, bound, {"count": count, "approx": approx})


def check_theorem_b(A, b) -> BoundReport:
    """``|t_A(b) - T_A(b)|`` against ``n^(k-3) e2(k)``."""
    if not isinstance(A, SystemMatrix):
        A = SystemMatrix.from_rows(A)
    m, n = int(b[0]), int(b[1])
    if A.k < 3:
        raise ValueError("the partition bound needs k >= 3")
    if n < 1:
        raise ValueError("n must be positive")
    ms = lattice.minors(A)
    if not ms.unimodular:
        raise NotUnimodular(f"gcd of 2x2 minors is {ms.gcd}")
    t = vpf(A, (m, n))
    T = truncated_power(A, m, n)
    bound = float(n) ** (A.k - 3) * e2(A.k)
    instance = {
        "weights": [_jsonable(w) for w in A.weights],
        "generators": [_jsonable(g) for g in A.generators],
        "m": m,
        "n": n,
    }
    return BoundReport("B", instance, abs(t - T), bound, {"t_A": t, "T_A": T, "T_A_float": float(T)})


def _statistic_interval(alpha, beta, n, support):
    """Clip ``[alpha, beta]`` to the spline support, keeping width >= 1/n.

    Sums and integrals see nothing outside the support, so the bound may be
    applied to the clipped interval instead.
    """
    g_lo, g_hi = support
    a = max(alpha, g_lo)
    b = min(beta, g_hi)
    need = Fraction(1, n)
    if b - a < need:
        b = min(beta, a + need)
        a = max(alpha, b - need)
    return a, b


def check_theorem_c(gens, weights, n, alpha, beta, f) -> BoundReport:
    """Weighted sum of ``f(m.x/n)`` against the spline integral of ``f``."""
    gens = semigroup.check_generators(gens)
    if n < 1:
        raise ValueError("n must be positive")
    f = get_function(f)
    A = system(weights, gens)
    for w in A.weights:
        if isinstance(w, float) or Fraction(w).denominator != 1:
            raise DomainError("the statistic bound needs integer weights")
    ms = lattice.minors(A)
    if not ms.unimodular:
        raise NotUnimodular(f"gcd of 2x2 minors is {ms.gcd}")
    alpha = _endpoint(alpha, -math.inf)
    beta = _endpoint(beta, math.inf)
    if beta - alpha < Fraction(1, n):
        raise IntervalTooNarrow(f"beta - alpha must be at least 1/{n}")
    pp = A.spline
    k = A.k
    a, b = _statistic_interval(alpha, beta, n, pp.support)

    lengths = semigroup.weighted_lengths(gens, A.weights, n)
    terms = [c * float(f(Fraction(l, n))) for l, c in lengths.counts.items()
             if alpha * n <= l <= beta * n]
    total = math.fsum(terms)
    integral = integrate_against(pp, f, a, b)
    approx = float(n) ** (k - 1) * float(integral) / float(A.normalizer)
    lhs = abs(total - approx)

    c1 = float(f.sup_abs(a, b))
    m_sup = float(max_abs(pp, a, b))
    m_lip = float(lipschitz_bound(pp, a, b))
    norm = float(A.normalizer)
    c2 = c1 * m_sup / norm
    c3 = (float(f.sup_abs_deriv(a, b)) * m_sup + c1 * m_lip) / norm if m_lip else (
        float(f.sup_abs_deriv(a, b)) * m_sup / norm)
    bound = e3(n, k, a, b, c1, c2, c3)

    # Constants under the literal reading of the hypothesis, on [a n, b n].
    lo_alt, hi_alt = max(a * n, pp.support[0]), min(b * n, pp.support[1])
    if lo_alt <= hi_alt:
        c2_alt = float(f.sup_abs(lo_alt, hi_alt)) * float(max_abs(pp, lo_alt, hi_alt)) / norm
        lip_alt = float(lipschitz_bound(pp, lo_alt, hi_alt))
        c3_alt = (float(f.sup_abs_deriv(lo_alt, hi_alt)) * float(max_abs(pp, lo_alt, hi_alt))
                  + float(f.sup_abs(lo_alt, hi_alt)) * lip_alt) / norm
    else:
        c2_alt = c3_alt = 0.0

    z = lengths.total
    instance = {
        "generators": list(gens),
        "weights": [_jsonable(w) for w in A.weights],
        "n": n,
        "alpha": _jsonable(alpha),
        "beta": _jsonable(beta),
        "function": f.name,
    }
    details = {
        "sum": total,
        "approx": approx,
        "interval_used": [_jsonable(a), _jsonable(b)],
        "C1": c1,
        "C2": c2,
        "C3": c3,
        "C2_scaled_reading": c2_alt,
        "C3_scaled_reading": c3_alt,
        "normalized_sum": total / z if z else 0.0,
        "spline_integral": float(integral),
    }
    return BoundReport("C", instance, lhs, bound, details)


def run_descriptor(theorem: str, desc: dict) -> BoundReport:
    """Evaluate one instance descriptor (see the CLI's ``verify``)."""
    gens = desc["generators"]
    weights = [to_value(w) for w in desc["weights"]]
    n = int(desc["n"])
    theorem = theorem.upper().replace("THEOREM-", "").replace("THEOREM_", "")
    if theorem == "A":
        return check_theorem_a(gens, weights, n, desc.get("alpha"), desc.get("beta"))
    if theorem == "B":
        return check_theorem_b(system(weights, gens), (int(desc["m"]), n))
    if theorem == "C":
        return check_theorem_c(
            gens, weights, n, desc.get("alpha"), desc.get("beta"), desc.get("function", "one")
        )
    raise ValueError(f"unknown theorem {theorem!r}")
