"""Curry-Schoenberg B-splines M(x; a_1, ..., a_n).

The spline is the probability density on ``[a_1, a_n]`` built from the
half-open de Boor recursion.  Knots may repeat and may be given in any
order; they are sorted on construction.  Rational knots give exact
``Fraction`` results throughout, float knots give floats.

Conventions worth knowing:

* the base case is half-open, so ``M(a_n) == 0`` even when the rightmost
  knot is repeated and the spline jumps there;
* recursion terms whose denominator vanishes are taken to be zero.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _poly
from .errors import AllKnotsEqual, RepeatedKnots, TooFewKnots
from .values import Value, format_value, parse_value, unify

__all__ = [
    "KnotSequence",
    "PiecewisePolynomial",
    "make_knots",
    "eval_recursive",
    "eval_basis",
    "eval_explicit",
    "piecewise_expand",
    "integrate",
    "moment",
    "variance",
    "cdf",
    "quantile",
    "mode",
    "lipschitz_bound",
    "max_abs",
]


@dataclass(frozen=True)
class KnotSequence:
    knots: tuple
    original: tuple
    exact: bool

    def __len__(self):
        return len(self.knots)

    @property
    def distinct(self) -> tuple:
        out = []
        for a in self.knots:
            if not out or a != out[-1]:
                out.append(a)
        return tuple(out)

    def multiplicity(self, a) -> int:
        return sum(1 for b in self.knots if b == a)

    def as_float(self) -> "KnotSequence":
        if not self.exact:
            return self
        return KnotSequence(
            tuple(float(a) for a in self.knots),
            tuple(float(a) for a in self.original),
            False,
        )


def make_knots(values) -> KnotSequence:
    """Sort ``values`` into a knot sequence (the permutation convention for
    unordered knots)."""
    if isinstance(values, KnotSequence):
        return values
    if isinstance(values, str):
        values = [parse_value(v) for v in values.split(",")]
    vals, exact = unify(values)
    if len(vals) < 2:
        raise TooFewKnots(f"need at least two knots, got {len(vals)}")
    if all(v == vals[0] for v in vals):
        raise AllKnotsEqual(f"all knots equal {format_value(vals[0])}")
    if any(isinstance(v, float) and not math.isfinite(v) for v in vals):
        raise ValueError("knots must be finite")
    return KnotSequence(tuple(sorted(vals)), vals, exact)


def _coerce_x(x, knots: KnotSequence):
    if isinstance(x, str):
        x = parse_value(x)
    if knots.exact and not isinstance(x, float):
        return Fraction(x), knots.knots
    return float(x), tuple(float(a) for a in knots.knots)


def _basis_table(x, a, order):
    """Values of M_{i,j}(x) for j = 1..order, as a list of lists."""
    n = len(a)
    row = []
    for i in range(n - 1):
        if a[i] <= x < a[i + 1]:
            row.append(1 / (a[i + 1] - a[i]))
        else:
            row.append(0 * x)
    table = [None, row]
    for j in range(2, order + 1):
        prev = table[-1]
        row = []
        for i in range(n - j):
            den = a[i + j] - a[i]
            if den == 0:
                row.append(0 * x)
                continue
            row.append(((x - a[i]) * prev[i] + (a[i + j] - x) * prev[i + 1]) / den)
        table.append(row)
    return table


def eval_basis(x, knots, i: int, order: int):
    """The recursive basis value M_{i,order}(x), with ``i`` zero-based."""
    knots = make_knots(knots)
    x, a = _coerce_x(x, knots)
    if order < 1 or i < 0 or i + order >= len(a):
        raise IndexError("basis index out of range")
    return _basis_table(x, a, order)[order][i]


def eval_recursive(x, knots) -> Value:
    """M(x; knots) by the de Boor recursion."""
    knots = make_knots(knots)
    x, a = _coerce_x(x, knots)
    n = len(a)
    return (n - 1) * _basis_table(x, a, n - 1)[n - 1][0]


def eval_explicit(x, knots) -> Value:
    """M(x; knots) from the truncated-power sum; distinct knots only."""
    knots = make_knots(knots)
    if len(knots.distinct) != len(knots):
        raise RepeatedKnots("explicit formula needs pairwise distinct knots")
    x, a = _coerce_x(x, knots)
    n = len(a)
    total = 0 * x
    for i, ai in enumerate(a):
        t = ai - x
        if t <= 0:
            continue
        den = 1
        for j, aj in enumerate(a):
            if j != i:
                den *= ai - aj
        total += t ** (n - 2) / den
    return (n - 1) * total


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Piecewise polynomial, zero outside ``[breakpoints[0], breakpoints[-1])``.

    ``pieces[j]`` holds monomial coefficients (ascending degree) valid on
    the half-open interval ``[breakpoints[j], breakpoints[j+1])``.
    """

    breakpoints: tuple
    pieces: tuple
    exact: bool

    @property
    def kind(self) -> str:
        return "rational" if self.exact else "float"

    @property
    def support(self) -> tuple:
        return self.breakpoints[0], self.breakpoints[-1]

    def intervals(self):
        for j, p in enumerate(self.pieces):
            yield self.breakpoints[j], self.breakpoints[j + 1], p

    def _x(self, x):
        if isinstance(x, str):
            x = parse_value(x)
        if self.exact and not isinstance(x, float):
            return Fraction(x)
        return x

    def __call__(self, x):
        x = self._x(x)
        b = self.breakpoints
        if x < b[0] or x >= b[-1]:
            return 0 * x if not isinstance(x, float) else 0.0
        j = bisect.bisect_right(b, x) - 1
        return _poly.evaluate(self.pieces[j], x)

    def left_limit(self, x):
        """Limit from the left at ``x``."""
        x = self._x(x)
        b = self.breakpoints
        if x <= b[0] or x > b[-1]:
            return 0 * x
        j = bisect.bisect_left(b, x) - 1
        return _poly.evaluate(self.pieces[j], x)

    def derivative(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(
            self.breakpoints, tuple(_poly.deriv(p) for p in self.pieces), self.exact
        )

    def to_dict(self) -> dict:
        return {
            "breakpoints": [format_value(v) for v in self.breakpoints],
            "pieces": [[format_value(c) for c in p] for p in self.pieces],
            "kind": self.kind,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewisePolynomial":
        exact = data["kind"] == "rational"
        conv = (lambda v: Fraction(v)) if exact else float
        return cls(
            tuple(conv(v) for v in data["breakpoints"]),
            tuple(tuple(conv(c) for c in p) for p in data["pieces"]),
            exact,
        )


def piecewise_expand(knots) -> PiecewisePolynomial:
    """Exact piecewise-polynomial form of M(x; knots)."""
    knots = make_knots(knots)
    a = knots.knots
    n = len(a)
    order = n - 1
    b = knots.distinct
    pieces = []
    for j in range(len(b) - 1):
        lo, hi = b[j], b[j + 1]
        # M_{i,1} restricted to [lo, hi) is a constant or zero.
        row = []
        for i in range(n - 1):
            if a[i] < a[i + 1] and a[i] <= lo and hi <= a[i + 1]:
                row.append((1 / (a[i + 1] - a[i]),))
            else:
                row.append(())
        for k in range(2, order + 1):
            nxt = []
            for i in range(n - k):
                den = a[i + k] - a[i]
                if den == 0:
                    nxt.append(())
                    continue
                left = _poly.mul((-a[i], 1), row[i])
                right = _poly.mul((a[i + k], -1), row[i + 1])
                nxt.append(_poly.scale(_poly.add(left, right), 1 / den))
            row = nxt
        pieces.append(_poly.scale(row[0], order))
    return PiecewisePolynomial(tuple(b), tuple(pieces), knots.exact)


def _as_pp(spline) -> PiecewisePolynomial:
    if isinstance(spline, PiecewisePolynomial):
        return spline
    return piecewise_expand(spline)


def _endpoint(pp: PiecewisePolynomial, v, default):
    if v is None:
        return default
    if isinstance(v, str):
        v = parse_value(v)
    if isinstance(v, float) and math.isinf(v):
        return pp.breakpoints[0] if v < 0 else pp.breakpoints[-1]
    if pp.exact:
        return Fraction(v)
    return float(v)


def _raw_endpoint(pp, v):
    if isinstance(v, str):
        v = parse_value(v)
    if isinstance(v, float) and math.isinf(v):
        return v
    return Fraction(v) if pp.exact else float(v)


def _clip(pp, alpha, beta):
    if alpha is not None and beta is not None:
        if _raw_endpoint(pp, alpha) > _raw_endpoint(pp, beta):
            raise ValueError("alpha must not exceed beta")
    lo = _endpoint(pp, alpha, pp.breakpoints[0])
    hi = _endpoint(pp, beta, pp.breakpoints[-1])
    return max(lo, pp.breakpoints[0]), min(hi, pp.breakpoints[-1])


def _integrate_pieces(pp, pieces, alpha, beta):
    lo, hi = _clip(pp, alpha, beta)
    total = 0 if pp.exact else 0.0
    if lo >= hi:
        return Fraction(total) if pp.exact else total
    for j, p in enumerate(pieces):
        l, r = pp.breakpoints[j], pp.breakpoints[j + 1]
        l, r = max(l, lo), min(r, hi)
        if l >= r:
            continue
        P = _poly.antideriv(p)
        total += _poly.evaluate(P, r) - _poly.evaluate(P, l)
    return total


def integrate(spline, alpha=None, beta=None) -> Value:
    """Integral over ``[alpha, beta]``; ``None`` or infinities mean unbounded."""
    pp = _as_pp(spline)
    return _integrate_pieces(pp, pp.pieces, alpha, beta)


def moment(spline, r: int, alpha=None, beta=None) -> Value:
    """Integral of ``t**r * M(t)``."""
    if r < 0:
        raise ValueError("moment order must be nonnegative")
    pp = _as_pp(spline)
    pieces = [_poly.shift_power(p, r) for p in pp.pieces]
    return _integrate_pieces(pp, pieces, alpha, beta)


def variance(spline) -> Value:
    pp = _as_pp(spline)
    m1 = moment(pp, 1)
    return moment(pp, 2) - m1 * m1


def cdf(spline, x) -> Value:
    return integrate(spline, None, x)


def quantile(spline, p, rel_tol: float = 1e-12):
    """The point where the CDF reaches ``p``; found by bisection."""
    pp = _as_pp(spline)
    lo_s, hi_s = pp.support
    if p < 0 or p > 1:
        raise ValueError("p must lie in [0, 1]")
    if p <= 0:
        return lo_s
    if p >= 1:
        return hi_s
    if pp.exact and not isinstance(p, float):
        p = Fraction(p)
    acc = 0 if pp.exact else 0.0
    for l, r, piece in pp.intervals():
        P = _poly.antideriv(piece)
        base = _poly.evaluate(P, l)
        mass = _poly.evaluate(P, r) - base
        if acc + mass >= p:
            target = p - acc
            a, b = l, r
            floor = 1e-15 * float(hi_s - lo_s)
            while b - a > max(rel_tol * max(abs(a), abs(b)), floor):
                mid = (a + b) / 2
                if _poly.evaluate(P, mid) - base < target:
                    a = mid
                else:
                    b = mid
            return float((a + b) / 2)
        acc += mass
    return hi_s


def _close(u, v) -> bool:
    if not isinstance(u, float) and not isinstance(v, float):
        return u == v
    return abs(u - v) <= 1e-12 * max(1.0, abs(u), abs(v))


def mode(spline):
    """Leftmost global maximizer over the closed support.

    One-sided limits at breakpoints count as candidates, so a supremum that
    is only approached at a jump is still reported at that knot.
    """
    pp = _as_pp(spline)
    best_x = best_v = None
    for l, r, p in pp.intervals():
        cands = [(l, _poly.evaluate(p, l)), (r, _poly.evaluate(p, r))]
        cands += [(c, _poly.evaluate(p, c)) for c in _poly.real_roots(_poly.deriv(p), l, r)]
        for x, v in cands:
            if best_v is None or (v > best_v and not _close(v, best_v)):
                best_x, best_v = x, v
            elif _close(v, best_v) and x < best_x:
                best_x, best_v = x, v
    return best_x


def _jump_inside(pp, lo, hi) -> bool:
    for c in pp.breakpoints:
        if lo < c <= hi:
            if not _close(pp.left_limit(c), pp(c)):
                return True
    return False


def _max_abs_poly(p, l, r):
    cands = [abs(_poly.evaluate(p, l)), abs(_poly.evaluate(p, r))]
    cands += [abs(_poly.evaluate(p, c)) for c in _poly.real_roots(_poly.deriv(p), l, r)]
    return max(cands)


def max_abs(spline, alpha=None, beta=None):
    """Supremum of ``|M|`` on ``[alpha, beta]`` (one-sided limits included)."""
    pp = _as_pp(spline)
    lo, hi = _clip(pp, alpha, beta)
    best = 0 if pp.exact else 0.0
    for l, r, p in pp.intervals():
        l, r = max(l, lo), min(r, hi)
        if l <= r:
            best = max(best, _max_abs_poly(p, l, r))
    return best


def lipschitz_bound(spline, alpha=None, beta=None):
    """An admissible Lipschitz constant of ``M`` on ``[alpha, beta]``.

    The maximum of ``|M'|`` over the pieces meeting the interval, or
    ``math.inf`` when ``M`` jumps inside it.
    """
    pp = _as_pp(spline)
    a = -math.inf if alpha is None else _raw_endpoint(pp, alpha)
    b = math.inf if beta is None else _raw_endpoint(pp, beta)
    if a > b:
        raise ValueError("alpha must not exceed beta")
    if _jump_inside(pp, a, b):
        return math.inf
    lo, hi = max(a, pp.breakpoints[0]), min(b, pp.breakpoints[-1])
    best = 0 if pp.exact else 0.0
    for l, r, p in pp.intervals():
        l, r = max(l, lo), min(r, hi)
        if l < r:
            best = max(best, _max_abs_poly(_poly.deriv(p), l, r))
    return best
