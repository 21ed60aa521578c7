"""Empirical versus predicted length distributions.

The empirical side comes from the exact length multiset of ``Z_S(n)``; the
predicted side from the B-spline with knots ``m_i / n_i``, scaled by ``n``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import semigroup
from .bspline import cdf, integrate, mode, moment, quantile, variance
from .errors import DegenerateRows, EmptyFactorizationSet
from .functions import get_function, integrate_against
from .tpower import system
from .values import format_value, to_value

__all__ = [
    "DotPlotData",
    "HistogramData",
    "StatSummary",
    "dot_plot",
    "histogram",
    "summary",
    "f_statistic",
    "f_statistic_sweep",
    "cdf_gap",
    "to_csv",
    "to_json",
]


def _meta(gens, weights, n):
    return {"generators": list(gens), "weights": [format_value(w) for w in weights], "n": n}


@dataclass
class DotPlotData:
    """Rows ``(l/n, multiplicity * n / |Z_S(n)|)`` in ascending ``l``."""

    rows: list
    meta: dict
    empty: bool = False

    header = ("position", "height")

    def table(self):
        return [(format_value(p), format_value(h)) for p, h in self.rows]

    def to_dict(self) -> dict:
        return {**self.meta, "empty": self.empty,
                "rows": [{"position": p, "height": h} for p, h in self.table()]}


@dataclass
class HistogramData:
    edges: np.ndarray
    density: np.ndarray
    meta: dict

    header = ("bin_left", "bin_right", "density")

    @property
    def area(self) -> float:
        return float(np.sum(self.density * np.diff(self.edges)))

    def table(self):
        return [
            (float(self.edges[i]), float(self.edges[i + 1]), float(self.density[i]))
            for i in range(len(self.density))
        ]

    def to_dict(self) -> dict:
        return {**self.meta, "rows": [dict(zip(self.header, r)) for r in self.table()]}


@dataclass
class StatSummary:
    """Each field is an ``(actual, predicted)`` pair."""

    mean: tuple
    median: tuple
    mode: tuple
    stdev: tuple
    meta: dict = field(default_factory=dict)

    header = ("statistic", "actual", "predicted")

    def table(self):
        return [
            (name, format_value(a), format_value(p))
            for name, (a, p) in (
                ("mean", self.mean), ("median", self.median),
                ("mode", self.mode), ("stdev", self.stdev),
            )
        ]

    def to_dict(self) -> dict:
        return {**self.meta, **{name: {"actual": a, "predicted": p} for name, a, p in self.table()}}


def _lengths(gens, weights, n):
    gens = semigroup.check_generators(gens)
    lengths = semigroup.weighted_lengths(gens, weights, n)
    return gens, lengths


def dot_plot(gens, weights, n, zero_rows: bool = True) -> DotPlotData:
    """Dot-plot dataset; integer weights only."""
    gens = semigroup.check_generators(gens)
    w, exact = semigroup.check_weights(weights, len(gens))
    if not exact or any(Fraction(v).denominator != 1 for v in w):
        raise ValueError("dot plots need integer weights")
    lengths = semigroup.weighted_lengths(gens, w, n)
    meta = _meta(gens, w, n)
    if lengths.total == 0:
        return DotPlotData([], meta, empty=True)
    scale = Fraction(n, lengths.total)
    denom = n if n else 1
    keys = lengths.keys()
    ells = range(int(keys[0]), int(keys[-1]) + 1) if zero_rows else [int(k) for k in keys]
    rows = [(Fraction(l, denom), lengths[l] * scale) for l in ells]
    return DotPlotData(rows, meta)


def _scaled_values(gens, weights, n) -> np.ndarray:
    w, exact = semigroup.check_weights(weights, len(gens))
    if exact:
        ms = semigroup.weighted_lengths(gens, w, n)
        items = ms.items()
        vals = np.array([float(l) for l, _ in items])
        reps = np.array([c for _, c in items], dtype=np.int64)
        vals = np.repeat(vals, reps)
    else:
        vals = semigroup.float_lengths(gens, w, n)
    return vals / n if n else vals


def histogram(gens, weights, n, bins: int) -> HistogramData:
    """Equal-width histogram of ``l/n`` with total area 1."""
    if int(bins) != bins or bins < 1:
        raise ValueError("bins must be a positive integer")
    gens = semigroup.check_generators(gens)
    vals = _scaled_values(gens, weights, n)
    if len(vals) == 0:
        raise EmptyFactorizationSet(f"{n} has no factorizations")
    density, edges = np.histogram(vals, bins=int(bins), density=True)
    w, _ = semigroup.check_weights(weights, len(gens))
    meta = {**_meta(gens, w, n), "bins": int(bins), "total": int(len(vals))}
    return HistogramData(edges, density, meta)


def _median(items, total):
    # statistics.median convention on the expanded multiset
    targets = [(total - 1) // 2, total // 2]
    found = []
    seen = 0
    for l, c in items:
        while len(found) < 2 and targets[len(found)] < seen + c:
            found.append(l)
        seen += c
        if len(found) == 2:
            break
    return (found[0] + found[1]) / 2


def _actual_stats(lengths):
    items = lengths.items()
    z = lengths.total
    mean = sum(c * l for l, c in items) / z
    var = sum(c * (l - mean) ** 2 for l, c in items) / z
    top = max(c for _, c in items)
    most = min(l for l, c in items if c == top)
    return mean, _median(items, z), most, math.sqrt(var)


def summary(gens, weights, n) -> StatSummary:
    """Mean, median, mode and population stdev, actual and predicted."""
    gens, lengths = _lengths(gens, weights, n)
    if lengths.total == 0:
        raise EmptyFactorizationSet(f"{n} has no factorizations")
    actual = _actual_stats(lengths)
    A = system(weights, gens)
    try:
        pp = A.spline
    except DegenerateRows:
        # Every ratio m_i/n_i is the same c, so every length is exactly c n.
        c = A.weights[0] / A.generators[0]
        predicted = (c * n, c * n, c * n, 0.0)
    else:
        predicted = (
            moment(pp, 1) * n,
            quantile(pp, Fraction(1, 2)) * n,
            mode(pp) * n,
            math.sqrt(variance(pp)) * n,
        )
    out = [tuple(pair) for pair in zip(actual, predicted)]
    return StatSummary(*out, meta=_meta(gens, A.weights, n))


def _interval(alpha, beta):
    a = -math.inf if alpha is None else to_value(alpha)
    b = math.inf if beta is None else to_value(beta)
    if a > b:
        raise ValueError("alpha must not exceed beta")
    return a, b


def f_statistic(gens, weights, n, f, alpha=None, beta=None):
    """``(actual, predicted)`` for the mean of ``f(l/n)`` over ``[alpha, beta]``.

    Actual divides by the full count ``|Z_S(n)|``; predicted is the integral
    of ``f`` against the (unit mass) spline over the same interval.
    """
    f = get_function(f)
    gens, lengths = _lengths(gens, weights, n)
    if lengths.total == 0:
        raise EmptyFactorizationSet(f"{n} has no factorizations")
    a, b = _interval(alpha, beta)
    inside = [(l, c) for l, c in lengths.items() if a * n <= l <= b * n]
    if f.poly is not None and lengths.exact:
        actual = sum(c * f(Fraction(l) / n) for l, c in inside) / lengths.total
    else:
        actual = math.fsum(c * float(f(l / n)) for l, c in inside) / lengths.total
    pp = system(weights, gens).spline
    predicted = integrate_against(pp, f, a, b)
    return actual, predicted


def f_statistic_sweep(gens, weights, ns, f, alpha=None, beta=None):
    """Actual f-statistics for many ``n`` from one shared length table.

    Integer weights only.  Returns ``[(n, actual), ...]`` in the order of
    ``ns``, skipping elements with no factorizations.
    """
    f = get_function(f)
    gens = semigroup.check_generators(gens)
    ns = [int(n) for n in ns]
    table = semigroup.length_table(gens, weights, max(ns))
    a, b = _interval(alpha, beta)
    ells = np.arange(table.counts.shape[1], dtype=float) + table.offset
    out = []
    for n in ns:
        row = table.counts[n]
        z = int(row.sum())
        if z == 0 or n == 0:
            continue
        mask = (row != 0) & (ells >= float(a) * n) & (ells <= float(b) * n)
        vals = f.on_array(ells[mask] / n) * row[mask].astype(float)
        out.append((n, math.fsum(vals.tolist()) / z))
    return out


def cdf_gap(gens, weights, n) -> float:
    """Sup over dot positions of ``|F_empirical - F_spline|``.

    Both one-sided values of the empirical step function are compared, so
    this is the Kolmogorov distance between the two distributions.
    """
    gens, lengths = _lengths(gens, weights, n)
    if lengths.total == 0:
        raise EmptyFactorizationSet(f"{n} has no factorizations")
    pp = system(weights, gens).spline
    z = lengths.total
    below = 0
    gap = 0
    for l, c in lengths.items():
        F = cdf(pp, l / n)
        gap = max(gap, abs(Fraction(below, z) - F) if lengths.exact else abs(below / z - F))
        below += c
        gap = max(gap, abs(Fraction(below, z) - F) if lengths.exact else abs(below / z - F))
    return float(gap)


def to_csv(data) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(data.header)
    w.writerows(data.table())
    return buf.getvalue()


def to_json(data) -> str:
    return json.dumps(data.to_dict(), indent=2, sort_keys=True) + "\n"
