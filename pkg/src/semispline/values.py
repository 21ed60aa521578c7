"""Numeric kinds: exact rationals and floats.

Exact inputs (``int``, ``Fraction``, ``"p/q"`` strings) stay exact through
every computation; a single float anywhere switches the whole computation to
floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Value = Union[Fraction, float]


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def parse_value(text: str, allow_float: bool = True) -> Value:
    """Parse ``"3"``, ``"-2/5"``, ``"0.25"``, ``"inf"`` or ``"-inf"``.

    Decimal strings are read as exact rationals; only the spellings that
    Python's ``float`` needs (exponents, ``nan``, ``inf``) produce floats.
    """
    s = text.strip()
    low = s.lower()
    if low in ("inf", "+inf", "infinity"):
        return math.inf
    if low in ("-inf", "-infinity"):
        return -math.inf
    try:
        return Fraction(s)
    except ValueError:
        pass
    if not allow_float:
        raise ValueError(f"not an exact rational: {text!r}")
    return float(s)


def to_value(x) -> Value:
    if isinstance(x, bool):
        raise TypeError("booleans are not numeric values")
    if isinstance(x, str):
        return parse_value(x)
    if is_exact(x):
        return Fraction(x)
    return float(x)


def unify(values: Iterable) -> tuple[tuple[Value, ...], bool]:
    """Convert to a common kind; returns ``(values, exact)``."""
    vals = [to_value(v) for v in values]
    exact = all(isinstance(v, Fraction) for v in vals)
    if not exact:
        vals = [float(v) for v in vals]
    return tuple(vals), exact


def format_value(x) -> str | float:
    """JSON-friendly form: rationals as ``"p/q"`` strings, floats unchanged."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return float(x)


def as_float(x) -> float:
    return float(x)
