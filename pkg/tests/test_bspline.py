import itertools
import json
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.interpolate import BSpline

from semispline import bspline
from semispline.bspline import (
    PiecewisePolynomial,
    eval_basis,
    eval_explicit,
    eval_recursive,
    integrate,
    lipschitz_bound,
    make_knots,
    max_abs,
    mode,
    moment,
    piecewise_expand,
    quantile,
    variance,
)
from semispline.errors import AllKnotsEqual, RepeatedKnots, TooFewKnots

MCNUGGET = (F(1, 20), F(1, 9), F(1, 6))
JUMP = (F(1, 2), F(1, 2), F(5, 9))
FIVE = (F(-2, 5), F(1, 7), F(1, 5), F(1, 2))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=30)


def knot_lists(min_size=2, max_size=6, distinct=False):
    base = st.lists(rationals, min_size=min_size, max_size=max_size, unique=distinct)
    return base.filter(lambda v: len(set(v)) > 1)


def scipy_oracle(x, knots):
    # Normalized B-spline N scaled to unit mass: M = (n-1)/(a_n - a_1) * N.
    a = [float(v) for v in sorted(knots)]
    n = len(a)
    b = BSpline.basis_element(a, extrapolate=False)
    val = b(x)
    val = 0.0 if np.isnan(val) else float(val)
    return (n - 1) / (a[-1] - a[0]) * val


# --- knots ------------------------------------------------------------------

def test_make_knots_sorts():
    ks = make_knots([F(1, 6), F(1, 20), F(1, 9)])
    assert ks.knots == MCNUGGET
    assert ks.original == (F(1, 6), F(1, 20), F(1, 9))


def test_make_knots_keeps_repeats():
    assert make_knots(JUMP).knots == JUMP
    assert make_knots(JUMP).multiplicity(F(1, 2)) == 2


def test_make_knots_errors():
    with pytest.raises(AllKnotsEqual):
        make_knots([3, 3, 3])
    with pytest.raises(TooFewKnots):
        make_knots([1])


def test_make_knots_from_string():
    assert make_knots("1/6,1/20,1/9").knots == MCNUGGET


# --- evaluation -------------------------------------------------------------

def test_recursive_examples():
    assert eval_recursive(F(1, 9), MCNUGGET) == F(120, 7)
    assert eval_recursive(2, MCNUGGET) == 0
    assert eval_recursive(F(1, 2), JUMP) == 36


def test_explicit_examples():
    assert eval_explicit(F(1, 9), MCNUGGET) == F(120, 7)
    assert eval_explicit(F(-1), MCNUGGET) == 0
    with pytest.raises(RepeatedKnots):
        eval_explicit(F(1, 2), JUMP)


def test_right_endpoint_is_zero():
    assert eval_recursive(F(5, 9), JUMP) == 0
    assert piecewise_expand(JUMP)(F(5, 9)) == 0


def test_float_knots_match_scipy():
    rng = random.Random(1)
    for _ in range(20):
        knots = sorted(rng.uniform(-3, 3) for _ in range(rng.randint(3, 6)))
        for _ in range(20):
            x = rng.uniform(knots[0], knots[-1])
            assert eval_recursive(x, knots) == pytest.approx(scipy_oracle(x, knots), abs=1e-9)


def test_basis_scaling_relation():
    knots = (F(0), F(1, 3), F(1, 2), F(1, 2), F(2), F(3))
    rng = random.Random(7)
    for _ in range(50):
        x = F(rng.randint(-10, 310), 100)
        for k in range(1, 5):
            for i in range(len(knots) - k):
                sub = knots[i : i + k + 1]
                if len(set(sub)) == 1:
                    assert eval_basis(x, knots, i, k) == 0
                    continue
                assert eval_basis(x, knots, i, k) == eval_recursive(x, sub) / k


# --- piecewise form ---------------------------------------------------------

def test_mcnugget_pieces():
    pp = piecewise_expand(MCNUGGET)
    assert pp.breakpoints == MCNUGGET
    # 1080/77 (20x - 1) and -360/7 (6x - 1)
    assert pp.pieces[0] == (F(-1080, 77), F(21600, 77))
    assert pp.pieces[1] == (F(360, 7), F(-2160, 7))


def test_jump_piece():
    pp = piecewise_expand(JUMP)
    assert pp.breakpoints == (F(1, 2), F(5, 9))
    assert pp.pieces == ((F(360), F(-648)),)


def test_five_six_seven_leading_coefficients():
    pp = piecewise_expand(FIVE)
    lead = [p[2] for p in pp.pieces]
    assert lead == [F(70 * 25, 171), F(-35 * 67, 9), F(70 * 4, 9)]
    # first piece is 70/171 (25x^2 + 20x + 4)
    assert pp.pieces[0] == tuple(F(70, 171) * c for c in (4, 20, 25))


def test_pieces_agree_with_recursion_dense():
    for knots in (MCNUGGET, JUMP, FIVE, (F(0), F(1), F(1), F(1), F(3))):
        pp = piecewise_expand(knots)
        lo, hi = pp.support
        for i in range(1000):
            x = lo + (hi - lo) * F(2 * i + 1, 2000)
            assert pp(x) == eval_recursive(x, knots)


def test_serialization_roundtrip():
    pp = piecewise_expand(FIVE)
    data = json.loads(json.dumps(pp.to_dict()))
    assert data["kind"] == "rational"
    assert data["breakpoints"][0] == "-2/5"
    assert PiecewisePolynomial.from_dict(data) == pp
    fpp = piecewise_expand([0.0, 1.0, 2.5])
    assert PiecewisePolynomial.from_dict(fpp.to_dict()) == fpp


# --- integrals and statistics -----------------------------------------------

def test_integrals():
    assert integrate(piecewise_expand(MCNUGGET)) == 1
    assert integrate(piecewise_expand(FIVE), -math.inf, math.inf) == 1
    assert integrate(piecewise_expand(FIVE), F(1, 7), F(1, 7)) == 0
    picnic = integrate(piecewise_expand([6, 9, 20]), F(15, 2), 15)
    assert round(float(picnic), 3) == 0.784
    assert picnic == F(69, 88)


def test_interval_order_checked():
    with pytest.raises(ValueError):
        integrate(piecewise_expand(MCNUGGET), F(1, 2), F(1, 3))
    # an interval entirely left of the support is fine
    assert integrate(piecewise_expand(MCNUGGET), -math.inf, F(1, 100)) == 0


def test_moments():
    pp = piecewise_expand(MCNUGGET)
    assert moment(pp, 0) == 1
    assert round(5000 * float(moment(pp, 1)), 2) == 546.30
    sd = 2000 * math.sqrt(variance(piecewise_expand(JUMP)))
    assert round(sd, 2) == 26.19


def test_quantile_examples():
    pp = piecewise_expand(JUMP)
    assert quantile(pp, F(1, 2)) == pytest.approx((20 - math.sqrt(2)) / 36, rel=1e-12)
    assert quantile(pp, 0) == F(1, 2)
    assert quantile(pp, 1) == F(5, 9)


def test_quantile_matches_grid_inversion():
    pp = piecewise_expand(MCNUGGET)
    xs = np.linspace(1 / 20, 1 / 6, 200)
    ys = np.array([float(pp(F(x))) for x in xs])
    cdf = np.concatenate([[0], np.cumsum((ys[1:] + ys[:-1]) / 2 * np.diff(xs))])
    grid = float(np.interp(0.5, cdf, xs))
    assert quantile(pp, F(1, 2)) == pytest.approx(grid, abs=2e-4)


def test_mode_examples():
    assert mode(piecewise_expand(JUMP)) == F(1, 2)
    assert mode(piecewise_expand(MCNUGGET)) == F(1, 9)
    assert mode(piecewise_expand([0, 1, 2])) == 1


def test_lipschitz_examples():
    jump = piecewise_expand(JUMP)
    assert lipschitz_bound(jump, F(1, 2), F(5, 9)) == 648
    assert lipschitz_bound(jump, F(51, 100), F(52, 100)) == 648
    # the jump at both support ends makes any wider interval non-Lipschitz
    assert lipschitz_bound(jump, 0, 1) == math.inf
    assert lipschitz_bound(jump, 2, 3) == 0
    mc = piecewise_expand(MCNUGGET)
    assert lipschitz_bound(mc, F(1, 20), F(1, 6)) == max(F(21600, 77), F(2160, 7))
    assert lipschitz_bound(mc) == F(2160, 7)


def test_max_abs():
    assert max_abs(piecewise_expand(JUMP)) == 36
    assert max_abs(piecewise_expand(MCNUGGET)) == F(120, 7)
    assert max_abs(piecewise_expand(MCNUGGET), F(1, 20), F(2, 40)) == 0


# --- properties -------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(knot_lists())
def test_normalization_exact(knots):
    assert integrate(piecewise_expand(knots)) == 1


@settings(max_examples=50, deadline=None)
@given(knot_lists(min_size=2, max_size=5, distinct=True), st.randoms(use_true_random=False))
def test_recursive_equals_explicit(knots, rng):
    a = sorted(knots)
    span = a[-1] - a[0]
    for _ in range(1000):
        x = a[0] - span / 4 + span * F(rng.randint(0, 1500), 1000)
        if x in a:
            continue
        assert eval_recursive(x, knots) == eval_explicit(x, knots)


@settings(max_examples=50, deadline=None)
@given(knot_lists(), st.lists(rationals, min_size=10, max_size=10))
def test_pieces_match_recursion(knots, xs):
    pp = piecewise_expand(knots)
    for x in xs:
        assert pp(x) == eval_recursive(x, knots)


@settings(max_examples=50, deadline=None)
@given(knot_lists(), st.randoms(use_true_random=False))
def test_positive_inside_zero_outside(knots, rng):
    pp = piecewise_expand(knots)
    lo, hi = pp.support
    for _ in range(100):
        x = lo + (hi - lo) * F(rng.randint(1, 999), 1000)
        assert pp(x) > 0
    assert pp(lo - 1) == 0 and pp(hi) == 0 and pp(hi + F(1, 3)) == 0


@settings(max_examples=30, deadline=None)
@given(knot_lists(max_size=5), st.randoms(use_true_random=False))
def test_knot_order_invariance(knots, rng):
    shuffled = list(knots)
    rng.shuffle(shuffled)
    assert piecewise_expand(shuffled) == piecewise_expand(knots)


def test_float_normalization():
    rng = random.Random(3)
    for _ in range(30):
        knots = [rng.uniform(-2, 2) for _ in range(rng.randint(2, 7))]
        assert integrate(piecewise_expand(knots)) == pytest.approx(1, abs=1e-12)


def _derivative_jump(pp, c, order):
    d = pp
    for _ in range(order):
        d = d.derivative()
    return float(d(c)), float(d.left_limit(c))


@pytest.mark.parametrize(
    "knots",
    [
        (F(0), F(1), F(2), F(3), F(4), F(5)),
        (F(0), F(1), F(1), F(2), F(4), F(5)),
        (F(-1), F(0), F(0), F(0), F(2), F(3)),
        FIVE,
    ],
)
def test_smoothness_at_knots(knots):
    pp = piecewise_expand(knots)
    n = len(knots)
    h = F(1, 10**9)
    for c in pp.breakpoints[1:-1]:
        mu = sum(1 for a in knots if a == c)
        smooth = n - 2 - mu
        for order in range(smooth + 1):
            right, left = _derivative_jump(pp, c, order)
            assert right == pytest.approx(left, abs=1e-9)
        # central finite difference of the value agrees with both sides
        if smooth >= 1:
            cf = (pp(c + h) - pp(c - h)) / (2 * h)
            assert float(cf) == pytest.approx(float(pp.derivative()(c)), rel=1e-6, abs=1e-6)
        if smooth + 1 <= n - 2:
            right, left = _derivative_jump(pp, c, smooth + 1)
            assert right != pytest.approx(left, abs=1e-9)


def test_float_knots_stay_float():
    pp = piecewise_expand([math.sqrt(2) / 2, math.e / 3, 0.5 + 0.5 / 5 ** 0.5, math.pi / 8])
    assert pp.kind == "float"
    assert isinstance(pp(0.6), float)


def test_all_pieces_degree_bound():
    for knots in itertools.combinations([F(0), F(1, 3), F(1), F(2), F(7, 2)], 4):
        pp = piecewise_expand(knots)
        assert all(len(p) <= len(knots) - 1 for p in pp.pieces)
