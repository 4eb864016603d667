"""Interval arithmetic: containment soundness against exact oracles.

Arithmetic is checked against fractions.Fraction (exact rationals), the
elementary functions against mpmath at 50 significant digits. Frozen expected
values are stated next to the oracle that produced them.
"""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigorpersist import intervals as iv
from rigorpersist.errors import DivisionByZeroInterval, DomainViolation
from rigorpersist.intervals import Interval, IntervalBox

mpmath.mp.dps = 50


def frac(x: float) -> Fraction:
    return Fraction(x)


def assert_contains(a: Interval, exact: Fraction):
    assert frac(a.lo) <= exact <= frac(a.hi), f"{exact} escapes {a!r}"


def assert_contains_mp(a: Interval, exact_mp):
    # endpoints convert to mpf exactly (binary doubles)
    assert mpmath.mpf(a.lo) <= exact_mp <= mpmath.mpf(a.hi), f"{exact_mp} escapes {a!r}"


# ---------------------------------------------------------------------------
# construction


def test_construction_valid():
    a = Interval(-1.5, 2.0)
    assert a.lo == -1.5 and a.hi == 2.0
    assert Interval.point(3.0) == Interval(3.0, 3.0)


def test_construction_rejects_bad_endpoints():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(math.nan, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    with pytest.raises(ValueError):
        Interval(-math.inf, 0.0)


def test_interval_is_immutable():
    a = Interval(0.0, 1.0)
    with pytest.raises(AttributeError):
        a.lo = 5.0


def test_box_basics():
    b = IntervalBox.from_pairs([(0, 1), (2, 3)])
    assert len(b) == 2
    assert b[1] == Interval(2.0, 3.0)
    with pytest.raises(ValueError):
        IntervalBox([])


# ---------------------------------------------------------------------------
# worked examples, expected values pinned by hand


def test_add_small_integers():
    a = iv.add(Interval(1, 2), Interval(3, 4))
    # exact small-integer arithmetic: two-sum detects exactness, no nudge
    assert a == Interval(4.0, 6.0)


def test_mul_mixed_signs():
    a = iv.mul(Interval(-1, 2), Interval(3, 4))
    # min/max over the endpoint products {-3,-4,6,8}
    assert_contains(a, Fraction(-4))
    assert_contains(a, Fraction(8))
    assert a.lo >= -4.0 - 1e-14 and a.hi <= 8.0 + 1e-14


def test_div_by_zero_interval():
    with pytest.raises(DivisionByZeroInterval):
        iv.div(Interval(1, 2), Interval(0, 1))
    with pytest.raises(DivisionByZeroInterval):
        iv.div(Interval(1, 2), Interval(-1, 1))


def test_sqr_straddles_zero():
    a = iv.sqr(Interval(-1, 2))
    # range of x^2 over [-1,2] is [0,4], minimum attained at 0
    assert a.lo == 0.0
    assert_contains(a, Fraction(4))
    assert a.hi <= 4.0 + 1e-14


def test_ln_domain_violation():
    with pytest.raises(DomainViolation):
        iv.ln(Interval(-1, 1))
    with pytest.raises(DomainViolation):
        iv.ln(Interval(0, 1))
    with pytest.raises(DomainViolation):
        iv.sqrt(Interval(-0.1, 1))


def test_sin_interior_maximum():
    a = iv.sin(Interval(0.0, iv.PI.hi))
    # interior maximum at pi/2 forces hi = 1; the upper endpoint sits one ulp
    # past pi, so the lower bound is a tiny negative number
    assert a.hi == 1.0
    assert -1e-14 <= a.lo <= 0.0


def test_cos_interior_extrema():
    a = iv.cos(Interval(0.0, 7.0))
    # width >= 7 covers a full period
    assert a == Interval(-1.0, 1.0)
    b = iv.cos(Interval(1.0, 4.0))  # contains pi: minimum -1, no maximum
    assert b.lo == -1.0
    assert b.hi < 1.0
    assert_contains_mp(b, mpmath.cos(1))


def test_midpt_examples():
    assert iv.midpt(Interval(0, 3)) == 1.5
    assert iv.midpt(Interval(7, 7)) == 7.0
    assert iv.midpt(Interval(0, 1)) == 0.5


def test_rad_examples():
    assert iv.rad(Interval(0, 3)) == 1.5
    assert iv.rad(Interval(7, 7)) == 0.0
    assert iv.rad(Interval(0, 1)) == 0.5


def test_intpow_even_tightening():
    a = iv.intpow(Interval(-1, 2), 2)
    assert a.lo == 0.0  # sqr tightening, not [-2,4]
    assert_contains(a, Fraction(4))
    b = iv.intpow(Interval(-1, 2), 0)
    assert b == Interval(1.0, 1.0)
    c = iv.intpow(Interval(2, 2), 10)
    assert_contains(c, Fraction(1024))
    with pytest.raises(ValueError):
        iv.intpow(Interval(0, 1), -1)


def test_pi_e_enclosures():
    assert_contains_mp(iv.PI, mpmath.pi)
    assert_contains_mp(iv.E, mpmath.e)
    assert iv.PI.hi - iv.PI.lo <= 2 * math.ulp(math.pi)
    assert iv.E.hi - iv.E.lo <= 2 * math.ulp(math.e)


def test_elem_dispatch():
    assert iv.elem("sqr", Interval(3, 3)).lo <= 9.0 <= iv.elem("sqr", Interval(3, 3)).hi
    with pytest.raises(ValueError):
        iv.elem("sinh", Interval(0, 1))


# ---------------------------------------------------------------------------
# containment soundness: random samples against exact rational arithmetic
# (the sample counts across these loops add up to ~10^5)


def _random_interval(rng: random.Random, span: float = 1e3) -> Interval:
    kind = rng.random()
    if kind < 0.1:
        x = rng.uniform(-span, span)
        return Interval(x, x)
    lo = rng.uniform(-span, span)
    hi = lo + abs(rng.gauss(0, span / 10)) * rng.random()
    return Interval(lo, hi)


def _sample(rng: random.Random, a: Interval) -> float:
    x = a.lo + (a.hi - a.lo) * rng.random()
    return min(max(x, a.lo), a.hi)


def test_containment_soundness_arithmetic():
    rng = random.Random(20260815)
    ops = [
        (iv.add, lambda x, y: x + y),
        (iv.sub, lambda x, y: x - y),
        (iv.mul, lambda x, y: x * y),
        (iv.div, lambda x, y: x / y),
    ]
    per_op = 20000
    for op, exact_op in ops:
        checked = 0
        while checked < per_op:
            a = _random_interval(rng)
            b = _random_interval(rng)
            if op is iv.div and b.lo <= 0.0 <= b.hi:
                continue
            r = op(a, b)
            x = _sample(rng, a)
            y = _sample(rng, b)
            assert_contains(r, exact_op(frac(x), frac(y)))
            checked += 1


def test_containment_soundness_extreme_scales():
    rng = random.Random(7)
    for _ in range(5000):
        # exponents capped so products stay inside the double range
        a = _random_interval(rng, span=10.0 ** rng.uniform(-140, 140))
        b = _random_interval(rng, span=10.0 ** rng.uniform(-140, 140))
        x, y = _sample(rng, a), _sample(rng, b)
        assert_contains(iv.add(a, b), frac(x) + frac(y))
        assert_contains(iv.sub(a, b), frac(x) - frac(y))
        assert_contains(iv.mul(a, b), frac(x) * frac(y))


_MP_FUNCS = {
    "abs": abs,
    "sqrt": mpmath.sqrt,
    "sqr": lambda t: t * t,
    "exp": mpmath.exp,
    "ln": mpmath.log,
    "sin": mpmath.sin,
    "cos": mpmath.cos,
    "arctan": mpmath.atan,
}


def _domain_interval(rng: random.Random, name: str) -> Interval:
    if name in ("sqrt",):
        lo = abs(rng.uniform(0, 100))
        return Interval(lo, lo + abs(rng.gauss(0, 10)))
    if name in ("ln",):
        lo = 10.0 ** rng.uniform(-8, 4)
        return Interval(lo, lo + abs(rng.gauss(0, 10)))
    if name in ("sin", "cos"):
        lo = rng.uniform(-1e6, 1e6)
        return Interval(lo, lo + abs(rng.gauss(0, 4)))
    if name in ("exp",):
        lo = rng.uniform(-300, 300)
        return Interval(lo, lo + abs(rng.gauss(0, 5)))
    return _random_interval(rng, span=100.0)


def test_containment_soundness_elementaries():
    rng = random.Random(99)
    for name, mp_fn in _MP_FUNCS.items():
        for _ in range(2500):
            a = _domain_interval(rng, name)
            r = iv.elem(name, a)
            x = _sample(rng, a)
            assert_contains_mp(r, mp_fn(mpmath.mpf(x)))
            # endpoints themselves must be enclosed too
            assert_contains_mp(r, mp_fn(mpmath.mpf(a.lo)))
            assert_contains_mp(r, mp_fn(mpmath.mpf(a.hi)))


def test_trig_tightness_on_narrow_intervals():
    # monotone pieces should come from endpoint evaluations, within a few ulps
    a = iv.sin(Interval(0.1, 0.2))
    assert a.hi - math.sin(0.2) <= 4 * math.ulp(1.0)
    assert math.sin(0.1) - a.lo <= 4 * math.ulp(1.0)


def test_trig_wide_fallback():
    assert iv.sin(Interval(-1e13, 1e13)) == Interval(-1.0, 1.0)
    assert iv.sin(Interval(0.0, 100.0)) == Interval(-1.0, 1.0)


# ---------------------------------------------------------------------------
# hypothesis properties

finite = st.floats(
    min_value=-1e12,
    max_value=1e12,
    allow_nan=False,
    allow_infinity=False,
    allow_subnormal=False,
)


@st.composite
def interval_st(draw):
    a = draw(finite)
    b = draw(finite)
    return Interval(min(a, b), max(a, b))


@st.composite
def nested_pair(draw):
    outer = draw(interval_st())
    t0 = draw(st.floats(min_value=0, max_value=1))
    t1 = draw(st.floats(min_value=0, max_value=1))
    lo = outer.lo + (outer.hi - outer.lo) * min(t0, t1) * 0.5
    hi = outer.hi - (outer.hi - outer.lo) * (1 - max(t0, t1)) * 0.5
    lo = min(max(lo, outer.lo), outer.hi)
    hi = min(max(hi, lo), outer.hi)
    return Interval(lo, hi), outer


@given(interval_st())
def test_midpt_inside(a):
    assert a.lo <= iv.midpt(a) <= a.hi


@given(interval_st())
def test_rad_covers_halfwidth(a):
    r = iv.rad(a)
    m = iv.midpt(a)
    half = (frac(a.hi) - frac(a.lo)) / 2
    assert frac(r) >= half - frac(math.ulp(max(abs(a.lo), abs(a.hi), 1.0)))
    # midpt +- rad encloses the interval (exact rational check)
    assert frac(m) - frac(r) <= frac(a.lo)
    assert frac(m) + frac(r) >= frac(a.hi)


@settings(max_examples=300)
@given(nested_pair(), nested_pair())
def test_inclusion_monotonicity_arithmetic(pa, pb):
    a, a_outer = pa
    b, b_outer = pb
    for op in (iv.add, iv.sub, iv.mul):
        inner = op(a, b)
        outer = op(a_outer, b_outer)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


@settings(max_examples=300)
@given(nested_pair())
def test_inclusion_monotonicity_unary(pa):
    a, a_outer = pa
    for name in ("abs", "sqr", "sin", "cos", "arctan"):
        inner = iv.elem(name, a)
        outer = iv.elem(name, a_outer)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


@given(interval_st(), interval_st())
def test_sub_self_contains_zero(a, b):
    r = iv.sub(a, a)
    assert r.lo <= 0.0 <= r.hi
