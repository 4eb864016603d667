"""Verified interval arithmetic on machine doubles with outward rounding.

Every operation returns an interval guaranteed to contain every exact real
result over its inputs. Outward rounding is implemented by nudging computed
endpoints to the adjacent representable number (``math.nextafter``) whenever
the float operation is not provably exact; this is portable and thread-safe,
at the cost of at most one ulp of tightness per endpoint.

Exactness detection:

* add/sub use the two-sum residue, which is exact in round-to-nearest; its
  sign tells on which side of the computed sum the true result lies, so the
  endpoint is nudged only when needed, and only in the needed direction.
* mul/div nudge unconditionally except for cheap provable cases (a zero or
  +-1 operand, or a power-of-two factor with a normal result).
* library elementaries (exp, ln, sin, cos, arctan) are nudged by two ulps to
  absorb libm's documented <= 1 ulp error; sqrt by one ulp since IEEE 754
  requires it correctly rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction

from rigorpersist.errors import DivisionByZeroInterval, DomainViolation

_INF = math.inf
_MIN_NORMAL = 2.2250738585072014e-308


class Interval:
    """Closed interval [lo, hi] with finite representable endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        lo = float(lo)
        hi = float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self) -> float:
        # plain rounded width; use rad() for a rigorous half-width bound
        return self.hi - self.lo

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    # operator sugar; the module-level functions are the primary API
    def __neg__(self):
        return neg(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return div(self, other)


def _mk(lo: float, hi: float) -> Interval:
    # internal fast constructor; endpoints must already be ordered floats
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"interval endpoint overflow: [{lo}, {hi}]")
    iv = object.__new__(Interval)
    object.__setattr__(iv, "lo", lo)
    object.__setattr__(iv, "hi", hi)
    return iv


class IntervalBox:
    """Ordered product of n >= 1 intervals; the evaluation domain of f-hat."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if len(comps) == 0:
            raise ValueError("IntervalBox needs at least one component")
        for c in comps:
            if not isinstance(c, Interval):
                raise TypeError(f"IntervalBox components must be Interval, got {c!r}")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalBox is immutable")

    @classmethod
    def from_pairs(cls, pairs) -> "IntervalBox":
        return cls(Interval(lo, hi) for lo, hi in pairs)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Interval:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalBox):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"IntervalBox({list(self.components)!r})"


# ---------------------------------------------------------------------------
# directed-rounding endpoint helpers


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _add_down(x: float, y: float) -> float:
    s = x + y
    b = s - x
    err = (x - (s - b)) + (y - b)  # exact residue of the rounded sum
    if err == 0.0:
        return s
    if err > 0.0:  # true sum above s, so s is already a valid lower bound
        return s
    return _down(s)  # err < 0 or residue overflowed to nan: nudge to be safe


def _add_up(x: float, y: float) -> float:
    s = x + y
    b = s - x
    err = (x - (s - b)) + (y - b)
    if err == 0.0:
        return s
    if err < 0.0:
        return s
    return _up(s)


def _sub_down(x: float, y: float) -> float:
    return _add_down(x, -y)


def _sub_up(x: float, y: float) -> float:
    return _add_up(x, -y)


def _is_pow2(a: float) -> bool:
    # a must be nonzero finite
    return math.frexp(a)[0] in (0.5, -0.5)


def _prod_exact(x: float, y: float, p: float) -> bool:
    if x == 0.0 or y == 0.0:
        return True
    if x == 1.0 or x == -1.0 or y == 1.0 or y == -1.0:
        return True
    if (_is_pow2(x) or _is_pow2(y)) and math.isfinite(p) and abs(p) >= _MIN_NORMAL:
        return True  # power-of-two scaling is exact away from subnormals
    return False


def _mul_down(x: float, y: float) -> float:
    p = x * y
    if _prod_exact(x, y, p):
        return p
    if p == 0.0:  # underflow: the sign of the true product is known
        return 0.0 if (x > 0.0) == (y > 0.0) else -5e-324
    return _down(p)


def _mul_up(x: float, y: float) -> float:
    p = x * y
    if _prod_exact(x, y, p):
        return p
    if p == 0.0:
        return 5e-324 if (x > 0.0) == (y > 0.0) else 0.0
    return _up(p)


def _quot_exact(x: float, y: float, q: float) -> bool:
    if x == 0.0:
        return True
    if y == 1.0 or y == -1.0:
        return True
    if _is_pow2(y) and math.isfinite(q) and abs(q) >= _MIN_NORMAL:
        return True
    return False


def _div_down(x: float, y: float) -> float:
    q = x / y
    if _quot_exact(x, y, q):
        return q
    if q == 0.0:
        return 0.0 if (x > 0.0) == (y > 0.0) else -5e-324
    return _down(q)


def _div_up(x: float, y: float) -> float:
    q = x / y
    if _quot_exact(x, y, q):
        return q
    if q == 0.0:
        return 5e-324 if (x > 0.0) == (y > 0.0) else 0.0
    return _up(q)


def _lib_down(r: float) -> float:
    # two ulps: one for libm's rounding, one to get strictly outside
    return _down(_down(r))


def _lib_up(r: float) -> float:
    return _up(_up(r))


# ---------------------------------------------------------------------------
# arithmetic


def neg(a: Interval) -> Interval:
    return _mk(-a.hi, -a.lo)


def add(a: Interval, b: Interval) -> Interval:
    return _mk(_add_down(a.lo, b.lo), _add_up(a.hi, b.hi))


def sub(a: Interval, b: Interval) -> Interval:
    return _mk(_sub_down(a.lo, b.hi), _sub_up(a.hi, b.lo))


def mul(a: Interval, b: Interval) -> Interval:
    al, ah, bl, bh = a.lo, a.hi, b.lo, b.hi
    lo = min(
        _mul_down(al, bl), _mul_down(al, bh), _mul_down(ah, bl), _mul_down(ah, bh)
    )
    hi = max(_mul_up(al, bl), _mul_up(al, bh), _mul_up(ah, bl), _mul_up(ah, bh))
    return _mk(lo, hi)


def div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise DivisionByZeroInterval(f"divisor {b!r} contains zero")
    al, ah, bl, bh = a.lo, a.hi, b.lo, b.hi
    lo = min(
        _div_down(al, bl), _div_down(al, bh), _div_down(ah, bl), _div_down(ah, bh)
    )
    hi = max(_div_up(al, bl), _div_up(al, bh), _div_up(ah, bl), _div_up(ah, bh))
    return _mk(lo, hi)


def intpow(a: Interval, k: int) -> Interval:
    """a**k for integer k >= 0, with even powers tightened through sqr."""
    if k != int(k) or k < 0:
        raise ValueError(f"intpow exponent must be a nonnegative integer, got {k}")
    k = int(k)
    if k == 0:
        return _mk(1.0, 1.0)
    if k == 1:
        return a
    if k % 2 == 0:
        return sqr(intpow(a, k // 2))
    return mul(a, intpow(a, k - 1))


# ---------------------------------------------------------------------------
# elementary functions (the Phi set)


def absval(a: Interval) -> Interval:
    if a.lo >= 0.0:
        return a
    if a.hi <= 0.0:
        return _mk(-a.hi, -a.lo)
    return _mk(0.0, max(-a.lo, a.hi))


def sqr(a: Interval) -> Interval:
    big = max(-a.lo, a.hi)
    hi = _mul_up(big, big)
    if a.lo <= 0.0 <= a.hi:
        return _mk(0.0, hi)
    small = min(abs(a.lo), abs(a.hi))
    return _mk(max(0.0, _mul_down(small, small)), hi)


def _sqrt_exact(x: float, r: float) -> bool:
    return Fraction(r) * Fraction(r) == Fraction(x)


def sqrt(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise DomainViolation(f"sqrt requires lo >= 0, got {a!r}")
    rl = math.sqrt(a.lo)
    rh = math.sqrt(a.hi)
    lo = rl if _sqrt_exact(a.lo, rl) else max(0.0, _down(rl))
    hi = rh if _sqrt_exact(a.hi, rh) else _up(rh)
    return _mk(lo, hi)


def exp(a: Interval) -> Interval:
    try:
        rl = math.exp(a.lo)
        rh = math.exp(a.hi)
    except OverflowError:
        raise ValueError(f"exp overflows the double range on {a!r}") from None
    return _mk(max(0.0, _lib_down(rl)), _lib_up(rh))


def ln(a: Interval) -> Interval:
    if a.lo <= 0.0:
        raise DomainViolation(f"ln requires lo > 0, got {a!r}")
    return _mk(_lib_down(math.log(a.lo)), _lib_up(math.log(a.hi)))


def arctan(a: Interval) -> Interval:
    return _mk(_lib_down(math.atan(a.lo)), _lib_up(math.atan(a.hi)))


# enclosures of pi and e: math.pi and math.e both round down (checked in tests)
PI = _mk(math.pi, _up(math.pi))
E = _mk(math.e, _up(math.e))

_HALF_PI_LO = math.pi / 2.0  # lower bound on pi/2 (exact halving of math.pi)
_TRIG_WIDTH_LIMIT = 7.0  # > 2*pi: wider intervals cover a full period
_TRIG_ARG_LIMIT = 1e12  # beyond this, libm accuracy and k*pi/2 enclosures degrade


def _half_pi_multiple(k: float) -> tuple[float, float]:
    # enclosure of k*pi/2 for integer-valued float k (|k| < 2**53)
    lo = min(_mul_down(k, PI.lo), _mul_down(k, PI.hi))
    hi = max(_mul_up(k, PI.lo), _mul_up(k, PI.hi))
    return lo * 0.5, hi * 0.5


def _trig(a: Interval, fn, max_residue: int, min_residue: int) -> Interval:
    if (
        a.hi - a.lo >= _TRIG_WIDTH_LIMIT
        or abs(a.lo) > _TRIG_ARG_LIMIT
        or abs(a.hi) > _TRIG_ARG_LIMIT
    ):
        return _mk(-1.0, 1.0)
    hi = None
    lo = None
    # critical points are k*pi/2; scan the few candidates near the interval
    k_first = math.floor(a.lo / _HALF_PI_LO) - 2
    k_last = math.ceil(a.hi / _HALF_PI_LO) + 2
    for k in range(int(k_first), int(k_last) + 1):
        r = k % 4
        if r != max_residue and r != min_residue:
            continue
        enc_lo, enc_hi = _half_pi_multiple(float(k))
        if enc_lo <= a.hi and a.lo <= enc_hi:  # enclosure meets the interval
            if r == max_residue:
                hi = 1.0
            else:
                lo = -1.0
    fl = fn(a.lo)
    fh = fn(a.hi)
    if hi is None:
        hi = min(1.0, _lib_up(max(fl, fh)))
    if lo is None:
        lo = max(-1.0, _lib_down(min(fl, fh)))
    return _mk(lo, hi)


def sin(a: Interval) -> Interval:
    # maxima at k*pi/2 with k = 1 mod 4, minima at k = 3 mod 4
    return _trig(a, math.sin, 1, 3)


def cos(a: Interval) -> Interval:
    # maxima at k*pi/2 with k = 0 mod 4, minima at k = 2 mod 4
    return _trig(a, math.cos, 0, 2)


ELEM = {
    "abs": absval,
    "sqrt": sqrt,
    "sqr": sqr,
    "exp": exp,
    "ln": ln,
    "sin": sin,
    "cos": cos,
    "arctan": arctan,
}


def elem(name: str, a: Interval) -> Interval:
    """Apply the named elementary from Phi = {abs,sqrt,sqr,exp,ln,sin,cos,arctan}."""
    try:
        fn = ELEM[name]
    except KeyError:
        raise ValueError(f"unknown elementary function {name!r}") from None
    return fn(a)


# ---------------------------------------------------------------------------
# midpoint and radius


def midpt(a: Interval) -> float:
    m = 0.5 * a.lo + 0.5 * a.hi  # avoids overflow of lo + hi
    if m < a.lo:
        return a.lo
    if m > a.hi:
        return a.hi
    return m


def rad(a: Interval) -> float:
    """Upper bound on max(hi - midpt, midpt - lo); certifies midpt +- rad."""
    m = midpt(a)
    return max(_sub_up(a.hi, m), _sub_up(m, a.lo))
