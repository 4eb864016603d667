"""Arithmetical expressions: parsing, point evaluation, interval extension.

Grammar (EBNF, whitespace free between tokens):

    expr     = term , { ("+" | "-") , term } ;
    term     = factor , { ("*" | "/") , factor } ;
    factor   = "-" , factor | power ;
    power    = atom , { "^" , exponent } ;
    atom     = NUMBER | NAME , "(" , expr , ")" | NAME | "(" , expr , ")" ;
    exponent = INTEGER | "(" , INTEGER , ")" ;
    NUMBER   = decimal literal, optional fraction and exponent part ;
    NAME     = letter or "_", then letters, digits, "_" ;

Precedence: ^ binds tighter than unary minus, which binds tighter than * /,
which bind tighter than + -. Binary operators are left-associative. NAME is a
declared variable, one of the functions abs, sqrt, sqr, exp, ln, sin, cos,
arctan, or the constants pi and e.

Interval evaluation is the natural interval extension: every operation is
replaced by its interval version, so the result rigorously encloses the range
of the expression over the box. Decimal literals become two-sided enclosures
of their exact decimal value (degenerate when the value is representable).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from rigorpersist import intervals as iv
from rigorpersist.errors import (
    DomainViolation,
    ExpressionSyntaxError,
    NonIntegerExponent,
    UnknownIdentifier,
)
from rigorpersist.intervals import Interval, IntervalBox

FUNCTIONS = ("abs", "sqrt", "sqr", "exp", "ln", "sin", "cos", "arctan")
CONSTANTS = ("pi", "e")

_POINT_FUNCS = {
    "abs": abs,
    "sqrt": math.sqrt,
    "sqr": lambda x: x * x,
    "exp": math.exp,
    "ln": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "arctan": math.atan,
}

# print levels: higher binds tighter
_LVL_ADD, _LVL_MUL, _LVL_NEG, _LVL_POW, _LVL_ATOM = 1, 2, 3, 4, 5


class Expr:
    """Base class of AST nodes. Nodes are immutable and compare structurally."""

    __slots__ = ()

    def interval(self, box: IntervalBox) -> Interval:
        raise NotImplementedError

    def point(self, x) -> float:
        raise NotImplementedError

    def _level(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True, slots=True)
class Constant(Expr):
    enclosure: Interval
    text: str

    @classmethod
    def from_float(cls, v: float) -> "Constant":
        return cls(Interval(v, v), repr(float(v)))

    def interval(self, box: IntervalBox) -> Interval:
        return self.enclosure

    def point(self, x) -> float:
        return iv.midpt(self.enclosure)

    def _level(self) -> int:
        return _LVL_ATOM


@dataclass(frozen=True, slots=True)
class NamedConstant(Expr):
    name: str  # "pi" or "e"

    def interval(self, box: IntervalBox) -> Interval:
        return iv.PI if self.name == "pi" else iv.E

    def point(self, x) -> float:
        return math.pi if self.name == "pi" else math.e

    def _level(self) -> int:
        return _LVL_ATOM


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int
    name: str

    def interval(self, box: IntervalBox) -> Interval:
        return box.components[self.index]

    def point(self, x) -> float:
        return x[self.index]

    def _level(self) -> int:
        return _LVL_ATOM


@dataclass(frozen=True, slots=True)
class Unary(Expr):
    op: str  # "neg" or a Phi function name
    child: Expr

    def interval(self, box: IntervalBox) -> Interval:
        c = self.child.interval(box)
        if self.op == "neg":
            return iv.neg(c)
        return iv.ELEM[self.op](c)

    def point(self, x) -> float:
        c = self.child.point(x)
        if self.op == "neg":
            return -c
        if self.op == "sqrt" and c < 0.0:
            raise DomainViolation(f"sqrt of negative point value {c}")
        if self.op == "ln" and c <= 0.0:
            raise DomainViolation(f"ln of nonpositive point value {c}")
        return _POINT_FUNCS[self.op](c)

    def _level(self) -> int:
        return _LVL_NEG if self.op == "neg" else _LVL_ATOM


@dataclass(frozen=True, slots=True)
class Binary(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr

    def interval(self, box: IntervalBox) -> Interval:
        a = self.left.interval(box)
        b = self.right.interval(box)
        if self.op == "+":
            return iv.add(a, b)
        if self.op == "-":
            return iv.sub(a, b)
        if self.op == "*":
            return iv.mul(a, b)
        return iv.div(a, b)

    def point(self, x) -> float:
        a = self.left.point(x)
        b = self.right.point(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0.0:
            raise DomainViolation("division by zero at point")
        return a / b

    def _level(self) -> int:
        return _LVL_ADD if self.op in "+-" else _LVL_MUL


@dataclass(frozen=True, slots=True)
class IntPow(Expr):
    child: Expr
    k: int

    def __post_init__(self):
        if self.k != int(self.k) or self.k < 0:
            raise ValueError(f"IntPow exponent must be a nonnegative integer: {self.k}")

    def interval(self, box: IntervalBox) -> Interval:
        return iv.intpow(self.child.interval(box), self.k)

    def point(self, x) -> float:
        return self.child.point(x) ** self.k

    def _level(self) -> int:
        return _LVL_POW


@dataclass(frozen=True, slots=True)
class VectorFunction:
    """A function R^n -> R^m given componentwise by expressions."""

    arity: int
    components: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if len(self.components) < 1:
            raise ValueError("need at least one component expression")
        for c in self.components:
            _check_arity(c, self.arity)

    @classmethod
    def from_strings(cls, texts, variables) -> "VectorFunction":
        comps = tuple(parse(t, variables) for t in texts)
        return cls(len(variables), comps)

    @property
    def m(self) -> int:
        return len(self.components)

    def eval_point(self, x) -> tuple:
        return tuple(c.point(x) for c in self.components)

    def eval_interval(self, box: IntervalBox) -> tuple:
        return tuple(c.interval(box) for c in self.components)


def _check_arity(e: Expr, n: int):
    if isinstance(e, Var):
        if e.index >= n:
            raise ValueError(f"variable index {e.index} exceeds arity {n}")
    elif isinstance(e, Unary):
        _check_arity(e.child, n)
    elif isinstance(e, Binary):
        _check_arity(e.left, n)
        _check_arity(e.right, n)
    elif isinstance(e, IntPow):
        _check_arity(e.child, n)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<NUMBER>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<OP>[-+*/^()])
  | (?P<WS>\s+)
""",
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "WS":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


def _literal_interval(text: str) -> Interval:
    v = float(text)
    exact = Fraction(Decimal(text))
    rounded = Fraction(v)
    if rounded == exact:
        return Interval(v, v)
    if rounded < exact:
        return Interval(v, math.nextafter(v, math.inf))
    return Interval(math.nextafter(v, -math.inf), v)


class _Parser:
    def __init__(self, text: str, variables):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.var_index = {}
        for idx, name in enumerate(variables):
            if name in FUNCTIONS or name in CONSTANTS:
                raise ValueError(f"variable name {name!r} shadows a builtin name")
            if name in self.var_index:
                raise ValueError(f"duplicate variable name {name!r}")
            self.var_index[name] = idx

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "OP" or val != op:
            raise ExpressionSyntaxError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "END":
            raise ExpressionSyntaxError(f"unexpected trailing input {val!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "OP" and val in "+-":
                self.advance()
                e = Binary(val, e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "OP" and val in "*/":
                self.advance()
                e = Binary(val, e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "OP" and val == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "OP" and val == "^":
                self.advance()
                e = IntPow(e, self.exponent())
            else:
                return e

    def exponent(self) -> int:
        kind, val, pos = self.peek()
        if kind == "OP" and val == "(":
            self.advance()
            k = self.exponent()
            self.expect_op(")")
            return k
        if kind == "NUMBER":
            if not val.isdigit():
                raise NonIntegerExponent(
                    f"exponent must be a nonnegative integer literal, got {val!r}", pos
                )
            self.advance()
            return int(val)
        raise NonIntegerExponent(
            f"exponent must be a nonnegative integer literal, got {val!r}", pos
        )

    def atom(self) -> Expr:
        kind, val, pos = self.advance()
        if kind == "NUMBER":
            return Constant(_literal_interval(val), val)
        if kind == "NAME":
            if val in FUNCTIONS:
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                return Unary(val, inner)
            if val in self.var_index:
                return Var(self.var_index[val], val)
            if val == "pi" or val == "e":
                return NamedConstant(val)
            raise UnknownIdentifier(f"unknown identifier {val!r}", pos)
        if kind == "OP" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "END":
            raise ExpressionSyntaxError("unexpected end of input", pos)
        raise ExpressionSyntaxError(f"unexpected token {val!r}", pos)


def parse(text: str, variables) -> Expr:
    """Parse expression text over the named variables into an AST."""
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text, variables).parse()


def eval_point(e: Expr, x) -> float:
    """Ordinary floating-point evaluation at a point; no rigor claims."""
    return e.point(tuple(x))


def eval_interval(e: Expr, box: IntervalBox) -> Interval:
    """Natural interval extension: a rigorous enclosure of e over the box."""
    return e.interval(box)


# ---------------------------------------------------------------------------
# formatting


def format_expr(e: Expr) -> str:
    """Canonical text form; parse(format_expr(e)) is structurally equal to e."""
    if isinstance(e, Constant):
        return e.text
    if isinstance(e, NamedConstant):
        return e.name
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = format_expr(e.child)
            if e.child._level() < _LVL_NEG:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{e.op}({format_expr(e.child)})"
    if isinstance(e, Binary):
        left = format_expr(e.left)
        right = format_expr(e.right)
        lvl = e._level()
        if e.left._level() < lvl:
            left = f"({left})"
        if e.right._level() <= lvl:
            right = f"({right})"
        if e.op in "+-":
            return f"{left} {e.op} {right}"
        return f"{left}{e.op}{right}"
    if isinstance(e, IntPow):
        inner = format_expr(e.child)
        if e.child._level() < _LVL_POW:
            inner = f"({inner})"
        return f"{inner}^{e.k}"
    raise TypeError(f"not an Expr node: {e!r}")
