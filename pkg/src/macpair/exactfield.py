"""Coefficient fields: Q(q, t) symbolically, or Q at a fixed rational (q0, t0).

Both fields hand out plain Python values with operator arithmetic:
:class:`RatFunc` in symbolic mode and :class:`fractions.Fraction` in
numeric mode.  Code above this layer only talks to a field object for
constants, the parameters ``q``/``t``, rendering and JSON.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from . import qtpoly
from .qtpoly import ONE, QTPoly, divexact, gcd


class DegenerateSpecialization(ArithmeticError):
    """A denominator or pivot vanished at the chosen numeric (q0, t0)."""


class RatFunc:
    """An element of Q(q, t) kept as a reduced fraction of integer polynomials.

    Canonical form: ``gcd(num, den) = 1`` (including integer content) and the
    coefficient of the lexicographically greatest term of ``den`` is positive.
    Two values are equal exactly when their canonical forms coincide.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: QTPoly, den: QTPoly = ONE, _canonical: bool = False):
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, c: int) -> "RatFunc":
        return cls(QTPoly.const(c), ONE, True)

    @classmethod
    def from_fraction(cls, c: Fraction) -> "RatFunc":
        return cls(QTPoly.const(c.numerator), QTPoly.const(c.denominator), True)

    @classmethod
    def from_poly(cls, p: QTPoly) -> "RatFunc":
        return cls(p, ONE, True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, True)

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, other.inverse())

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _mul(other, self.inverse())

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        # powers of a reduced fraction stay reduced
        num, den = self.num ** e, self.den ** e
        return RatFunc(num, den, True)

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(q,t)")
        num, den = self.den, self.num
        if den.leading()[1] < 0:
            num, den = -num, -den
        return RatFunc(num, den, True)

    def specialize(self, q0, t0) -> Fraction:
        return specialize(self, q0, t0)

    def __repr__(self) -> str:
        return f"RatFunc({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def _reduce(num: QTPoly, den: QTPoly):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return num, ONE
    g = gcd(num, den)
    if g != ONE:
        num = divexact(num, g)
        den = divexact(den, g)
    if den.leading()[1] < 0:
        num, den = -num, -den
    return num, den


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc.from_int(x)
    if isinstance(x, Fraction):
        return RatFunc.from_fraction(x)
    if isinstance(x, QTPoly):
        return RatFunc.from_poly(x)
    return None


def _add(x: RatFunc, y: RatFunc) -> RatFunc:
    if not x.num:
        return y
    if not y.num:
        return x
    if x.den == y.den:
        return RatFunc(x.num + y.num, x.den)
    if x.den == ONE:
        return RatFunc(x.num * y.den + y.num, y.den, True)
    if y.den == ONE:
        return RatFunc(x.num + y.num * x.den, x.den, True)
    d1 = gcd(x.den, y.den)
    if d1 == ONE:
        num = x.num * y.den + y.num * x.den
        return RatFunc(num, x.den * y.den, True) if num else RatFunc(num, ONE, True)
    bx = divexact(x.den, d1)
    by = divexact(y.den, d1)
    num = x.num * by + y.num * bx
    if not num:
        return RatFunc(num, ONE, True)
    d2 = gcd(num, d1)
    if d2 != ONE:
        num = divexact(num, d2)
        d1 = divexact(d1, d2)
    den = bx * by * d1
    if den.leading()[1] < 0:
        num, den = -num, -den
    return RatFunc(num, den, True)


def _mul(x: RatFunc, y: RatFunc) -> RatFunc:
    if not x.num or not y.num:
        return RatFunc(QTPoly(), ONE, True)
    a, b, c, d = x.num, x.den, y.num, y.den
    if b == ONE and d == ONE:
        return RatFunc(a * c, ONE, True)
    g1 = gcd(a, d)
    g2 = gcd(c, b)
    if g1 != ONE:
        a = divexact(a, g1)
        d = divexact(d, g1)
    if g2 != ONE:
        c = divexact(c, g2)
        b = divexact(b, g2)
    num, den = a * c, b * d
    if den.leading()[1] < 0:
        num, den = -num, -den
    return RatFunc(num, den, True)


def normalize(num: QTPoly, den: QTPoly) -> RatFunc:
    """Canonical fraction ``num/den``; raises ZeroDivisionError if ``den = 0``."""
    return RatFunc(num, den)


def specialize(s: RatFunc, q0, t0) -> Fraction:
    """Evaluate a symbolic scalar at rational ``(q0, t0)``."""
    den = s.den.evaluate(q0, t0)
    if den == 0:
        raise DegenerateSpecialization(f"denominator {s.den} vanishes at q={q0}, t={t0}")
    return Fraction(s.num.evaluate(q0, t0)) / den


def render(s) -> str:
    """Canonical text of a scalar (either mode)."""
    if isinstance(s, RatFunc):
        if s.den == ONE:
            return qtpoly.render_poly(s.num)
        num = qtpoly.render_poly(s.num)
        den = qtpoly.render_poly(s.den)
        if len(s.num) > 1:
            num = f"({num})"
        if len(s.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"
    s = Fraction(s)
    return str(s)


_TERM = re.compile(r"^(\d+)?(?:\*?q(?:\^(\d+))?)?(?:\*?t(?:\^(\d+))?)?$")


def parse_poly(text: str) -> QTPoly:
    """Inverse of :func:`qtpoly.render_poly`; also accepts loose spacing."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return QTPoly()
    terms = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or not body:
            raise ValueError(f"bad term {body!r} in {text!r}")
        coeff_s, qa, tb = m.groups()
        has_q = "q" in body
        has_t = "t" in body
        c = int(coeff_s) if coeff_s else 1
        a = (int(qa) if qa else 1) if has_q else 0
        b = (int(tb) if tb else 1) if has_t else 0
        if sign == "-":
            c = -c
        terms[(a, b)] = terms.get((a, b), 0) + c
    return QTPoly(terms)


def _strip_parens(s: str) -> str:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def parse_scalar(text: str) -> RatFunc:
    """Parse the canonical rendering (or ``num``/``den`` pair) back to a RatFunc."""
    text = text.strip()
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
    if split is None:
        return RatFunc(parse_poly(_strip_parens(text)))
    return RatFunc(parse_poly(_strip_parens(text[:split])), parse_poly(_strip_parens(text[split + 1:])))


Scalar = Union[RatFunc, Fraction]


class SymbolicField:
    """Q(q, t) with exact canonical fractions."""

    mode = "symbolic"

    def __init__(self):
        self.zero = RatFunc(QTPoly(), ONE, True)
        self.one = RatFunc.from_int(1)
        self.q = RatFunc.from_poly(qtpoly.Q)
        self.t = RatFunc.from_poly(qtpoly.T)

    def __call__(self, x) -> RatFunc:
        y = _coerce(x)
        if y is None:
            raise TypeError(f"cannot coerce {x!r} into Q(q,t)")
        return y

    def from_poly(self, p: QTPoly) -> RatFunc:
        return RatFunc(p, ONE, True)

    def monomial(self, a: int, b: int) -> RatFunc:
        return RatFunc(QTPoly.monomial(a, b), ONE, True)

    def render(self, x) -> str:
        return render(x)

    def to_json(self, x) -> dict:
        return {"num": qtpoly.render_poly(x.num), "den": qtpoly.render_poly(x.den)}

    def from_json(self, d: dict) -> RatFunc:
        return RatFunc(parse_poly(d["num"]), parse_poly(d["den"]))

    def parse(self, text: str) -> RatFunc:
        return parse_scalar(text)

    def describe(self) -> dict:
        return {"mode": "symbolic"}

    def key(self) -> str:
        return "symbolic"

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("symbolic")


class NumericField:
    """Q at fixed rational parameters; values are ``Fraction``."""

    mode = "numeric"

    def __init__(self, q0, t0):
        self.q0 = Fraction(q0)
        self.t0 = Fraction(t0)
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.q = self.q0
        self.t = self.t0
        self._qpow = {}
        self._tpow = {}

    def __call__(self, x) -> Fraction:
        if isinstance(x, RatFunc):
            return specialize(x, self.q0, self.t0)
        if isinstance(x, QTPoly):
            return self.from_poly(x)
        return Fraction(x)

    def _qp(self, a):
        v = self._qpow.get(a)
        if v is None:
            v = self._qpow[a] = self.q0 ** a
        return v

    def _tp(self, b):
        v = self._tpow.get(b)
        if v is None:
            v = self._tpow[b] = self.t0 ** b
        return v

    def from_poly(self, p: QTPoly) -> Fraction:
        total = Fraction(0)
        for (a, b), c in p.terms.items():
            total += c * self._qp(a) * self._tp(b)
        return total

    def monomial(self, a: int, b: int) -> Fraction:
        return self._qp(a) * self._tp(b)

    def render(self, x) -> str:
        return render(x)

    def to_json(self, x) -> dict:
        x = Fraction(x)
        return {"num": str(x.numerator), "den": str(x.denominator)}

    def from_json(self, d: dict) -> Fraction:
        return Fraction(int(d["num"]), int(d["den"]))

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def describe(self) -> dict:
        return {"mode": "numeric", "q": str(self.q0), "t": str(self.t0)}

    def key(self) -> str:
        return f"numeric-q{self.q0}-t{self.t0}".replace("/", "_")

    def __eq__(self, other):
        return isinstance(other, NumericField) and (self.q0, self.t0) == (other.q0, other.t0)

    def __hash__(self):
        return hash((self.q0, self.t0))


Field = Union[SymbolicField, NumericField]


def make_field(mode: str = "symbolic", q0=None, t0=None) -> Field:
    if mode == "symbolic":
        return SymbolicField()
    if mode == "numeric":
        if q0 is None or t0 is None:
            raise ValueError("numeric mode needs q0 and t0")
        return NumericField(q0, t0)
    raise ValueError(f"unknown mode {mode!r}")
