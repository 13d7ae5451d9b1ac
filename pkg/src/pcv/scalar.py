"""Exact Gaussian-rational scalars.

Values of Q(i) are kept as pairs of ``Fraction``.  Arithmetic results are
normalized: a purely real value collapses to ``Fraction`` (or ``int`` when
integral), so the common real case stays on the fast built-in path.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union


class AlgebraError(ValueError):
    """Raised for undefined algebraic operations (division by zero, ...)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # construction helpers
    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return GaussianRational(x, 0)
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact scalars")
        raise TypeError(f"cannot coerce {x!r} to GaussianRational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # arithmetic
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return normalize(GaussianRational(self.re + other.re, self.im + other.im))
        if isinstance(other, (int, Fraction)):
            return normalize(GaussianRational(self.re + other, self.im))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return normalize(GaussianRational(self.re * other.re - self.im * other.im,
                                              self.re * other.im + self.im * other.re))
        if isinstance(other, (int, Fraction)):
            return normalize(GaussianRational(self.re * other, self.im * other))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise AlgebraError("division by zero")
        return normalize(GaussianRational(self.re / n, -self.im / n))

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise AlgebraError("division by zero")
            return normalize(GaussianRational(self.re / other, self.im / other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: object = 1
        base: object = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons / conversions
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_exact(self)!r})"

    def __str__(self):
        return format_exact(self)


I = GaussianRational(0, 1)

Exact = Union[int, Fraction, GaussianRational]


def normalize(x):
    """Collapse an exact scalar to the simplest representation."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            x = x.re
        else:
            return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


def scalar_arith(a, b, op: str):
    """Exact add/sub/mul/div of two Gaussian rationals."""
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        r = a / b
    else:
        raise ValueError(f"unknown op {op!r}")
    return normalize(r)


def _fmt_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_exact(x) -> str:
    """Format as "a/b+c/d*i" (real or imaginary part omitted when zero)."""
    if isinstance(x, GaussianRational):
        re_, im_ = x.re, x.im
    else:
        re_, im_ = Fraction(x), Fraction(0)
    if im_ == 0:
        return _fmt_frac(re_)
    im_txt = _fmt_frac(abs(im_)) + "*i"
    if re_ == 0:
        return ("-" if im_ < 0 else "") + im_txt
    return _fmt_frac(re_) + ("-" if im_ < 0 else "+") + im_txt


_RAT = r"[+-]?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?\*?)?i)?"
    rf"|(?P<imonly>[+-]?(?:\d+(?:/\d+)?\*?)?)i)$"
)


def _parse_rat(txt: str) -> Fraction:
    txt = txt.rstrip("*")
    if txt in ("", "+"):
        return Fraction(1)
    if txt == "-":
        return Fraction(-1)
    return Fraction(txt)


def parse_exact(text: str):
    """Parse "a/b+c/d*i" style strings (also "3", "-1/2*i", "i", "1-i")."""
    s = text.strip().replace(" ", "")
    m = _EXACT_RE.match(s)
    if not m:
        raise AlgebraError(f"malformed exact scalar: {text!r}")
    try:
        if m.group("imonly") is not None:
            return normalize(GaussianRational(0, _parse_rat(m.group("imonly"))))
        re_ = Fraction(m.group("re"))
        im = Fraction(0)
        if m.group("sign"):
            im = _parse_rat(m.group("im") or "")
            if m.group("sign") == "-":
                im = -im
    except ZeroDivisionError as exc:
        raise AlgebraError(f"malformed exact scalar: {text!r}") from exc
    return normalize(GaussianRational(re_, im))


def parse_numeric(text: str) -> complex:
    """Parse a "re,im" pair (a bare real is accepted too)."""
    parts = text.strip().split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise AlgebraError(f"malformed numeric scalar: {text!r}") from exc
    raise AlgebraError(f"malformed numeric scalar: {text!r}")


def to_complex(x) -> complex:
    return complex(x)


def lift(x):
    """Promote a plain int to ``Fraction`` so that ``/`` stays exact."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x
