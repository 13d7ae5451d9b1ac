"""Quotients of Laurent polynomials.

No multivariate GCD is attempted.  The only normalizations are: a monomial
(unit) denominator is folded into the numerator, and otherwise the
denominator is scaled so its leading stored coefficient is 1.  Equal
denominators are detected syntactically to keep sums small.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Tuple

from .poly import LaurentPolynomial, as_poly, _inv_scalar
from .scalar import AlgebraError, GaussianRational, is_exact

_ONE = LaurentPolynomial.const(1)


class RationalExpression:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = as_poly(num)
        den = _ONE if den is None else as_poly(den)
        if den.is_zero():
            raise AlgebraError("zero denominator")
        inv = den.monomial_inverse()
        if inv is None and den.is_constant():
            inv = LaurentPolynomial.const(_inv_scalar(den.terms[0]))
        if inv is not None:
            num = num * inv
            den = _ONE
        else:
            _, lc = den.leading_term()
            if lc != 1:
                s = _inv_scalar(lc)
                num = num * s
                den = den * s
        self.num = num
        self.den = den

    # helpers
    @staticmethod
    def lift(x) -> "RationalExpression | None":
        if isinstance(x, RationalExpression):
            return x
        if isinstance(x, LaurentPolynomial):
            return RationalExpression(x)
        if (is_exact(x) or isinstance(x, (complex, float))) and not isinstance(x, bool):
            return RationalExpression(LaurentPolynomial.const(x) if x != 0 else LaurentPolynomial())
        return None

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def as_polynomial(self) -> LaurentPolynomial:
        if not self.is_polynomial():
            raise AlgebraError("expression has a non-unit denominator")
        return self.num

    def simplify(self):
        """Return a LaurentPolynomial when the denominator is trivial."""
        return self.num if self.is_polynomial() else self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # arithmetic
    def __add__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalExpression(self.num + o.num, self.den)
        if o.den == _ONE:
            return RationalExpression(self.num + o.num * self.den, self.den)
        if self.den == _ONE:
            return RationalExpression(self.num * o.den + o.num, o.den)
        return RationalExpression(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpression(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d1 == n2 and d1 != _ONE:
            return RationalExpression(n1, d2)
        if d2 == n1 and d2 != _ONE:
            return RationalExpression(n2, d1)
        return RationalExpression(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RationalExpression":
        if self.num.is_zero():
            raise AlgebraError("division by zero expression")
        return RationalExpression(self.den, self.num)

    def __truediv__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self.lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RationalExpression(self.num ** n, self.den ** n)

    def __eq__(self, other):
        """Syntactic equality after cross multiplication (exact, no reduction)."""
        o = self.lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RationalExpression is not hashable")

    # calculus / evaluation
    def derivative(self, var: str) -> "RationalExpression":
        dn = self.num.derivative(var)
        if self.den == _ONE:
            return RationalExpression(dn)
        dd = self.den.derivative(var)
        return RationalExpression(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, values: Mapping[str, object]):
        d = self.den.evaluate(values)
        if d == 0:
            raise AlgebraError("denominator vanishes at evaluation point")
        n = self.num.evaluate(values)
        if is_exact(n) and is_exact(d):
            if isinstance(n, int) and isinstance(d, int):
                q = Fraction(n, d)
                return int(q) if q.denominator == 1 else q
            return n / GaussianRational.coerce(d) if isinstance(d, GaussianRational) else n / Fraction(d)
        return n / d

    def subs(self, mapping: Mapping[str, object]) -> "RationalExpression":
        n = self.num.subs(mapping)
        if self.den == _ONE:
            return RationalExpression.lift(n)
        d = self.den.subs(mapping)
        return RationalExpression.lift(n) / RationalExpression.lift(d)

    def symbols(self) -> set:
        return self.num.symbols() | self.den.symbols()

    def __repr__(self):
        return f"RationalExpression({self})"

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def as_fraction_pair(x) -> Tuple[LaurentPolynomial, LaurentPolynomial]:
    """Return (numerator, denominator) polynomials for any supported value."""
    if isinstance(x, RationalExpression):
        return x.num, x.den
    return as_poly(x), _ONE


def as_rational(x) -> RationalExpression:
    r = RationalExpression.lift(x)
    if r is None:
        raise TypeError(f"cannot convert {x!r} to RationalExpression")
    return r
