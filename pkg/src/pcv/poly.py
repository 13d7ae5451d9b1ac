"""Sparse multivariate Laurent polynomials over Q(i).

Symbols live in a process-wide registry.  A monomial is packed into one Python
int: symbol ``k`` owns a 16-bit balanced slot, so the monomial ``x^a y^b`` is
``a*B^ix + b*B^iy`` with ``B = 2**16`` and monomial multiplication is integer
addition.  Exponents must stay below 2**15 in absolute value.

Only symbols registered as Laurent (the parameters) may carry negative
exponents; surface coordinates stay polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from .scalar import AlgebraError, GaussianRational, format_exact, is_exact, normalize

_BITS = 16
_B = 1 << _BITS
_HALF = 1 << (_BITS - 1)
_MASK = _B - 1

_NAMES: List[str] = []
_INDEX: Dict[str, int] = {}
_LAURENT: set = set()


def _register(name: str, laurent: bool) -> int:
    idx = _INDEX.get(name)
    if idx is None:
        idx = len(_NAMES)
        _NAMES.append(name)
        _INDEX[name] = idx
    if laurent:
        _LAURENT.add(idx)
    return idx


def is_laurent_symbol(name: str) -> bool:
    return _INDEX.get(name, -1) in _LAURENT


def _unpack(key: int) -> List[Tuple[int, int]]:
    """Decode a packed monomial into (symbol index, exponent) pairs."""
    out = []
    i = 0
    while key:
        d = key & _MASK
        if d >= _HALF:
            d -= _B
        if d:
            out.append((i, d))
        key = (key - d) >> _BITS
        i += 1
    return out


def _pack(pairs: Iterable[Tuple[int, int]]) -> int:
    key = 0
    for i, e in pairs:
        if not -_HALF < e < _HALF:
            raise AlgebraError("exponent overflow")
        key += e << (_BITS * i)
    return key


def _slot(key: int, i: int) -> int:
    """Exponent of symbol ``i`` in a packed monomial."""
    shift = _BITS * i
    offset = _HALF * ((1 << shift) - 1) // _MASK if i else 0
    d = ((key + offset) >> shift) & _MASK
    return d - _B if d >= _HALF else d


def _coerce_coef(c):
    if isinstance(c, (GaussianRational, Fraction)):
        return normalize(c)
    return c


def _inv_scalar(c):
    if c == 0:
        raise AlgebraError("division by zero")
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, (Fraction, GaussianRational)):
        return normalize(1 / c)
    return 1 / c


class LaurentPolynomial:
    __slots__ = ("terms", "_decoded")

    def __init__(self, terms: Mapping[int, object] | None = None, _clean: bool = False):
        if terms is None:
            self.terms: Dict[int, object] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            self.terms = {k: _coerce_coef(c) for k, c in terms.items() if c != 0}
        self._decoded = None

    # constructors
    @staticmethod
    def const(c) -> "LaurentPolynomial":
        return LaurentPolynomial({0: c})

    @staticmethod
    def sym(name: str, laurent: bool = False) -> "LaurentPolynomial":
        idx = _register(name, laurent)
        return LaurentPolynomial({1 << (_BITS * idx): 1}, _clean=True)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise AlgebraError("polynomial is not constant")
        return self.terms.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def decoded(self) -> List[Tuple[object, List[Tuple[int, int]]]]:
        if self._decoded is None:
            self._decoded = [(c, _unpack(k)) for k, c in self.terms.items()]
        return self._decoded

    def symbols(self) -> set:
        out = set()
        for _, pairs in self.decoded():
            out.update(_NAMES[i] for i, _ in pairs)
        return out

    def __len__(self):
        return len(self.terms)

    def degree(self, var: str) -> int:
        """Largest exponent of ``var`` (-inf sentinel -1 for the zero polynomial)."""
        i = _INDEX.get(var)
        if not self.terms:
            return -1
        if i is None:
            return 0
        return max(_slot(k, i) for k in self.terms)

    def total_degree(self) -> int:
        return max((sum(e for _, e in pairs) for _, pairs in self.decoded()), default=-1)

    def coefficients_in(self, var: str) -> Dict[int, "LaurentPolynomial"]:
        """Map exponent -> coefficient polynomial (free of ``var``)."""
        i = _INDEX.get(var)
        out: Dict[int, Dict[int, object]] = {}
        for k, c in self.terms.items():
            e = _slot(k, i) if i is not None else 0
            rest = k - (e << (_BITS * i)) if i is not None else k
            out.setdefault(e, {})[rest] = c
        return {e: LaurentPolynomial(t, _clean=True) for e, t in out.items()}

    def monomial_inverse(self) -> "LaurentPolynomial | None":
        """Inverse of a single-term polynomial in the Laurent ring, if it exists."""
        if len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        pairs = _unpack(k)
        if any(i not in _LAURENT for i, _ in pairs):
            return None
        return LaurentPolynomial({-k: _inv_scalar(c)}, _clean=True)

    def leading_term(self) -> Tuple[int, object]:
        k = max(self.terms)
        return k, self.terms[k]

    # arithmetic
    @staticmethod
    def _lift(x) -> "LaurentPolynomial | None":
        if isinstance(x, LaurentPolynomial):
            return x
        if isinstance(x, (int, Fraction, GaussianRational, complex, float)) and not isinstance(x, bool):
            return LaurentPolynomial({0: x}) if x != 0 else LaurentPolynomial()
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o, self
        else:
            a, b = self, o
        t = dict(a.terms)
        for k, c in b.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v == 0:
                    del t[k]
                else:
                    t[k] = _coerce_coef(v)
        return LaurentPolynomial(t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self.terms.items()}, _clean=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return LaurentPolynomial()
        if len(o.terms) == 1 and 0 in o.terms:
            c = o.terms[0]
            return LaurentPolynomial({k: _coerce_coef(v * c) for k, v in self.terms.items()}, _clean=True)
        if len(self.terms) == 1 and 0 in self.terms:
            return o * self
        t: Dict[int, object] = {}
        get = t.get
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = k1 + k2
                v = get(k)
                t[k] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPolynomial({k: _coerce_coef(v) for k, v in t.items() if v != 0}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            inv = self.monomial_inverse()
            if inv is None:
                from .rational import RationalExpression
                return RationalExpression(LaurentPolynomial.const(1), self) ** (-n)
            return inv ** (-n)
        result = LaurentPolynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.is_zero():
                raise AlgebraError("division by zero polynomial")
            if other.is_constant():
                return self * _inv_scalar(other.terms[0])
            inv = other.monomial_inverse()
            if inv is not None:
                return self * inv
            from .rational import RationalExpression
            return RationalExpression(self, other)
        if is_exact(other) or isinstance(other, (complex, float)):
            return self * _inv_scalar(other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # calculus / evaluation
    def derivative(self, var: str) -> "LaurentPolynomial":
        i = _INDEX.get(var)
        if i is None:
            return LaurentPolynomial()
        step = 1 << (_BITS * i)
        t = {}
        for k, c in self.terms.items():
            e = _slot(k, i)
            if e:
                t[k - step] = _coerce_coef(c * e)
        return LaurentPolynomial(t, _clean=True)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at scalar values for every symbol present."""
        cache: Dict[Tuple[int, int], object] = {}
        vals = {}
        total = 0
        for c, pairs in self.decoded():
            term = c
            for i, e in pairs:
                p = cache.get((i, e))
                if p is None:
                    if i not in vals:
                        try:
                            vals[i] = values[_NAMES[i]]
                        except KeyError:
                            raise AlgebraError(f"no value for symbol {_NAMES[i]}") from None
                    v = vals[i]
                    if e < 0:
                        if v == 0:
                            raise AlgebraError(f"symbol {_NAMES[i]} evaluated at 0 with negative exponent")
                        p = _inv_scalar(v) ** (-e)
                    else:
                        p = v ** e
                    cache[(i, e)] = p
                term = term * p
            total = total + term
        return normalize(total) if is_exact(total) else total

    def subs(self, mapping: Mapping[str, object]):
        """Substitute polynomials, rational expressions or scalars for symbols."""
        from .rational import RationalExpression, as_fraction_pair

        idx_map = {}
        for name, v in mapping.items():
            i = _INDEX.get(name)
            if i is not None:
                idx_map[i] = v
        if not idx_map:
            return self
        pos_max: Dict[int, int] = {}
        neg_max: Dict[int, int] = {}
        for _, pairs in self.decoded():
            for i, e in pairs:
                if i in idx_map:
                    if e > 0:
                        pos_max[i] = max(pos_max.get(i, 0), e)
                    else:
                        neg_max[i] = max(neg_max.get(i, 0), -e)
        pos_val: Dict[int, Tuple[LaurentPolynomial, LaurentPolynomial]] = {}
        neg_val: Dict[int, Tuple[LaurentPolynomial, LaurentPolynomial]] = {}
        for i, v in idx_map.items():
            n, d = as_fraction_pair(v)
            if i in pos_max:
                pos_val[i] = (n, d)
            if i in neg_max:
                inv = n.monomial_inverse()
                if inv is not None:
                    neg_val[i] = (inv * d, LaurentPolynomial.const(1))
                else:
                    if n.is_zero():
                        raise AlgebraError(f"substituting 0 for {_NAMES[i]} with negative exponent")
                    neg_val[i] = (d, n)
        powers: Dict[Tuple[int, int, int], LaurentPolynomial] = {}

        def pw(i: int, which: int, part: int, e: int) -> LaurentPolynomial:
            if e == 0:
                return _ONE
            key = (i * 4 + which * 2 + part, e, 0)
            p = powers.get(key)
            if p is None:
                base = (pos_val if which == 0 else neg_val)[i][part]
                p = base ** e
                powers[key] = p
            return p

        den = _ONE
        for i, m in pos_max.items():
            d = pos_val[i][1]
            if not d.is_constant() or d.terms.get(0) != 1:
                den = den * pw(i, 0, 1, m)
        for i, m in neg_max.items():
            d = neg_val[i][1]
            if not d.is_constant() or d.terms.get(0) != 1:
                den = den * pw(i, 1, 1, m)
        total = LaurentPolynomial()
        acc: Dict[int, object] = {}
        for c, pairs in self.decoded():
            term = LaurentPolynomial.const(c)
            rest = 0
            seen = set()
            for i, e in pairs:
                if i in idx_map:
                    seen.add(i)
                    if e > 0:
                        term = term * pw(i, 0, 0, e)
                        if pos_val[i][1] != _ONE:
                            term = term * pw(i, 0, 1, pos_max[i] - e)
                        if i in neg_max and neg_val[i][1] != _ONE:
                            term = term * pw(i, 1, 1, neg_max[i])
                    else:
                        term = term * pw(i, 1, 0, -e)
                        if neg_val[i][1] != _ONE:
                            term = term * pw(i, 1, 1, neg_max[i] + e)
                        if i in pos_max and pos_val[i][1] != _ONE:
                            term = term * pw(i, 0, 1, pos_max[i])
                else:
                    rest += e << (_BITS * i)
            for i in idx_map:
                if i in seen:
                    continue
                if i in pos_max and pos_val[i][1] != _ONE:
                    term = term * pw(i, 0, 1, pos_max[i])
                if i in neg_max and neg_val[i][1] != _ONE:
                    term = term * pw(i, 1, 1, neg_max[i])
            if rest:
                for k, v in term.terms.items():
                    kk = k + rest
                    acc[kk] = acc.get(kk, 0) + v
            else:
                for k, v in term.terms.items():
                    acc[k] = acc.get(k, 0) + v
        total = LaurentPolynomial({k: v for k, v in acc.items() if v != 0})
        if den == _ONE:
            return total
        return RationalExpression(total, den)

    # text
    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(
                _NAMES[i] if e == 1 else f"{_NAMES[i]}^{e}" for i, e in _unpack(k)
            )
            ctxt = format_exact(c) if is_exact(c) else repr(c)
            if not mono:
                parts.append(ctxt)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({ctxt})*{mono}")
        return " + ".join(parts)


_ONE = LaurentPolynomial({0: 1}, _clean=True)


def symbol(name: str, laurent: bool = False) -> LaurentPolynomial:
    """Return the polynomial ``name`` (registering the symbol on first use)."""
    return LaurentPolynomial.sym(name, laurent)


def symbols(names: str, laurent: bool = False) -> Tuple[LaurentPolynomial, ...]:
    return tuple(symbol(n, laurent) for n in names.split())


def as_poly(x) -> LaurentPolynomial:
    p = LaurentPolynomial._lift(x)
    if p is None:
        raise TypeError(f"cannot convert {x!r} to LaurentPolynomial")
    return p


def poly_divmod(p: LaurentPolynomial, d: LaurentPolynomial, var: str):
    """Divide ``p`` by ``d`` with respect to ``var``.

    The leading coefficient of ``d`` in ``var`` must be a unit of the Laurent
    ring (a single term in Laurent symbols).  Returns ``(q, r)`` with
    ``p = q*d + r`` and ``deg_var(r) < deg_var(d)``.
    """
    p = as_poly(p)
    d = as_poly(d)
    if d.is_zero():
        raise AlgebraError("division by zero polynomial")
    n = d.degree(var)
    dcoef = d.coefficients_in(var)
    lc_inv = dcoef[n].monomial_inverse()
    if lc_inv is None:
        raise AlgebraError(f"leading coefficient of divisor in {var} is not invertible")
    i = _INDEX.get(var)
    if n == 0:
        return p * lc_inv, LaurentPolynomial()
    step = 1 << (_BITS * i)
    # divisor without its leading part, pre-multiplied by -1/lc
    tail = {}
    for e, c in dcoef.items():
        if e == n:
            continue
        for k, v in (c * lc_inv).terms.items():
            tail[k + e * step] = -v
    tail_items = list(tail.items())
    r = dict(p.terms)
    q: Dict[int, object] = {}
    lk = next(iter(lc_inv.terms))
    # bucket remainder terms by var-degree
    buckets: Dict[int, Dict[int, object]] = {}
    for k, c in r.items():
        buckets.setdefault(_slot(k, i), {})[k] = c
    while True:
        top = max((e for e, b in buckets.items() if b), default=-1)
        if top < n:
            break
        b = buckets.pop(top)
        shift = (top - n) * step
        for k, c in b.items():
            base = k - top * step + shift  # monomial of the quotient term before lc scaling
            qk = base + lk
            qc = _coerce_coef(c * lc_inv.terms[lk])
            q[qk] = _coerce_coef(q.get(qk, 0) + qc)
            for tk, tv in tail_items:
                kk = k - n * step + tk
                e = _slot(kk, i)
                bb = buckets.setdefault(e, {})
                v = bb.get(kk, 0) + c * tv
                if v == 0:
                    bb.pop(kk, None)
                else:
                    bb[kk] = _coerce_coef(v)
    rem = {}
    for b in buckets.values():
        rem.update(b)
    return LaurentPolynomial({k: v for k, v in q.items() if v != 0}), LaurentPolynomial(rem)


def poly_rem(p: LaurentPolynomial, d: LaurentPolynomial, var: str) -> LaurentPolynomial:
    return poly_divmod(p, d, var)[1]


def iter_terms(p: LaurentPolynomial) -> Iterator[Tuple[object, Dict[str, int]]]:
    for c, pairs in p.decoded():
        yield c, {_NAMES[i]: e for i, e in pairs}
