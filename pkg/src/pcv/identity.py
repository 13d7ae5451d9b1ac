"""Identity testing for rational expressions and maps.

Two strategies:

* ``exact``: clear denominators, optionally reduce the numerator difference
  modulo a cubic that is monic in one variable, and compare with zero.
* ``randomized``: evaluate both sides at exact Gaussian-rational points
  (Schwartz-Zippel).  A false verdict comes with a witness point.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .poly import LaurentPolynomial, poly_rem
from .rational import RationalExpression, as_rational
from .ratmap import RationalMap
from .scalar import AlgebraError, GaussianRational, normalize

DEFAULT_SEED = 20240917
BOUND = 1000


def default_seed() -> int:
    env = os.environ.get("PCV_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


@dataclass
class Verdict:
    value: str  # "true" | "false" | "inconclusive"
    strategy: str
    seed: Optional[int] = None
    points: int = 0
    witness: Optional[Dict[str, object]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.value == "true"

    @property
    def inconclusive(self) -> bool:
        return self.value == "inconclusive"


def monic_variable(modulo: LaurentPolynomial, prefer: Sequence[str] = ("X1", "U1")) -> str:
    """Pick a variable in which ``modulo`` has a unit leading coefficient."""
    cands = list(prefer) + sorted(modulo.symbols())
    for v in cands:
        if v not in modulo.symbols():
            continue
        coeffs = modulo.coefficients_in(v)
        top = max(coeffs)
        if top > 0 and coeffs[top].monomial_inverse() is not None:
            return v
    raise AlgebraError("modulus is not monic in any variable")


def random_gaussian(rng: random.Random, bound: int = BOUND, complex_part: bool = True):
    def rat():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    if complex_part:
        return normalize(GaussianRational(rat(), rat()))
    return normalize(rat())


def random_point(names, rng: random.Random, bound: int = BOUND) -> Dict[str, object]:
    pt = {}
    for n in sorted(names):
        v = random_gaussian(rng, bound)
        while v == 0:
            v = random_gaussian(rng, bound)
        pt[n] = v
    return pt


def _numerator_difference(f: RationalExpression, g: RationalExpression) -> LaurentPolynomial:
    if f.den == g.den:
        return f.num - g.num
    return f.num * g.den - g.num * f.den


def identity_test(f, g, modulo: Optional[LaurentPolynomial] = None, var: Optional[str] = None,
                  strategy: str = "exact", n: int = 32, seed: Optional[int] = None) -> Verdict:
    """Decide ``f == g`` (optionally on the hypersurface ``modulo = 0``)."""
    f = as_rational(f)
    g = as_rational(g)
    if modulo is not None and var is None:
        var = monic_variable(modulo)
    if strategy == "exact":
        diff = _numerator_difference(f, g)
        if modulo is not None:
            diff = poly_rem(diff, modulo, var)
            for d in (f.den, g.den):
                if poly_rem(d, modulo, var).is_zero():
                    return Verdict("false", "exact", detail="denominator vanishes on the surface")
        return Verdict("true" if diff.is_zero() else "false", "exact")
    if strategy != "randomized":
        raise ValueError(f"unknown strategy {strategy!r}")
    seed = default_seed() if seed is None else seed
    rng = random.Random(seed)
    if modulo is not None:
        target = poly_rem(_numerator_difference(f, g), modulo, var)
        names = target.symbols() | f.den.symbols() | g.den.symbols()
    else:
        target = None
        names = f.symbols() | g.symbols()
    used = 0
    for _ in range(n):
        pt = random_point(names, rng)
        try:
            fd = f.den.evaluate(pt)
            gd = g.den.evaluate(pt)
        except AlgebraError:
            continue
        if fd == 0 or gd == 0:
            continue
        used += 1
        if target is not None:
            ok = target.evaluate(pt) == 0
        else:
            ok = f.num.evaluate(pt) * gd == g.num.evaluate(pt) * fd
        if not ok:
            return Verdict("false", "randomized", seed, used, witness=pt)
    if used == 0:
        return Verdict("inconclusive", "randomized", seed, 0,
                       detail="every sample point hit a vanishing denominator")
    return Verdict("true", "randomized", seed, used)


def maps_equal(m1: RationalMap, m2: RationalMap, modulo=None, var=None,
               strategy: str = "exact", n: int = 32, seed: Optional[int] = None) -> Verdict:
    """Compare two maps output by output and on their parameter actions."""
    if m1.arity != m2.arity:
        return Verdict("false", strategy, detail="arity mismatch")
    pairs = list(zip(m1.outputs, m2.outputs))
    for p in sorted(set(m1.param_action) | set(m2.param_action)):
        from .poly import symbol
        default = as_rational(symbol(p))
        pairs.append((m1.param_action.get(p, default), m2.param_action.get(p, default)))
    worst = None
    for a, b in pairs:
        v = identity_test(a, b, modulo, var, strategy, n, seed)
        if v.value == "false":
            return v
        if v.value == "inconclusive":
            worst = v
    return worst or Verdict("true", strategy, seed)


def is_identity(m: RationalMap, modulo=None, var=None, strategy: str = "exact",
                n: int = 32, seed: Optional[int] = None) -> Verdict:
    return maps_equal(m, RationalMap.identity(m.inputs), modulo, var, strategy, n, seed)
