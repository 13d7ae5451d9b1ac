"""The cubic surface S_VI(a) = {F(X, a) = 0} in trace coordinates.

All formulas are written over an arbitrary commutative scalar type, so the
same function evaluates on complex numbers, exact Gaussian rationals, or
symbolic Laurent polynomials.  Coordinates are ordered ``(X0, Xt, X1)`` and
parameters ``(a0, at, a1, ainf)`` / ``(e0, et, e1, einf)``.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .scalar import AlgebraError, is_exact, lift

IDX = ("0", "t", "1")
POS = {"0": 0, "t": 1, "1": 2}
# (i, j) completing k to the cyclic order (0, t, 1)
CYCLIC = {"0": ("t", "1"), "t": ("1", "0"), "1": ("0", "t")}


def a_from_e(e: Sequence[object]) -> Tuple[object, ...]:
    return tuple(lift(x) + 1 / lift(x) for x in e)


@dataclass(frozen=True)
class ParamsVI:
    e0: object
    et: object
    e1: object
    einf: object

    def __post_init__(self):
        for name in ("e0", "et", "e1", "einf"):
            object.__setattr__(self, name, lift(getattr(self, name)))

    @property
    def e(self) -> Tuple[object, object, object, object]:
        return (self.e0, self.et, self.e1, self.einf)

    @property
    def a(self) -> Tuple[object, ...]:
        return a_from_e(self.e)

    @property
    def theta(self) -> Tuple[object, ...]:
        return theta_from_a(self.a)

    def e_of(self, l: str):
        return self.e[{"0": 0, "t": 1, "1": 2, "inf": 3}[l]]

    def swap(self, i: str, j: str) -> "ParamsVI":
        e = list(self.e)
        e[POS[i]], e[POS[j]] = e[POS[j]], e[POS[i]]
        return ParamsVI(*e)


def _a(params) -> Tuple[object, ...]:
    if isinstance(params, ParamsVI):
        return params.a
    a = tuple(lift(x) for x in params)
    if len(a) != 4:
        raise ValueError("expected four a-parameters (a0, at, a1, ainf)")
    return a


def theta_from_a(a: Sequence[object]) -> Tuple[object, object, object, object]:
    a0, at, a1, ai = a
    return (
        a0 * ai + at * a1,
        at * ai + a1 * a0,
        a1 * ai + a0 * at,
        a0 * at * a1 * ai + a0 * a0 + at * at + a1 * a1 + ai * ai - 4,
    )


def fricke(X: Sequence[object], params) -> object:
    X0, Xt, X1 = X
    t0, tt, t1, ti = theta_from_a(_a(params))
    return X0 * Xt * X1 + X0 * X0 + Xt * Xt + X1 * X1 - t0 * X0 - tt * Xt - t1 * X1 + ti


def fricke_partials(X: Sequence[object], params) -> Tuple[object, object, object]:
    X0, Xt, X1 = X
    t0, tt, t1, _ = theta_from_a(_a(params))
    return (Xt * X1 + 2 * X0 - t0, X0 * X1 + 2 * Xt - tt, X0 * Xt + 2 * X1 - t1)


def fricke_eval(X: Sequence[object], params) -> Tuple[object, object, object, object]:
    """(F, F_X0, F_Xt, F_X1) at ``X``."""
    return (fricke(X, params),) + fricke_partials(X, params)


# --- symplectic form -------------------------------------------------------

def omega_charts(X, params, u, v) -> Tuple[object, object, object]:
    """The three residue expressions dX0^dXt/F_X1, dXt^dX1/F_X0, dX1^dX0/F_Xt."""
    F0, Ft, F1 = fricke_partials(X, params)

    def wedge(p, q):
        return u[p] * v[q] - u[q] * v[p]

    out = []
    for (p, q), d in (((0, 1), F1), ((1, 2), F0), ((2, 0), Ft)):
        out.append(wedge(p, q) / d if d != 0 else None)
    return tuple(out)


def symplectic_pair(X, params, u, v):
    """omega(u, v) via the residue chart with the largest partial derivative."""
    F0, Ft, F1 = fricke_partials(X, params)
    charts = (((0, 1), F1), ((1, 2), F0), ((2, 0), Ft))
    (p, q), d = max(charts, key=lambda c: abs(complex(c[1])))
    if d == 0:
        raise AlgebraError("singular point: all partial derivatives vanish")
    return (u[p] * v[q] - u[q] * v[p]) / d


def tangent_basis(X, params) -> Tuple[Tuple[object, ...], Tuple[object, ...]]:
    """Two tangent vectors spanning ker dF at a smooth numeric point."""
    g = fricke_partials(X, params)
    m = max(range(3), key=lambda k: abs(complex(g[k])))
    others = [k for k in range(3) if k != m]
    vecs = []
    for k in others:
        w = [0j, 0j, 0j]
        w[k] = 1.0
        w[m] = -g[k] / g[m]
        vecs.append(tuple(w))
    return vecs[0], vecs[1]


# --- lines ---------------------------------------------------------------------

@dataclass(frozen=True)
class LineVI:
    """{X_k = value, A*X_i + B*X_j = C}."""

    k: str
    family: int
    value: object
    i: str
    j: str
    A: object
    B: object
    C: object

    @property
    def label(self) -> str:
        return f"k={self.k} family={self.family}"

    def point(self, lam) -> Tuple[object, object, object]:
        """Parameterize the line by X_j = lam."""
        X = [None, None, None]
        X[POS[self.k]] = self.value
        X[POS[self.j]] = lam
        X[POS[self.i]] = (self.C - self.B * lam) / self.A
        return tuple(X)

    def residuals(self, X) -> Tuple[object, object]:
        return (X[POS[self.k]] - self.value,
                self.A * X[POS[self.i]] + self.B * X[POS[self.j]] - self.C)


def lines_vi(params: ParamsVI) -> List[LineVI]:
    e = {"0": params.e0, "t": params.et, "1": params.e1, "inf": params.einf}
    a = dict(zip(("0", "t", "1", "inf"), params.a))
    ei_ = e["inf"]
    ai_ = a["inf"]
    out: List[LineVI] = []
    for k in IDX:
        i, j = CYCLIC[k]
        ei, ej, ek = e[i], e[j], e[k]
        c1 = ei / ej + ej / ei
        c2 = ei * ej + 1 / (ei * ej)
        c3 = ek / ei_ + ei_ / ek
        c4 = ek * ei_ + 1 / (ek * ei_)
        rows = [
            (1, c1, ei, ej, ai_ + ei * ej * a[k]),
            (2, c1, ej, ei, a[k] + ei * ej * ai_),
            (3, c2, 1, ei * ej, ej * a[k] + ei * ai_),
            (4, c2, ei * ej, 1, ej * ai_ + ei * a[k]),
            (5, c3, ei_, ek, a[i] + ek * ei_ * a[j]),
            (6, c3, ek, ei_, a[j] + ek * ei_ * a[i]),
            (7, c4, 1, ek * ei_, ek * a[j] + ei_ * a[i]),
            (8, c4, ek * ei_, 1, ek * a[i] + ei_ * a[j]),
        ]
        for fam, c, A, B, C in rows:
            out.append(LineVI(k, fam, c, i, j, A, B, C))
    return out


def line_decompositions(X, params: ParamsVI, k: str) -> List[object]:
    """Four factorizations of F adapted to the lines with X_k constant."""
    e = {"0": params.e0, "t": params.et, "1": params.e1, "inf": params.einf}
    a = dict(zip(("0", "t", "1", "inf"), params.a))
    i, j = CYCLIC[k]
    Xi, Xj, Xk = X[POS[i]], X[POS[j]], X[POS[k]]
    Fk = fricke_partials(X, params)[POS[k]]
    ei, ej, ek, en = e[i], e[j], e[k], e["inf"]
    ai, aj, ak, an = a[i], a[j], a[k], a["inf"]
    out = []
    c = ei / ej + ej / ei
    out.append((Xk - c) * (Fk - Xk + c)
               + (ei * Xi + ej * Xj - an - ei * ej * ak) * (ei * Xj + ej * Xi - ak - ei * ej * an) / (ei * ej))
    c = ei * ej + 1 / (ei * ej)
    out.append((Xk - c) * (Fk - Xk + c)
               + (ei * ej * Xi + Xj - ej * an - ei * ak) * (ei * ej * Xj + Xi - ej * ak - ei * an) / (ei * ej))
    c = ek / en + en / ek
    out.append((Xk - c) * (Fk - Xk + c)
               + (en * Xi + ek * Xj - ai - ek * en * aj) * (ek * Xi + en * Xj - aj - ek * en * ai) / (ek * en))
    c = ek * en + 1 / (ek * en)
    out.append((Xk - c) * (Fk - Xk + c)
               + (Xj + ek * en * Xi - ek * ai - en * aj) * (Xi + ek * en * Xj - ek * aj - en * ai) / (ek * en))
    return out


# --- singularities -----------------------------------------------------------

@dataclass(frozen=True)
class SingularPointVI:
    location: Tuple[object, object, object]
    kind: str


def _is_zero(x, tol: Optional[float]) -> bool:
    if tol is None:
        return x == 0
    return abs(complex(x)) <= tol


def _tol_for(params: ParamsVI, tol: Optional[float]) -> Optional[float]:
    if tol is not None:
        return tol
    return None if all(is_exact(x) for x in params.e) else 1e-9


def singular_candidates(params: ParamsVI) -> List[SingularPointVI]:
    """All points listed by the two kinds of unstable representations."""
    e = params.e
    a0, at, a1, ai = params.a
    a = {"0": a0, "t": at, "1": a1}
    cands: List[SingularPointVI] = []
    for l in IDX:
        for s in (1, -1):
            X = [None, None, None]
            j, k = CYCLIC[l]
            X[POS[l]] = s * ai
            X[POS[j]] = s * a[k]
            X[POS[k]] = s * a[j]
            cands.append(SingularPointVI(tuple(X), f"M_{l}={'+' if s > 0 else '-'}I"))
    for s in (1, -1):
        cands.append(SingularPointVI((s * a0, s * at, s * a1), f"M_inf={'+' if s > 0 else '-'}I"))
    for d0 in (1, -1):
        for dt in (1, -1):
            for d1 in (1, -1):
                pw = (e[0] ** d0, e[1] ** dt, e[2] ** d1)
                X = (pw[1] * pw[2] + 1 / (pw[1] * pw[2]),
                     pw[0] * pw[2] + 1 / (pw[0] * pw[2]),
                     pw[0] * pw[1] + 1 / (pw[0] * pw[1]))
                sig = "".join("+" if d > 0 else "-" for d in (d0, dt, d1))
                cands.append(SingularPointVI(X, f"reducible({sig})"))
    return cands


def _candidate_condition(params: ParamsVI, kind: str, tol) -> bool:
    e = params.e
    a0, at, a1, ai = params.a
    a = {"0": a0, "t": at, "1": a1, "inf": ai}
    if kind.startswith("M_"):
        l, sign = kind[2:].split("=")
        s = 1 if sign[0] == "+" else -1
        return _is_zero(a[l] - 2 * s, tol)
    sig = kind[len("reducible("):-1]
    d = [1 if c == "+" else -1 for c in sig]
    prod = e[0] ** d[0] * e[1] ** d[1] * e[2] ** d[2] * e[3]
    return _is_zero(prod - 1, tol)


def singularities_vi(params: ParamsVI, tol: Optional[float] = None) -> List[SingularPointVI]:
    """Singular points of S_VI(a) (at most four, deduplicated)."""
    tol = _tol_for(params, tol)
    out: List[SingularPointVI] = []
    for c in singular_candidates(params):
        if not _candidate_condition(params, c.kind, tol):
            continue
        vals = fricke_eval(c.location, params)
        if not all(_is_zero(v, tol) for v in vals):
            continue
        dup = False
        for o in out:
            if all(_is_zero(p - q, tol) for p, q in zip(o.location, c.location)):
                dup = True
                break
        if not dup:
            out.append(c)
    return out


def w_a_form(a: Sequence[object]):
    a0, at, a1, ai = a
    return ((a0 + at + a1 + ai) * (a0 + ai - at - a1) * (at + ai - a1 - a0) * (a1 + ai - a0 - at)
            - (a0 * ai - at * a1) * (at * ai - a1 * a0) * (a1 * ai - a0 * at))


def w_e_form(e: Sequence[object]):
    e0, et, e1, ei = e
    p = e0 * et * e1 * ei
    num = (p - 1) * (e0 * et - e1 * ei) * (et * e1 - e0 * ei) * (e1 * e0 - et * ei)
    prod = (e0 - et * e1 * ei) * (et - e0 * e1 * ei) * (e1 - e0 * et * ei) * (ei - e0 * et * e1)
    return num * prod / p ** 4


def w_discriminant(params: ParamsVI):
    """w(a); S_VI(a) is singular iff prod(a_l^2 - 4) * w(a) = 0."""
    return w_a_form(params.a)


def singular_criterion(params: ParamsVI):
    out = w_discriminant(params)
    for x in params.a:
        out = out * (x * x - 4)
    return out


# --- sampling ------------------------------------------------------------------

def solve_monic_quadratic(b: complex, c: complex, pick: int) -> complex:
    """Root of z^2 + b z + c = 0 (pick in {0, 1}), computed stably."""
    disc = cmath.sqrt(b * b - 4 * c)
    q = -0.5 * (b + disc) if (b.conjugate() * disc).real >= 0 else -0.5 * (b - disc)
    if q == 0:
        return 0j
    r1, r2 = q, c / q
    return r1 if pick == 0 else r2


def sample_point_vi(params, seed: int, radius: float = 2.0) -> Tuple[complex, complex, complex]:
    """Random numeric point on S_VI(a); deterministic in ``seed``."""
    rng = random.Random(seed)
    a = tuple(complex(x) for x in _a(params))
    t0, tt, t1, ti = theta_from_a(a)

    def disk():
        r = radius * rng.random() ** 0.5
        return cmath.rect(r, rng.uniform(-cmath.pi, cmath.pi))

    X0, Xt = disk(), disk()
    b = X0 * Xt - t1
    c = X0 * X0 + Xt * Xt - t0 * X0 - tt * Xt + ti
    X1 = solve_monic_quadratic(b, c, rng.randrange(2))
    return (X0, Xt, X1)
