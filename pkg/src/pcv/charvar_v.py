"""The wild cubic surface S_V = {F~(X0, Wt, U1) = 0}.

Parameters are (e0, e~1, einf) with a0 = e0 + 1/e0, ainf = einf + 1/einf and
a~1 = e~1 + 1/e~1.  As in ``charvar_vi`` every formula is written over a
generic commutative scalar type.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .charvar_vi import solve_monic_quadratic
from .scalar import AlgebraError, is_exact, lift

COORDS = ("X0", "Wt", "U1")


@dataclass(frozen=True)
class ParamsV:
    e0: object
    e1t: object  # e~1; in the confluence e~1 = -e_t e_1
    einf: object

    def __post_init__(self):
        for name in ("e0", "e1t", "einf"):
            object.__setattr__(self, name, lift(getattr(self, name)))

    @property
    def a0(self):
        return self.e0 + 1 / self.e0

    @property
    def ainf(self):
        return self.einf + 1 / self.einf

    @property
    def a1t(self):
        return self.e1t + 1 / self.e1t

    @property
    def theta(self) -> Tuple[object, object, object, object]:
        return theta_tilde(self)


def theta_tilde(params: ParamsV) -> Tuple[object, object, object, object]:
    """(theta~0, theta~t, theta~1, theta~inf)."""
    ee, a0, ai = params.e1t, params.a0, params.ainf
    return (-ee, ai - ee * a0, a0 - ee * ai, 1 - ee * a0 * ai + ee * ee)


def theta_tilde_product_form(e0, ete1, einf) -> Tuple[object, object, object, object]:
    """The same constants written with the product e_t e_1 in place of -e~1."""
    a0, ai = e0 + 1 / e0, einf + 1 / einf
    return (ete1, ai + ete1 * a0, a0 + ete1 * ai, 1 + ete1 * a0 * ai + ete1 * ete1)


def fricke_v(P: Sequence[object], params: ParamsV):
    X0, W, U = P
    t0, tt, t1, ti = theta_tilde(params)
    return X0 * W * U + W * W + U * U - t0 * X0 - tt * W - t1 * U + ti


def fricke_v_partials(P: Sequence[object], params: ParamsV) -> Tuple[object, object, object]:
    X0, W, U = P
    t0, tt, t1, _ = theta_tilde(params)
    return (U * W - t0, X0 * U + 2 * W - tt, X0 * W + 2 * U - t1)


def fricke_v_eval(P: Sequence[object], params: ParamsV):
    """(F~, F~_X0, F~_Wt, F~_U1)."""
    return (fricke_v(P, params),) + fricke_v_partials(P, params)


# --- symplectic form ---------------------------------------------------------

def omega_v_charts(P, params, u, v):
    """dX0^dWt/F~_U1, dWt^dU1/F~_X0, dU1^dX0/F~_Wt (None where a partial vanishes)."""
    G0, GW, GU = fricke_v_partials(P, params)
    out = []
    for (p, q), d in (((0, 1), GU), ((1, 2), G0), ((2, 0), GW)):
        out.append((u[p] * v[q] - u[q] * v[p]) / d if d != 0 else None)
    return tuple(out)


def symplectic_pair_v(P, params, u, v):
    G0, GW, GU = fricke_v_partials(P, params)
    charts = (((0, 1), GU), ((1, 2), G0), ((2, 0), GW))
    (p, q), d = max(charts, key=lambda c: abs(complex(c[1])))
    if d == 0:
        raise AlgebraError("singular point: all partial derivatives vanish")
    return (u[p] * v[q] - u[q] * v[p]) / d


def tangent_basis_v(P, params):
    g = fricke_v_partials(P, params)
    m = max(range(3), key=lambda k: abs(complex(g[k])))
    vecs = []
    for k in (k for k in range(3) if k != m):
        w = [0j, 0j, 0j]
        w[k] = 1.0
        w[m] = -g[k] / g[m]
        vecs.append(tuple(w))
    return vecs[0], vecs[1]


# --- decompositions and lines ------------------------------------------------

def decompositions_v(P: Sequence[object], params: ParamsV):
    """The eleven factorizations F~ = A*B + L1*L2 as tuples (A, B, L1, L2).

    Each gives the two lines {A = 0, L1 = 0} and {A = 0, L2 = 0}; A is linear
    in a single coordinate.
    """
    X0, W, U = P
    e0, ee, en = params.e0, params.e1t, params.einf
    a0, ai = params.a0, params.ainf
    G0, GW, GU = fricke_v_partials(P, params)
    return [
        (X0 + ee + 1 / ee, G0, -ee * (W - U / ee - ai), U - W / ee - a0),
        (X0 - e0 * en - 1 / (e0 * en), G0,
         e0 * W + U / en + ee - e0 / en, W / e0 + en * U + ee - en / e0),
        (X0 - e0 / en - en / e0, G0,
         e0 * W + en * U + ee - e0 * en, W / e0 + U / en + ee - 1 / (e0 * en)),
        (W - en, GW - W + en, U + ee / en, en * X0 + U + ee * en - a0),
        (W - 1 / en, GW - W + 1 / en, U + ee * en, X0 / en + U + ee / en - a0),
        (W + ee * e0, GW - W - ee * e0, U - 1 / e0, -ee * e0 * X0 + U - e0 + ee * ai),
        (W + ee / e0, GW - W - ee / e0, U - e0, -(ee / e0) * X0 + U - 1 / e0 + ee * ai),
        (U - e0, GU - U + e0, W + ee / e0, e0 * X0 + W + ee * e0 - ai),
        (U - 1 / e0, GU - U + 1 / e0, W + ee * e0, X0 / e0 + W + ee / e0 - ai),
        (U + ee * en, GU - U - ee * en, W - 1 / en, -ee * en * X0 + W - en + ee * a0),
        (U + ee / en, GU - U - ee / en, W - en, -(ee / en) * X0 + W - 1 / en + ee * a0),
    ]


def decomposition_values(P, params) -> List[object]:
    return [A * B + L1 * L2 for A, B, L1, L2 in decompositions_v(P, params)]


def _linear_coefficients(fn) -> Tuple[object, object, object, object]:
    """Coefficients (c0, cW, cU, const) of an affine function of (X0, W, U)."""
    c = fn((0, 0, 0))
    return (fn((1, 0, 0)) - c, fn((0, 1, 0)) - c, fn((0, 0, 1)) - c, c)


@dataclass(frozen=True)
class LineV:
    """Intersection of two affine planes c0*X0 + cW*Wt + cU*U1 + const = 0."""

    family: int
    branch: int
    eq1: Tuple[object, object, object, object]
    eq2: Tuple[object, object, object, object]

    @property
    def label(self) -> str:
        return f"decomposition={self.family} factor={self.branch}"

    def point(self, lam) -> Tuple[object, object, object]:
        """Parameterize by the coordinate absent from the first equation.

        The first equation fixes a single coordinate; the free coordinate is
        the one of the remaining two with zero coefficient in the second
        equation if any, otherwise the later one.
        """
        fixed = next(k for k in range(3) if self.eq1[k] != 0)
        others = [k for k in range(3) if k != fixed]
        value = -self.eq1[3] / self.eq1[fixed]
        # solve the second equation for a variable with nonzero coefficient
        solve = next((k for k in reversed(others) if self.eq2[k] != 0), None)
        if solve is None:
            raise AlgebraError("degenerate line")
        free = [k for k in others if k != solve][0]
        X = [None, None, None]
        X[fixed] = value
        X[free] = lam
        rest = self.eq2[3] + self.eq2[fixed] * value + self.eq2[free] * lam
        X[solve] = -rest / self.eq2[solve]
        return tuple(X)

    def residuals(self, P) -> Tuple[object, object]:
        return tuple(e[0] * P[0] + e[1] * P[1] + e[2] * P[2] + e[3] for e in (self.eq1, self.eq2))


def lines_v(params: ParamsV) -> List[LineV]:
    out: List[LineV] = []
    for idx in range(11):
        def part(n, idx=idx):
            return lambda P: decompositions_v(P, params)[idx][n]

        A = _linear_coefficients(part(0))
        for branch, n in ((1, 2), (2, 3)):
            out.append(LineV(idx + 1, branch, A, _linear_coefficients(part(n))))
    return out


# --- singularities -----------------------------------------------------------

@dataclass(frozen=True)
class SingularPointV:
    location: Tuple[object, object, object]
    kind: str


def singular_candidates_v(params: ParamsV) -> List[Tuple[SingularPointV, object]]:
    """Candidate points paired with the condition that must vanish."""
    e0, ee, en = params.e0, params.e1t, params.einf
    a0, ai = params.a0, params.ainf
    out = []
    for s in (1, -1):
        sg = "+" if s > 0 else "-"
        out.append((SingularPointV((s * ai, -s * ee, lift(s)), f"a0={sg}2"), a0 - 2 * s))
        out.append((SingularPointV((s * a0, lift(s), -s * ee), f"ainf={sg}2"), ai - 2 * s))
    out.append((SingularPointV((-ee - 1 / ee, 1 / en, 1 / e0), "-e~1*e0*einf=1"), -ee * e0 * en - 1))
    out.append((SingularPointV((-ee - 1 / ee, en, e0), "-e~1=e0*einf"), -ee - e0 * en))
    return out


def singularities_v(params: ParamsV, tol: Optional[float] = None) -> List[SingularPointV]:
    exact = all(is_exact(x) for x in (params.e0, params.e1t, params.einf))
    if tol is None and not exact:
        tol = 1e-9

    def zero(x):
        return x == 0 if tol is None else abs(complex(x)) <= tol

    out: List[SingularPointV] = []
    for cand, cond in singular_candidates_v(params):
        if not zero(cond):
            continue
        vals = fricke_v_eval(cand.location, params)
        if not all(zero(v) for v in vals):
            continue
        if any(all(zero(a - b) for a, b in zip(cand.location, o.location)) for o in out):
            continue
        out.append(cand)
    return out


def w_tilde_a_form(a0, a1t, ainf):
    return a0 * a0 + a1t * a1t + ainf * ainf + a0 * a1t * ainf - 4


def w_tilde_e_form(e0, ete1, einf):
    """The factored form, with the product e_t e_1 (= -e~1)."""
    p = e0 * ete1 * einf
    return (p - 1) * (e0 * ete1 - einf) * (ete1 * einf - e0) * (ete1 - e0 * einf) / (p * p)


def w_tilde(params: ParamsV):
    return w_tilde_a_form(params.a0, params.a1t, params.ainf)


def singular_criterion_v(params: ParamsV):
    return (params.a0 ** 2 - 4) * (params.ainf ** 2 - 4) * w_tilde(params)


# --- sampling ------------------------------------------------------------------

def sample_point_v(params: ParamsV, seed: int, radius: float = 2.0) -> Tuple[complex, complex, complex]:
    """Random numeric point on S_V; deterministic in ``seed``."""
    rng = random.Random(seed)
    num = ParamsV(complex(params.e0), complex(params.e1t), complex(params.einf))
    t0, tt, t1, ti = theta_tilde(num)

    def disk():
        r = radius * rng.random() ** 0.5
        return cmath.rect(r, rng.uniform(-cmath.pi, cmath.pi))

    X0, W = disk(), disk()
    U = solve_monic_quadratic(X0 * W - t1, W * W - t0 * X0 - tt * W + ti, rng.randrange(2))
    return (X0, W, U)
