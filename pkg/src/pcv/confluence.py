"""The birational map Phi: S_V -> S_VI, its inverse, and the line L0.

With e_t e_1 = -e~1 the two surfaces are related by

    X0 = X0,  Xt = U1/e1 + Wt/et,  X1 = U1/et + Wt/e1 - F~_W/e1,

and F o Phi = -(1/(et e1)) (X0 - et/e1 - e1/et) F~.  The inverse is
undefined on L0 = {X0 = et/e1 + e1/et, e1 Xt + et X1 = theta~1}.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .charvar_v import ParamsV, fricke_v, fricke_v_partials, theta_tilde
from .charvar_vi import ParamsVI, fricke, fricke_partials
from .poly import symbol
from .ratmap import RationalMap
from .scalar import AlgebraError, is_exact, lift

VI_COORDS = ("X0", "Xt", "X1")
V_COORDS = ("X0", "Wt", "U1")


class OnSingularLine(AlgebraError):
    """Point lies on L0, where the inverse map is undefined."""


@dataclass(frozen=True)
class ConfluentParams:
    e0: object
    e1t: object
    einf: object
    et: object
    e1: object

    def __post_init__(self):
        for name in ("e0", "e1t", "einf", "et", "e1"):
            object.__setattr__(self, name, lift(getattr(self, name)))

    @property
    def nu(self):
        return self.et * self.et

    @property
    def vi(self) -> ParamsVI:
        return ParamsVI(self.e0, self.et, self.e1, self.einf)

    @property
    def v(self) -> ParamsV:
        return ParamsV(self.e0, self.e1t, self.einf)

    @property
    def c(self):
        """X0-coordinate of L0."""
        return self.et / self.e1 + self.e1 / self.et


def confluent_params(theta0=None, theta1t=None, thetainf=None, eps=None, et=None,
                     e0=None, e1t=None, einf=None) -> ConfluentParams:
    """Build the parameters of the confluent family.

    Either exponents (theta0, theta1t, thetainf) with e = exp(pi i theta) or
    the values (e0, e1t, einf) directly.  e_t comes from ``eps``
    (e_t = exp(pi i / eps)) or is given; then e_1 = -e~1 / e_t.
    """
    if e0 is None:
        if theta0 is None or theta1t is None or thetainf is None:
            raise ValueError("need either exponents or e-values")
        e0 = cmath.exp(1j * cmath.pi * theta0)
        e1t = cmath.exp(1j * cmath.pi * theta1t)
        einf = cmath.exp(1j * cmath.pi * thetainf)
    if et is None:
        if eps is None:
            raise ValueError("need eps or et")
        if eps == 0:
            raise AlgebraError("eps = 0 is the limit; e_t is undefined there")
        et = cmath.exp(1j * cmath.pi / eps)
    et = lift(et)
    e1t = lift(e1t)
    return ConfluentParams(e0, e1t, einf, et, -e1t / et)


def eps_sequence(eps0, lam0=1, n: int = 0):
    """eps_n with 1/eps_n = 1/eps0 + n/lam0."""
    return 1 / (1 / eps0 + n / lam0)


# --- numeric / generic evaluation ---------------------------------------------

def phi_forward(P: Sequence[object], cp: ConfluentParams) -> Tuple[object, object, object]:
    X0, W, U = P
    FW = fricke_v_partials(P, cp.v)[1]
    return (X0, U / cp.e1 + W / cp.et, U / cp.et + W / cp.e1 - FW / cp.e1)


def _zero(x, tol) -> bool:
    return x == 0 if tol is None else abs(complex(x)) <= tol


def _tol(cp: ConfluentParams, X, tol):
    if tol is not None:
        return tol
    vals = list(X) + [cp.e0, cp.e1t, cp.einf, cp.et, cp.e1]
    return None if all(is_exact(v) for v in vals) else 1e-9


def l0_residuals(X: Sequence[object], cp: ConfluentParams) -> Tuple[object, object]:
    th1 = theta_tilde(cp.v)[2]
    return (X[0] - cp.c, cp.e1 * X[1] + cp.et * X[2] - th1)


def on_l0(X: Sequence[object], cp: ConfluentParams, tol: Optional[float] = None) -> bool:
    tol = _tol(cp, X, tol)
    return all(_zero(r, tol) for r in l0_residuals(X, cp))


def u1_formulas(X: Sequence[object], cp: ConfluentParams):
    """Numerator/denominator pairs of the two expressions for U1."""
    X0, Xt, X1 = X
    et, e1 = cp.et, cp.e1
    _, tht, th1, _ = theta_tilde(cp.v)
    F0 = fricke_partials(X, cp.vi)[0]
    first = (-(et * Xt + e1 * X1 - tht), X0 - cp.c)
    second = (-et * e1 * (X0 - cp.c - F0), e1 * Xt + et * X1 - th1)
    return first, second


def phi_inverse(X: Sequence[object], cp: ConfluentParams, tol: Optional[float] = None):
    tol = _tol(cp, X, tol)
    first, second = u1_formulas(X, cp)
    usable = [f for f in (first, second) if not _zero(f[1], tol)]
    if not usable:
        raise OnSingularLine("point lies on the singular line L0")
    if tol is None:
        num, den = usable[0]
    else:
        num, den = max(usable, key=lambda f: abs(complex(f[1])))
    U = num / den
    W = cp.et * X[1] - (cp.et / cp.e1) * U
    return (X[0], W, U)


@dataclass(frozen=True)
class BlowupPoint:
    Z0: object
    Zt: object
    Z1: object
    Zinf: object


def blowup_chart(X: Sequence[object], cp: ConfluentParams, tol: Optional[float] = None) -> BlowupPoint:
    """Image of a point of L0 on the exceptional line (0 : -et/e1 : 1 ; Zinf)."""
    if not on_l0(X, cp, tol):
        raise AlgebraError("point is not on L0")
    tht = theta_tilde(cp.v)[1]
    return BlowupPoint(lift(0), -cp.et / cp.e1, lift(1), tht - cp.et * X[1] - cp.e1 * X[2])


def blowup_coordinates(X: Sequence[object], cp: ConfluentParams):
    """(Y0, Yt, Y1) = (X0 - c, Y0 Wt, Y0 U1) for a point off L0 (first U1 formula)."""
    X0, W, U = phi_inverse(X, cp)
    Y0 = X0 - cp.c
    return (Y0, Y0 * W, Y0 * U)


def point_on_l0(cp: ConfluentParams, lam) -> Tuple[object, object, object]:
    """The point of L0 with X_t = lam."""
    th1 = theta_tilde(cp.v)[2]
    return (cp.c, lam, (th1 - cp.e1 * lam) / cp.et)


# --- symbolic maps ------------------------------------------------------------

def symbolic_params() -> ConfluentParams:
    e0, einf, et, e1 = (symbol(s, laurent=True) for s in ("e0", "einf", "et", "e1"))
    return ConfluentParams(e0, -et * e1, einf, et, e1)


def phi_map(cp: Optional[ConfluentParams] = None) -> RationalMap:
    cp = cp or symbolic_params()
    P = tuple(symbol(s) for s in V_COORDS)
    return RationalMap.build(V_COORDS, phi_forward(P, cp), {}, "Phi")


def phi_inverse_map(which: int = 1, cp: Optional[ConfluentParams] = None) -> RationalMap:
    """Phi^-1 built from the first or the second expression for U1."""
    cp = cp or symbolic_params()
    X = tuple(symbol(s) for s in VI_COORDS)
    num, den = u1_formulas(X, cp)[which - 1]
    from .rational import RationalExpression

    U = RationalExpression(num, den)
    W = cp.et * X[1] - (cp.et / cp.e1) * U
    return RationalMap.build(VI_COORDS, (X[0], W, U), {}, "Phi^-1")


def fricke_factor_sides(cp: Optional[ConfluentParams] = None):
    """(F o Phi, -(1/(et e1)) (X0 - c) F~) as symbolic expressions."""
    cp = cp or symbolic_params()
    P = tuple(symbol(s) for s in V_COORDS)
    lhs = fricke(phi_forward(P, cp), cp.vi)
    rhs = -(P[0] - cp.c) * fricke_v(P, cp.v) / (cp.et * cp.e1)
    return lhs, rhs


def partial_transport_sides(cp: Optional[ConfluentParams] = None):
    """Pairs (F_Xi o Phi, expression in F~ partials) for i = 0, t, 1."""
    cp = cp or symbolic_params()
    P = tuple(symbol(s) for s in V_COORDS)
    X0, W, U = P
    et, e1 = cp.et, cp.e1
    G0, GW, GU = fricke_v_partials(P, cp.v)
    lhs = fricke_partials(phi_forward(P, cp), cp.vi)
    rhs = (
        (U / e1) * (GU / et - GW / e1) - G0 / (et * e1) * (X0 - cp.c),
        GU / e1 + GW / et - X0 * GW / e1,
        GU / et - GW / e1,
    )
    return list(zip(lhs, rhs))
