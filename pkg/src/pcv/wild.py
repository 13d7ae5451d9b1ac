"""Wild monodromy dynamics on S_V.

* g~_t1^2 and its inverse are polynomial and independent of nu.
* g~_0t^2(nu) = Phi^-1 o g_0t^2 o Phi with e_t = sqrt(nu), e_1 = -e~1/e_t.
* Half-monodromies g~_t1(nu), g~_1t(nu) move nu to e~1^2/nu.
* Torus flows tau_U(nu), tau_W(nu) are time-(log nu) flows of the fields
  -(F~_W/U) d_X0 + (F~_X0/U) d_W  and  -(F~_U/W) d_X0 + (F~_X0/W) d_U.
* sigma = tau_U(nu)^-1 o g~_t0^2(nu) and sigma' = tau_W(nu) o g~_t1^2 o g~_0t^2(nu)
  are independent of nu and sigma' o sigma = g~_t1^2.
"""
from __future__ import annotations

import cmath
import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .braid_vi import apply_word, explicit_g2
from .charvar_v import ParamsV, fricke_v, fricke_v_partials, sample_point_v
from .charvar_vi import fricke_partials
from .confluence import ConfluentParams, OnSingularLine, phi_forward, phi_inverse, u1_formulas
from .poly import symbol
from .ratmap import RationalMap
from .rational import RationalExpression, as_rational
from .scalar import AlgebraError, GaussianRational, lift, normalize

V_COORDS = ("X0", "Wt", "U1")


class IndeterminatePoint(AlgebraError):
    """A denominator of a birational map vanishes at the point."""


class IntegrationError(AlgebraError):
    def __init__(self, msg: str, last_state=None):
        super().__init__(msg)
        self.last_state = last_state


# --- monodromy g~_t1^{+-2} -----------------------------------------------------

def monodromy_v(P: Sequence[object], params: ParamsV, direction: int = 1):
    """g~_t1^2 (direction +1) or g~_1t^2 (direction -1)."""
    X0, W, U = P
    _, GW, GU = fricke_v_partials(P, params)
    if direction > 0:
        return (X0, W - GW, U - GU + X0 * GW)
    return (X0, W - GW + X0 * GU, U - GU)


def confluent_for_nu(params: ParamsV, nu=None, et=None) -> ConfluentParams:
    """Split nu = e_t^2 with the principal square root (or the given e_t)."""
    if et is None:
        if nu is None:
            raise ValueError("need nu or et")
        if nu == 0:
            raise AlgebraError("nu must be nonzero")
        et = cmath.sqrt(complex(nu))
    et = lift(et)
    return ConfluentParams(params.e0, params.e1t, params.einf, et, -params.e1t / et)


def _conjugated(P, cp: ConfluentParams, step: Callable):
    X = phi_forward(P, cp)
    Y = step(X, cp.vi)
    try:
        return phi_inverse(Y, cp)
    except OnSingularLine as exc:
        raise IndeterminatePoint("indeterminate point of the wild monodromy map") from exc


def wild_g0t_sq(P: Sequence[object], params: ParamsV, nu=None, direction: int = 1, et=None):
    """g~_0t^2(nu) (direction +1) or its inverse g~_t0^2(nu) (direction -1)."""
    cp = confluent_for_nu(params, nu, et)
    if direction > 0:
        return _conjugated(P, cp, lambda X, p: explicit_g2("0t", X, p).point)
    return _conjugated(P, cp, lambda X, p: apply_word("gt0^2", X, p).point)


def wild_factor_denominator(P, params: ParamsV, nu=None, et=None):
    """X0 + e~1/nu + nu/e~1 - F_X0 o Phi."""
    cp = confluent_for_nu(params, nu, et)
    ee, n = params.e1t, cp.nu
    return P[0] + ee / n + n / ee - fricke_partials(phi_forward(P, cp), cp.vi)[0]


# --- half monodromies -----------------------------------------------------------

def half_monodromy_wild(P: Sequence[object], params: ParamsV, nu, which: str = "t1"):
    """g~_t1(nu) or g~_1t(nu); returns (new point, new nu = e~1^2/nu)."""
    X0, W, U = P
    _, GW, GU = fricke_v_partials(P, params)
    ee = params.e1t
    nu = lift(nu)
    r, q = nu / ee, ee / nu
    den = X0 + q + r
    if den == 0 or (isinstance(den, (complex, float)) and abs(den) < 1e-14):
        raise IndeterminatePoint("X0 + e~1/nu + nu/e~1 vanishes")
    if which == "t1":
        box = (GU - (X0 + q) * GW) / den
        out = (X0, W - GW - box, U - r * box)
    elif which == "1t":
        box = (GW - (X0 + r) * GU) / den
        out = (X0, W - q * box, U - GU - box)
    else:
        raise ValueError("which must be 't1' or '1t'")
    return out, ee * ee / nu


def half_monodromy_conjugated(P, params: ParamsV, nu=None, et=None, which: str = "t1"):
    """Phi'^-1 o g_t1 o Phi, with Phi' built from the swapped pair (e_1, e_t)."""
    cp = confluent_for_nu(params, nu, et)
    gen = "gt1" if which == "t1" else "g1t"
    res = apply_word(gen, phi_forward(P, cp), cp.vi)
    cp2 = ConfluentParams(cp.e0, cp.e1t, cp.einf, cp.e1, cp.et)
    try:
        return phi_inverse(res.point, cp2), cp2.nu
    except OnSingularLine as exc:
        raise IndeterminatePoint("indeterminate point of the half-monodromy") from exc


def bar_half_monodromy(P: Sequence[object], params: ParamsV):
    """(X0, W, U) -> (X0, U, W - F~_W), with e0 <-> einf on the parameters."""
    X0, W, U = P
    GW = fricke_v_partials(P, params)[1]
    return (X0, U, W - GW), ParamsV(params.einf, params.e1t, params.e0)


# --- symbolic maps ----------------------------------------------------------------

def wild_symbols() -> Tuple[ParamsV, object]:
    """Symbolic ParamsV(e0, e1t, einf) and the Laurent symbol et."""
    e0, e1t, einf, et = (symbol(s, laurent=True) for s in ("e0", "e1t", "einf", "et"))
    return ParamsV(e0, e1t, einf), et


def monodromy_v_map(direction: int = 1, params: Optional[ParamsV] = None) -> RationalMap:
    params = params or wild_symbols()[0]
    P = tuple(symbol(s) for s in V_COORDS)
    return RationalMap.build(V_COORDS, monodromy_v(P, params, direction), {}, "gt1^2" if direction > 0 else "g1t^2")


def wild_g0t_sq_map(direction: int = 1, params: Optional[ParamsV] = None, et=None) -> RationalMap:
    """The composed rational map Phi^-1 o g_0t^{+-2} o Phi in (X0, Wt, U1)."""
    if params is None or et is None:
        sp, se = wild_symbols()
        params = params or sp
        et = se if et is None else et
    cp = ConfluentParams(params.e0, params.e1t, params.einf, et, -params.e1t / et)
    P = tuple(symbol(s) for s in V_COORDS)
    X = phi_forward(P, cp)
    if direction > 0:
        Y = explicit_g2("0t", X, cp.vi).point
    else:
        Y = apply_word("gt0^2", X, cp.vi).point
    num, den = u1_formulas(Y, cp)[0]
    U = RationalExpression(num, den)
    W = cp.et * Y[1] - (cp.et / cp.e1) * U
    return RationalMap.build(V_COORDS, (Y[0], W, U), {}, "g0t^2(nu)" if direction > 0 else "gt0^2(nu)")


def factor_identity_sides(params: Optional[ParamsV] = None, et=None):
    """(F~ o g~_0t^2(nu), factor * F~) symbolically."""
    if params is None or et is None:
        sp, se = wild_symbols()
        params = params or sp
        et = se if et is None else et
    m = wild_g0t_sq_map(1, params, et)
    P = tuple(symbol(s) for s in V_COORDS)
    Ft = fricke_v(P, params)
    lhs = m.pullback(Ft)
    cp = ConfluentParams(params.e0, params.e1t, params.einf, et, -params.e1t / et)
    nu, ee = et * et, params.e1t
    base = P[0] + ee / nu + nu / ee
    F0 = fricke_partials(phi_forward(P, cp), cp.vi)[0]
    rhs = as_rational(base) / as_rational(base - F0) * Ft
    return lhs, rhs


def flip_et(m: RationalMap) -> RationalMap:
    """Substitute et -> -et in every output."""
    sub = {"et": -symbol("et", laurent=True)}
    return RationalMap(m.inputs, tuple(as_rational(o.subs(sub)) for o in m.outputs), m.param_action, m.name)


def odd_et_terms(m: RationalMap) -> int:
    """Number of monomials with an odd power of et after bringing outputs to a
    common form num/den; zero means the map depends on nu = et^2 only."""
    from .poly import iter_terms

    count = 0
    for o in m.outputs:
        for poly in (o.num, o.den):
            for _, mono in iter_terms(poly):
                if mono.get("et", 0) % 2:
                    count += 1
    return count


# --- torus fields and flows --------------------------------------------------------

def torus_field(which: str, P: Sequence[object], params: ParamsV):
    X0, W, U = P
    G0, GW, GU = fricke_v_partials(P, params)
    if which == "U":
        return (-GW / U, G0 / U, 0 * U)
    if which == "W":
        return (-GU / W, 0 * W, G0 / W)
    raise ValueError("which must be 'U' or 'W'")


def printed_torus_field(which: str, P, params: ParamsV):
    """The fields exactly as displayed (the U-field has the opposite sign)."""
    f = torus_field(which, P, params)
    return tuple(-x for x in f) if which == "U" else f


def field_tangency(which: str, params: Optional[ParamsV] = None):
    """dF~ . field as a symbolic expression (identically zero)."""
    params = params or wild_symbols()[0]
    P = tuple(symbol(s) for s in V_COORDS)
    f = torus_field(which, P, params)
    g = fricke_v_partials(P, params)
    return sum((as_rational(a) * b for a, b in zip(f, g)), as_rational(0))


@dataclass(frozen=True)
class TorusFlowSpec:
    which: str
    nu: complex
    log_branch: int = 0
    tol: float = 1e-10
    max_steps: int = 1_000_000

    def time(self) -> complex:
        if self.nu == 0:
            raise AlgebraError("nu must be nonzero")
        return cmath.log(complex(self.nu)) + 2j * math.pi * self.log_branch


def _rk4(f, y, h):
    k1 = f(y)
    k2 = f(tuple(a + h / 2 * b for a, b in zip(y, k1)))
    k3 = f(tuple(a + h / 2 * b for a, b in zip(y, k2)))
    k4 = f(tuple(a + h * b for a, b in zip(y, k3)))
    return tuple(a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4))


def integrate(f, y0: Sequence[complex], T: complex, tol: float = 1e-10,
              max_steps: int = 1_000_000, guard: Optional[Callable] = None):
    """Integrate dy/dt = f(y) along the straight path t = s*T, s in [0, 1].

    Adaptive RK4 with step doubling.  The local error estimate is held below
    tol * h * (1 + |y|) (error per unit length), so the accumulated error over
    the whole path stays of order tol.
    """
    y = tuple(complex(v) for v in y0)
    if T == 0:
        return y, 0

    def g(v):
        return tuple(T * c for c in f(v))

    s, h, steps = 0.0, 0.05, 0
    while s < 1.0:
        if steps >= max_steps:
            raise IntegrationError("step limit reached", y)
        h = min(h, 1.0 - s)
        try:
            full = _rk4(g, y, h)
            half = _rk4(g, _rk4(g, y, h / 2), h / 2)
        except ZeroDivisionError as exc:
            raise IntegrationError("field is singular along the path", y) from exc
        err = max(abs(a - b) for a, b in zip(full, half)) / 15
        scale = 1 + max(abs(v) for v in half)
        steps += 1
        if err <= tol * h * scale or h < 1e-14:
            if h < 1e-14:
                raise IntegrationError("step size underflow", y)
            y = tuple(b + (b - a) / 15 for a, b in zip(full, half))
            s += h
            if guard is not None:
                guard(y)
        factor = 0.9 * (tol * h * scale / err) ** 0.25 if err > 0 else 4.0
        h *= min(4.0, max(0.1, factor))
    return y, steps


def torus_flow(P: Sequence[object], params: ParamsV, spec: TorusFlowSpec, inverse: bool = False):
    """tau_U(nu) or tau_W(nu) (or its inverse) applied to a numeric point."""
    num = ParamsV(complex(params.e0), complex(params.e1t), complex(params.einf))
    idx = 2 if spec.which == "U" else 1
    T = spec.time() * (-1 if inverse else 1)
    y0 = tuple(complex(v) for v in P)
    ref = abs(y0[idx])

    def guard(y):
        if abs(y[idx]) < 1e-12 * max(1.0, ref):
            raise IntegrationError(f"conserved coordinate {V_COORDS[idx]} crossed zero", y)

    if ref == 0:
        raise IntegrationError(f"{V_COORDS[idx]} vanishes at the start point", y0)
    y, _ = integrate(lambda v: torus_field(spec.which, v, num), y0, T, spec.tol, spec.max_steps, guard)
    return y


# --- Stokes operators ----------------------------------------------------------------

def sigma(P, params: ParamsV, nu, branch: int = 0, tol: float = 1e-10):
    """tau_U(nu)^-1 o g~_t0^2(nu)."""
    Q = wild_g0t_sq(P, params, nu, direction=-1)
    return torus_flow(Q, params, TorusFlowSpec("U", nu, branch, tol), inverse=True)


def sigma_prime(P, params: ParamsV, nu, branch: int = 0, tol: float = 1e-10):
    """tau_W(nu) o g~_t1^2 o g~_0t^2(nu)."""
    Q = monodromy_v(wild_g0t_sq(P, params, nu, direction=1), params, 1)
    return torus_flow(Q, params, TorusFlowSpec("W", nu, branch, tol))


def _dist(a, b) -> float:
    return max(abs(complex(x) - complex(y)) for x, y in zip(a, b))


def _rel(a, b) -> float:
    return _dist(a, b) / max(1.0, max(abs(complex(x)) for x in b))


@dataclass
class SigmaReport:
    nus: Tuple[complex, ...]
    points: int
    nu_independence: float
    sigma_prime_sigma: float
    display_consistency: float
    skipped: int = 0


def extract_sigma(params: ParamsV, nus: Sequence[complex], points: Sequence[Sequence[complex]],
                  tol: float = 1e-10):
    """Evaluate sigma and sigma' at each point for every nu; report residuals
    (relative, max over points) of nu-independence, sigma' o sigma = g~_t1^2 and
    tau_W^-1 o sigma' = sigma' o tau_U^-1."""
    sig_vals, sigp_vals = [], []
    worst_ind = worst_comp = worst_disp = 0.0
    skipped = 0
    used = 0
    for P in points:
        try:
            s = [sigma(P, params, nu, tol=tol) for nu in nus]
            sp = [sigma_prime(P, params, nu, tol=tol) for nu in nus]
            comp = sigma_prime(s[0], params, nus[0], tol=tol)
            lhs = torus_flow(sp[0], params, TorusFlowSpec("W", nus[0], tol=tol), inverse=True)
            rhs = sigma_prime(torus_flow(P, params, TorusFlowSpec("U", nus[0], tol=tol), inverse=True),
                              params, nus[0], tol=tol)
        except AlgebraError:
            skipped += 1
            continue
        used += 1
        sig_vals.append(s)
        sigp_vals.append(sp)
        for k in range(1, len(nus)):
            worst_ind = max(worst_ind, _rel(s[k], s[0]), _rel(sp[k], sp[0]))
        worst_comp = max(worst_comp, _rel(comp, monodromy_v(P, params, 1)))
        worst_disp = max(worst_disp, _rel(lhs, rhs))
    rep = SigmaReport(tuple(nus), used, worst_ind, worst_comp, worst_disp, skipped)
    return sig_vals, sigp_vals, rep


def _exact_copy(z):
    """The binary value of a complex float as an exact Gaussian rational."""
    z = complex(z)
    return normalize(GaussianRational(Fraction(z.real), Fraction(z.imag)))


def nu_derivative_check(params: ParamsV, nu, P, which: str = "U", h: Optional[float] = None) -> float:
    """Relative residual between a central difference in nu and the torus field.

    U: (nu d/dnu g~_t0^2(nu)) o g~_0t^2(nu) at P.
    W: -(nu d/dnu (g~_t1^2 o g~_0t^2(nu))) o g~_t0^2(nu) o g~_1t^2 at P.

    The family is evaluated in exact arithmetic at inputs rounded once to
    Gaussian rationals (with e_t = sqrt(nu +- h) rounded the same way), so the
    difference quotient carries truncation error only; in floating point the
    composition Phi^-1 o g o Phi loses about 1e-11 and a step of 1e-5 would
    amplify that to ~1e-6.
    """
    nu = complex(nu)
    h = 1e-5 * abs(nu) if h is None else h
    ex = ParamsV(*(_exact_copy(x) for x in (params.e0, params.e1t, params.einf)))
    etc = _exact_copy(cmath.sqrt(nu))
    Pe = tuple(_exact_copy(x) for x in P)
    if which == "U":
        Q = wild_g0t_sq(Pe, ex, et=etc, direction=1)

        def fam(et):
            return wild_g0t_sq(Q, ex, et=et, direction=-1)
        sign = 1
    elif which == "W":
        Q = wild_g0t_sq(monodromy_v(Pe, ex, -1), ex, et=etc, direction=-1)

        def fam(et):
            return monodromy_v(wild_g0t_sq(Q, ex, et=et, direction=1), ex, 1)
        sign = -1
    else:
        raise ValueError("which must be 'U' or 'W'")
    up, dn = _exact_copy(cmath.sqrt(nu + h)), _exact_copy(cmath.sqrt(nu - h))
    step = up * up - dn * dn
    nu_mid = etc * etc
    fd = tuple(complex(sign * nu_mid * (a - b) / step) for a, b in zip(fam(up), fam(dn)))
    exact = torus_field(which, Pe, ex)
    exact = tuple(complex(x) for x in exact)
    return _dist(fd, exact) / max(1e-300, max(abs(x) for x in exact))


# --- group sanity -------------------------------------------------------------------

def short_relations(params: ParamsV, nu, points: Sequence[Sequence[complex]], max_len: int = 4,
                    tol: float = 1e-8) -> List[str]:
    """Reduced words of length <= max_len in a = g~_t1^2, b = g~_0t^2(nu) (A, B
    inverses) that fix every sample point.  Γ(2) is free on a, b, so the
    result should be empty."""
    maps = {
        "a": lambda P: monodromy_v(P, params, 1),
        "A": lambda P: monodromy_v(P, params, -1),
        "b": lambda P: wild_g0t_sq(P, params, nu, 1),
        "B": lambda P: wild_g0t_sq(P, params, nu, -1),
    }
    inv = {"a": "A", "A": "a", "b": "B", "B": "b"}
    found = []
    for n in range(1, max_len + 1):
        for word in itertools.product("aAbB", repeat=n):
            if any(inv[x] == y for x, y in zip(word, word[1:])):
                continue
            fixes_all = True
            for P in points:
                Q = P
                try:
                    for letter in word:
                        Q = maps[letter](Q)
                except AlgebraError:
                    fixes_all = False
                    break
                if _rel(Q, P) > tol:
                    fixes_all = False
                    break
            if fixes_all:
                found.append("".join(word))
    return found


# --- orbits ----------------------------------------------------------------------------

V_LETTERS = ("gt1^2", "g1t^2", "g0t^2", "gt0^2")


def apply_v_word(word: str, P, params: ParamsV, nu=None):
    """Left-to-right word over gt1^2, g1t^2, g0t^2 (nu), gt0^2 (nu)."""
    Q = P
    for tok in (t.strip() for t in word.split(",") if t.strip()):
        if tok == "gt1^2":
            Q = monodromy_v(Q, params, 1)
        elif tok == "g1t^2":
            Q = monodromy_v(Q, params, -1)
        elif tok == "g0t^2":
            Q = wild_g0t_sq(Q, params, nu, 1)
        elif tok == "gt0^2":
            Q = wild_g0t_sq(Q, params, nu, -1)
        else:
            raise ValueError(f"unknown S_V letter {tok!r}; expected one of {', '.join(V_LETTERS)}")
    return Q


@dataclass
class OrbitRecord:
    surface: str
    start: Tuple[complex, complex, complex]
    word: str
    iterates: List[Tuple[complex, complex, complex]] = field(default_factory=list)
    norms: List[float] = field(default_factory=list)
    classification: str = "bounded-unresolved"
    period: Optional[int] = None
    note: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iter", "coord1", "coord2", "coord3", "norm"])
        for k, (P, n) in enumerate(zip(self.iterates, self.norms)):
            w.writerow([k] + [_fmt_complex(x) for x in P] + [repr(n)])
        label = self.classification if self.period is None else f"{self.classification}({self.period})"
        w.writerow(["# classification", label, self.note, "", ""])
        return buf.getvalue()


def _fmt_complex(z) -> str:
    z = complex(z)
    return f"{z.real!r},{z.imag!r}"


def orbit_run(surface: str, P0: Sequence[object], params, word: str, max_iter: int = 1000,
              escape_radius: float = 1e8, match_tol: float = 1e-9, nu=None,
              generators: Optional[Sequence[str]] = None) -> OrbitRecord:
    """Iterate a word on S_VI (params: ParamsVI) or S_V (params: ParamsV).

    Classification: fixed if every generator moves the start by < match_tol;
    periodic(p) on first return to the start within match_tol; escaping once
    the norm exceeds escape_radius; otherwise bounded-unresolved.
    """
    state = {"params": params}
    if surface == "vi":
        def step(Q):
            # words may permute the parameters; iterate with the current ones
            res = apply_word(word, Q, state["params"])
            state["params"] = res.params
            return res.point
        gens = [lambda Q, g=g: apply_word(g, Q, params).point for g in (generators or [word])]
    elif surface == "v":
        step = lambda Q: apply_v_word(word, Q, params, nu)
        gens = [lambda Q, g=g: apply_v_word(g, Q, params, nu) for g in (generators or [word])]
    else:
        raise ValueError("surface must be 'vi' or 'v'")
    P0 = tuple(complex(x) for x in P0)
    rec = OrbitRecord(surface, P0, word)

    def norm(Q):
        return math.sqrt(sum(abs(x) ** 2 for x in Q))

    rec.iterates.append(P0)
    rec.norms.append(norm(P0))
    try:
        if all(_dist(g(P0), P0) < match_tol for g in gens):
            rec.classification = "fixed"
            rec.period = None
            return rec
    except AlgebraError as exc:
        rec.note = f"indeterminate: {exc}"
        return rec
    Q = P0
    for k in range(1, max_iter + 1):
        try:
            Q = tuple(complex(x) for x in step(Q))
        except (AlgebraError, ZeroDivisionError, OverflowError) as exc:
            rec.note = f"indeterminate at iteration {k}: {exc}"
            return rec
        n = norm(Q)
        rec.iterates.append(Q)
        rec.norms.append(n)
        if not math.isfinite(n) or n > escape_radius:
            rec.classification = "escaping"
            return rec
        if _dist(Q, P0) < match_tol and state["params"] == params:
            rec.classification = "periodic"
            rec.period = k
            return rec
    return rec


def classification_consistent(rec: OrbitRecord, escape_radius: float, match_tol: float) -> bool:
    """Audit a stored record against its own iterates and thresholds."""
    if rec.classification == "escaping":
        return rec.norms[-1] > escape_radius or not math.isfinite(rec.norms[-1])
    if any(n > escape_radius for n in rec.norms):
        return False
    if rec.classification == "periodic":
        return rec.period is not None and _dist(rec.iterates[rec.period], rec.start) < match_tol
    return True


def sample_points_v(params: ParamsV, n: int, seed: int, radius: float = 2.0):
    return [sample_point_v(params, seed + k, radius) for k in range(n)]
