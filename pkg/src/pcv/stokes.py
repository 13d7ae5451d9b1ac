"""Stokes data of the 3x3 linear system and its confluent limit.

Matrices are nested tuples with duck-typed entries, so every function runs
on exact Gaussian rationals, symbolic Laurent polynomials, or complex
numbers.  Indices are ordered (0, t, 1); S_ij = I + s_ij E_ij and
N = diag(e0^2, et^2, e1^2).
"""
from __future__ import annotations

import cmath
import json
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .charvar_vi import a_from_e
from .confluence import ConfluentParams, OnSingularLine
from .scalar import I, AlgebraError, GaussianRational, is_exact, lift, normalize
from .serialize import decode_scalar, encode_scalar

Matrix = Tuple[Tuple[object, ...], ...]

IDX = {"0": 0, "t": 1, "1": 2}
KEYS = ("0t", "t0", "t1", "1t", "10", "01")


# --- small matrix toolkit ----------------------------------------------------

def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def eye(n: int) -> Matrix:
    return mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def diag(*d) -> Matrix:
    n = len(d)
    return mat([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])


def mul(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        n, k, p = len(out), len(m), len(m[0])
        out = mat([[sum((out[i][l] * m[l][j] for l in range(k)), 0) for j in range(p)] for i in range(n)])
    return out


def sub(a: Matrix, b: Matrix) -> Matrix:
    return mat([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def trace(m: Matrix):
    return sum((m[i][i] for i in range(len(m))), 0)


def det(m: Matrix):
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if len(m) == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    raise ValueError("only 2x2 and 3x3 matrices are supported")


def minor_sum(m: Matrix):
    """Sum of the principal 2x2 minors (second elementary symmetric function)."""
    n = len(m)
    return sum((m[i][i] * m[j][j] - m[i][j] * m[j][i] for i in range(n) for j in range(i + 1, n)), 0)


def inverse(m: Matrix) -> Matrix:
    d = lift(det(m))
    if is_exact(d) and d == 0:
        raise AlgebraError("singular matrix")
    n = len(m)
    if n == 2:
        return mat([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            cof[i][j] = (-1) ** (i + j) * (m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]])
    return mat([[cof[j][i] / d for j in range(3)] for i in range(3)])


def elementary(key: str, s, n: int = 3) -> Matrix:
    """I + s E_ij for key "ij"."""
    i, j = IDX[key[0]], IDX[key[1]]
    rows = [list(r) for r in eye(n)]
    rows[i][j] = s
    return mat(rows)


def _is_zero(x, tol) -> bool:
    if tol is None:
        return x == 0
    return abs(complex(x)) <= tol


# --- Stokes data -------------------------------------------------------------

@dataclass(frozen=True)
class StokesDataVI:
    s: Mapping[str, object]
    e0: object
    et: object
    e1: object
    einf: Optional[object] = None

    def __post_init__(self):
        missing = [k for k in KEYS if k not in self.s]
        if missing:
            raise ValueError(f"missing Stokes coefficients: {', '.join(missing)}")
        object.__setattr__(self, "s", {k: lift(self.s[k]) for k in KEYS})
        for name in ("e0", "et", "e1"):
            v = lift(getattr(self, name))
            if is_exact(v) and v == 0:
                raise AlgebraError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)
        if self.einf is not None:
            object.__setattr__(self, "einf", lift(self.einf))

    @property
    def e(self) -> Tuple[object, object, object]:
        return (self.e0, self.et, self.e1)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in list(self.s.values()) + list(self.e))

    def S(self, key: str) -> Matrix:
        return elementary(key, self.s[key])

    def N(self) -> Matrix:
        return diag(*(x * x for x in self.e))

    def N_at(self, l: str) -> Matrix:
        d = [1, 1, 1]
        d[IDX[l]] = self.e[IDX[l]] ** 2
        return diag(*d)

    def conjugate(self, d: Sequence[object]) -> "StokesDataVI":
        """Simultaneous conjugation by diag(d): s_ij -> (d_i/d_j) s_ij."""
        s = {k: self.s[k] * d[IDX[k[0]]] / d[IDX[k[1]]] for k in KEYS}
        return replace(self, s=s)

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {"s": {k: encode_scalar(self.s[k]) for k in KEYS},
                                  "e": {"0": encode_scalar(self.e0), "t": encode_scalar(self.et),
                                        "1": encode_scalar(self.e1)}}
        if self.einf is not None:
            out["e"]["inf"] = encode_scalar(self.einf)
        return out

    @staticmethod
    def from_json(obj) -> "StokesDataVI":
        """Read {"s": {...}, "e": {...}}; exact and numeric values may not be mixed."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            s_raw, e_raw = obj["s"], obj["e"]
            s = {k: decode_scalar(s_raw[k]) for k in KEYS}
            e = [decode_scalar(e_raw[k]) for k in ("0", "t", "1")]
            einf = decode_scalar(e_raw["inf"]) if "inf" in e_raw else None
        except (KeyError, TypeError) as exc:
            raise ValueError(f"Stokes data is missing field {exc}") from exc
        vals = list(s.values()) + e + ([einf] if einf is not None else [])
        if len({is_exact(v) for v in vals}) > 1:
            raise AlgebraError("exact and numeric scalars cannot be mixed")
        return StokesDataVI(s, *e, einf=einf)


def invariants(d: StokesDataVI) -> Tuple[object, object, object, object, object]:
    """The five products unchanged by diagonal conjugation."""
    s = d.s
    return (s["0t"] * s["t0"], s["t1"] * s["1t"], s["10"] * s["01"],
            s["0t"] * s["t1"] * s["10"], s["1t"] * s["t0"] * s["01"])


def invariant_relation(d: StokesDataVI):
    """(s0t st0)(st1 s1t)(s10 s01) - (s0t st1 s10)(s1t st0 s01); zero identically."""
    p0, p1, p2, q0, q1 = invariants(d)
    return p0 * p1 * p2 - q0 * q1


# --- monodromy and traces ----------------------------------------------------

@dataclass(frozen=True)
class MonodromyVI:
    M0: Matrix
    Mt: Matrix
    M1: Matrix
    Minf_inv: Matrix
    E: object
    Eprime: object


def monodromy_from_stokes(d: StokesDataVI) -> MonodromyVI:
    S = d.S
    M0 = mul(d.N_at("0"), S("01"), S("0t"))
    Mt = mul(inverse(d.N_at("1")), S("t0"), S("t1"), d.N_at("t"), d.N_at("1"))
    M1 = mul(S("1t"), S("10"), d.N_at("1"))
    Minf_inv = mul(S("1t"), S("10"), S("t0"), S("t1"), d.N(), S("01"), S("0t"))
    return MonodromyVI(M0, Mt, M1, Minf_inv, trace(Minf_inv), minor_sum(Minf_inv))


def admissibility(d: StokesDataVI):
    """E' - E + 1 - (e0 et e1)^2, i.e. -det(Minf^-1 - I); zero when 1 is an eigenvalue."""
    m = monodromy_from_stokes(d)
    p = d.e0 * d.et * d.e1
    return m.Eprime - m.E + 1 - p * p


def E_display(d: StokesDataVI, X: Sequence[object]):
    """Trace of Minf^-1 rewritten through the trace coordinates."""
    e0, et, e1 = d.e
    s = d.s
    return (et * e1 * X[0] + e0 * e1 * X[1] + e0 * et * X[2]
            + e0 * e0 * s["1t"] * s["t0"] * s["01"] - e0 * e0 - et * et - e1 * e1)


def Eprime_display(d: StokesDataVI, X: Sequence[object]):
    """Minor sum of Minf^-1 rewritten through the trace coordinates."""
    e0, et, e1 = d.e
    s = d.s
    return (e0 * e0 * et * e1 * X[0] + et * et * e0 * e1 * X[1] + e1 * e1 * e0 * et * X[2]
            - e0 * e0 * e1 * e1 * s["0t"] * s["t1"] * s["10"]
            - e0 * e0 * et * et - et * et * e1 * e1 - e1 * e1 * e0 * e0)


def ainf_from_E(d: StokesDataVI, E):
    return (E - 1) / (d.e0 * d.et * d.e1)


def einf_from_ainf(ainf, hint=None) -> complex:
    """Root of e^2 - ainf e + 1; closest to ``hint`` or else the one with |e| >= 1."""
    a = complex(ainf)
    r = cmath.sqrt(a * a - 4)
    roots = ((a + r) / 2, (a - r) / 2)
    if hint is not None:
        return min(roots, key=lambda z: abs(z - complex(hint)))
    return max(roots, key=abs)


def einf_of(d: StokesDataVI, hint=None):
    """e_inf of the data: the stored value when present, else derived from E."""
    if d.einf is not None:
        return d.einf
    return einf_from_ainf(ainf_from_E(d, monodromy_from_stokes(d).E), hint)


def traces_from_stokes(d: StokesDataVI):
    """(X0, Xt, X1, (a0, at, a1, ainf)) with ainf = (E - 1)/(e0 et e1)."""
    e0, et, e1 = d.e
    s = d.s
    X0 = (et * et + e1 * e1 + e1 * e1 * s["t1"] * s["1t"]) / (et * e1)
    Xt = (e0 * e0 + e1 * e1 + e0 * e0 * s["10"] * s["01"]) / (e0 * e1)
    X1 = (e0 * e0 + et * et + e0 * e0 * s["0t"] * s["t0"]) / (e0 * et)
    E = monodromy_from_stokes(d).E
    a = a_from_e(d.e) + (ainf_from_E(d, E),)
    return X0, Xt, X1, a


# --- random admissible data ----------------------------------------------------

def _rand_gauss(rng: random.Random, bound: int = 9):
    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return normalize(GaussianRational(q(), q()))


def _rand_nonzero(rng: random.Random):
    while True:
        x = _rand_gauss(rng)
        if x != 0:
            return x


def random_admissible(seed: int, with_einf: bool = True) -> StokesDataVI:
    """Exact admissible data over Q(i).

    Without ``with_einf`` five s-values and the e's are drawn and s10 is
    solved from the admissibility condition (linear in s10).  With it e_inf
    is drawn too and (s10, s1t) solve the two conditions
    E = 1 + e0 et e1 (einf + 1/einf) and admissibility; both are affine in
    (s10, s1t) without a cross term.
    """
    rng = random.Random(seed)
    for _ in range(100):
        e = [_rand_nonzero(rng) for _ in range(3)]
        s = {k: _rand_gauss(rng) for k in KEYS}
        if not with_einf:
            def res(x):
                return admissibility(StokesDataVI({**s, "10": x}, *e))

            r0, r1 = res(0), res(1)
            if r1 == r0:
                continue
            d = StokesDataVI({**s, "10": -r0 / (r1 - r0)}, *e)
        else:
            einf = _rand_nonzero(rng)
            p = e[0] * e[1] * e[2]
            target = 1 + p * (einf + 1 / einf)

            def res2(x, y):
                dd = StokesDataVI({**s, "10": x, "1t": y}, *e)
                return (monodromy_from_stokes(dd).E - target, admissibility(dd))

            c = res2(0, 0)
            ax = [u - v for u, v in zip(res2(1, 0), c)]
            ay = [u - v for u, v in zip(res2(0, 1), c)]
            dt = ax[0] * ay[1] - ax[1] * ay[0]
            if dt == 0:
                continue
            x = (-c[0] * ay[1] + c[1] * ay[0]) / dt
            y = (-ax[0] * c[1] + ax[1] * c[0]) / dt
            d = StokesDataVI({**s, "10": x, "1t": y}, *e, einf=einf)
        if d.s["1t"] != 0 and admissibility(d) == 0:
            return d
    raise AlgebraError("could not draw admissible Stokes data")


# --- braid action ------------------------------------------------------------

P0T = mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
PT1 = mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


class DegenerateStokesData(AlgebraError):
    """A matrix that must be unipotent elementary is not."""


def _read(m: Matrix, key: str, tol) -> object:
    i, j = IDX[key[0]], IDX[key[1]]
    for r in range(3):
        for c in range(3):
            if (r, c) == (i, j):
                continue
            want = 1 if r == c else 0
            if not _is_zero(m[r][c] - want, tol):
                raise DegenerateStokesData(f"matrix for s_{key} is not of the form I + s E_{key}")
    return m[i][j]


def braid_on_stokes(braid: str, d: StokesDataVI, tol: Optional[float] = None) -> StokesDataVI:
    """Action of beta_0t or beta_t1 on Stokes data (see the ledger for beta_0t).

    Each new coefficient is read from a conjugated matrix, after checking that
    the matrix is elementary unipotent in the expected position.
    """
    if tol is None and not d.exact:
        tol = 1e-9
    S = d.S
    inv = inverse
    N = d.N()
    e0, et, e1 = d.e
    if braid in ("b0t", "beta_0t", "0t"):
        P = P0T
        Sp = mul(inv(N), S("t1"), N)
        table = {
            "0t": S("t0"),
            "1t": mul(inv(S("t0")), S("1t"), S("10"), S("t0"), inv(S("1t"))),
            "10": S("1t"),
            "t0": mul(N, S("0t"), inv(N)),
            "t1": mul(N, inv(S("0t")), Sp, S("01"), S("0t"), inv(Sp), inv(N)),
            "01": Sp,
        }
        e = (et, e0, e1)
    elif braid in ("bt1", "beta_t1", "t1"):
        P = PT1
        table = {
            "1t": S("t1"),
            "10": mul(inv(S("t1")), S("10"), S("t0"), S("t1"), inv(S("10"))),
            "t0": S("10"),
            "t1": mul(N, S("1t"), inv(N)),
            "01": mul(inv(S("1t")), S("01"), S("0t"), S("1t"), inv(S("01"))),
            "0t": S("01"),
        }
        e = (e0, e1, et)
    else:
        raise ValueError("braid must be 'b0t' or 'bt1'")
    new = {k: _read(mul(P, m, P), k, tol) for k, m in table.items()}
    return StokesDataVI(new, *e, einf=d.einf)


# --- confluent (outer) Stokes data ---------------------------------------------

@dataclass(frozen=True)
class OuterStokesData:
    s0t: object
    s01: object
    st0: object
    s10: object
    X0: object
    e0: object
    et: object
    e1: object
    einf: Optional[object] = None

    @property
    def ete1(self):
        return self.et * self.e1


def confluent_stokes(d: StokesDataVI):
    """Outer Stokes data and the point (X0, Wt, U1) of S_V."""
    s = d.s
    e0, et, e1 = d.e
    if (s["1t"] == 0) if is_exact(s["1t"]) else abs(complex(s["1t"])) < 1e-14:
        raise OnSingularLine("s_1t = 0: the data lies on the singular line L0")
    i = I if d.exact else 1j
    o = OuterStokesData(
        s0t=s["0t"] + s["01"] * s["1t"],
        s01=-i * (e1 / et) * s["0t"],
        st0=s["t0"] + s["10"] / s["1t"],
        s10=-i * (et / e1) * s["10"] / s["1t"],
        X0=traces_from_stokes(d)[0],
        e0=e0, et=et, e1=e1, einf=d.einf,
    )
    W = i * e0 * o.s10 * o.s0t + et * e1 / e0
    U = e0 * o.s10 * o.s01 + e0
    return o, (o.X0, W, U)


def confluent_params_of(d: StokesDataVI, hint=None) -> ConfluentParams:
    """Confluence parameters (e~1 = -et e1) matching the data."""
    einf = einf_of(d, hint)
    return ConfluentParams(d.e0, -d.et * d.e1, einf, d.et, d.e1)


def outer_matrices(o: OuterStokesData, exact: bool = True):
    i = I if exact else 1j
    S0 = mat([[1, o.s0t, o.s01], [0, 1, 0], [0, 0, 1]])
    St = mat([[1, 0, 0], [0, o.X0, -i], [0, -i, 0]])
    S1 = mat([[1, 0, 0], [o.st0, 1, 0], [o.s10, 0, 1]])
    N = diag(o.e0 * o.e0, o.ete1, o.ete1)
    return S0, St, S1, N


def assemble_outer_monodromy(o: OuterStokesData):
    """(Minf~^-1 = S~1 S~t N~ S~0, trace, minor sum)."""
    exact = all(is_exact(v) for v in (o.s0t, o.s01, o.st0, o.s10, o.X0, o.e0, o.et, o.e1))
    S0, St, S1, N = outer_matrices(o, exact)
    M = mul(S1, St, N, S0)
    return M, trace(M), minor_sum(M)


def outer_closed_form(o: OuterStokesData, exact: bool = True) -> Matrix:
    i = I if exact else 1j
    q = o.e0 * o.e0
    p = o.ete1
    return mat([
        [q, q * o.s0t, q * o.s01],
        [q * o.st0, p * o.X0 + q * o.st0 * o.s0t, -i * p + q * o.st0 * o.s01],
        [q * o.s10, -i * p + q * o.s10 * o.s0t, q * o.s10 * o.s01],
    ])


def outer_E_display(o: OuterStokesData, W, U):
    return o.ete1 * o.X0 + o.e0 * U + o.e0 * o.e0 * o.s0t * o.st0


def outer_Eprime_display(o: OuterStokesData, W, U, exact: bool = True):
    i = I if exact else 1j
    p = o.ete1
    return o.e0 * p * o.X0 * U + o.e0 * p * W + i * o.e0 * o.e0 * p * o.st0 * o.s01


# --- 2x2 linear confluence model ----------------------------------------------

@dataclass(frozen=True)
class LinearConfluenceDemo:
    lam0: complex
    lam1: complex
    eps0: complex
    SL: Matrix
    SR: Matrix
    kappa: Optional[complex] = None

    def N0(self, eps) -> Matrix:
        x = cmath.exp(-2j * cmath.pi * self.lam0 / eps)
        return diag(x, 1 / x)

    def N(self) -> Matrix:
        x = cmath.exp(2j * cmath.pi * self.lam1)
        return diag(x, 1 / x)

    def matching_kappa(self) -> complex:
        """kappa with E(kappa) = N N0(eps0)^-1."""
        return cmath.exp(2j * cmath.pi * (self.lam1 + self.lam0 / self.eps0))


def torus_element(kappa) -> Matrix:
    return diag(kappa, 1 / kappa)


@dataclass(frozen=True)
class LinearConfluenceResult:
    eps_n: complex
    N0_n: Matrix
    ML: Matrix
    MR: Matrix
    wild_L: Matrix
    wild_R: Matrix
    kappa: complex


def linear_confluence_demo(demo: LinearConfluenceDemo, n: int) -> LinearConfluenceResult:
    """Monodromy pair at eps_n and the wild pair (E(k)^-1 N S_L, S_R E(k))."""
    if demo.lam0 == 0 or demo.eps0 == 0:
        raise AlgebraError("lambda0 and eps0 must be nonzero")
    eps_n = 1 / (1 / demo.eps0 + n / demo.lam0)
    N0 = demo.N0(eps_n)
    ML = mul(N0, demo.SL)
    MR = mul(demo.SR, demo.N(), inverse(N0))
    kappa = demo.matching_kappa() if demo.kappa is None else demo.kappa
    Ek = torus_element(kappa)
    return LinearConfluenceResult(eps_n, N0, ML, MR, mul(inverse(Ek), demo.N(), demo.SL), mul(demo.SR, Ek), kappa)


def max_abs_diff(a: Matrix, b: Matrix) -> float:
    return max(abs(complex(x) - complex(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb))
