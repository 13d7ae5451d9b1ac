"""Verification suites: exact identity checks plus the numeric wild-dynamics checks.

Each suite returns a ``SuiteReport``; a check line reads
"<identity>: PASS" (or FAIL / INCONCLUSIVE) followed by a short statement of
what is being verified.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import braid_vi, charvar_v, charvar_vi, confluence, stokes, wild
from .identity import Verdict, default_seed, identity_test, is_identity, maps_equal
from .poly import symbol
from .rational import as_rational
from .scalar import GaussianRational

SUITES = ("fricke-vi", "braid-relations", "confluence", "fricke-v", "wild", "stokes")
MUTATIONS = {"g0t-sign": {"g0t": "sign"}}


@dataclass
class Check:
    name: str
    about: str
    status: str  # PASS | FAIL | INCONCLUSIVE
    detail: str = ""

    def line(self) -> str:
        tail = f" [{self.detail}]" if self.detail else ""
        return f"{self.name}: {self.status}  -- {self.about}{tail}"


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, about: str, ok, detail: str = "") -> None:
        if isinstance(ok, Verdict):
            status = {"true": "PASS", "false": "FAIL", "inconclusive": "INCONCLUSIVE"}[ok.value]
            if ok.strategy == "randomized" and not detail:
                detail = f"randomized, seed {ok.seed}, {ok.points} points"
        else:
            status = "PASS" if ok else "FAIL"
        self.checks.append(Check(name, about, status, detail))

    @property
    def exit_code(self) -> int:
        if any(c.status == "FAIL" for c in self.checks):
            return 1
        if any(c.status == "INCONCLUSIVE" for c in self.checks):
            return 2
        return 0

    def lines(self) -> List[str]:
        return [f"# suite {self.suite} (seed {self.seed})"] + [c.line() for c in self.checks]

    def to_json(self):
        return {"suite": self.suite, "seed": self.seed, "exit_code": self.exit_code,
                "checks": [{"name": c.name, "about": c.about, "status": c.status, "detail": c.detail}
                           for c in self.checks]}


def _zero_poly(x) -> bool:
    return as_rational(x).is_zero()


def _rand_exact(rng: random.Random, bound: int = 9):
    while True:
        x = GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                             Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
        if x.norm() != 0:
            return x


# --- symplectic pullbacks -------------------------------------------------------

def _apply_jac(J, u):
    return tuple(sum(J[r][c] * u[c] for c in range(3)) for r in range(3))


def omega_defect_vi(gen: str, params: charvar_vi.ParamsVI, X) -> float:
    """|omega(g X)(J u, J v) - omega(X)(u, v)| relative, for a tangent basis u, v."""
    m = braid_vi.generator_map(gen, "e")
    vals = dict(zip(braid_vi.E_SYMBOLS, params.e))
    J = m.jacobian(X, vals)
    res = braid_vi.apply_generator(gen, X, params)
    u, v = charvar_vi.tangent_basis(X, params)
    before = charvar_vi.symplectic_pair(X, params, u, v)
    after = charvar_vi.symplectic_pair(res.point, res.params, _apply_jac(J, u), _apply_jac(J, v))
    return abs(after - before) / max(1.0, abs(before))


def omega_defect_phi(cp: confluence.ConfluentParams, P) -> float:
    """|omega(Phi P)(J u, J v) - omega~(P)(u, v)| relative."""
    m = confluence.phi_map()
    vals = {"e0": cp.e0, "einf": cp.einf, "et": cp.et, "e1": cp.e1}
    J = m.jacobian(P, vals)
    u, v = charvar_v.tangent_basis_v(P, cp.v)
    before = charvar_v.symplectic_pair_v(P, cp.v, u, v)
    X = confluence.phi_forward(P, cp)
    after = charvar_vi.symplectic_pair(X, cp.vi, _apply_jac(J, u), _apply_jac(J, v))
    return abs(after - before) / max(1.0, abs(before))


def numeric_params_vi(seed: int) -> charvar_vi.ParamsVI:
    rng = random.Random(seed)
    return charvar_vi.ParamsVI(*(cmath.rect(rng.uniform(0.6, 1.6), rng.uniform(-3, 3)) for _ in range(4)))


def numeric_confluent(seed: int) -> confluence.ConfluentParams:
    rng = random.Random(seed)
    z = [cmath.rect(rng.uniform(0.6, 1.6), rng.uniform(-3, 3)) for _ in range(4)]
    return confluence.confluent_params(e0=z[0], e1t=z[1], einf=z[2], et=z[3])


# --- suites ------------------------------------------------------------------------

def suite_fricke_vi(seed: int, n_points: int = 50, tol: float = 1e-9) -> SuiteReport:
    rep = SuiteReport("fricke-vi", seed)
    X = tuple(symbol(s) for s in braid_vi.INPUTS)
    p = braid_vi.param_symbols("e")
    F = charvar_vi.fricke(X, p)
    for k in charvar_vi.IDX:
        ok = all(_zero_poly(F - d) for d in charvar_vi.line_decompositions(X, p, k))
        rep.add(f"line decompositions k={k}", "F equals each of the four factorized forms", ok)
    rep.add("w a-form = e-form", "discriminant w(a) in a- and e-variables",
            identity_test(charvar_vi.w_a_form(p.a), charvar_vi.w_e_form(p.e)))
    rng = random.Random(seed)
    lam = symbol("lam")
    count_ok, all_zero = True, True
    for _ in range(3):
        pe = charvar_vi.ParamsVI(*(_rand_exact(rng) for _ in range(4)))
        lines = charvar_vi.lines_vi(pe)
        count_ok &= len(lines) == 24
        all_zero &= all(_zero_poly(charvar_vi.fricke(ln.point(lam), pe)) for ln in lines)
    rep.add("24 lines on S_VI", "each line substitutes to the zero polynomial", count_ok and all_zero)
    sing_ok = True
    for e in ((1, 3, 5, 7), (2, 3, 5, Fraction(1, 30)), (-1, 2, 3, 5)):
        pe = charvar_vi.ParamsVI(*e)
        pts = charvar_vi.singularities_vi(pe)
        sing_ok &= bool(pts) and all(all(v == 0 for v in charvar_vi.fricke_eval(s.location, pe)) for s in pts)
        sing_ok &= charvar_vi.singular_criterion(pe) == 0
    generic = charvar_vi.ParamsVI(2, 3, 5, 7)
    sing_ok &= charvar_vi.singularities_vi(generic) == [] and charvar_vi.singular_criterion(generic) != 0
    rep.add("singular points of S_VI", "listed points have F = 0 and zero gradient; generic parameters give none",
            sing_ok)
    worst = 0.0
    for k in range(n_points):
        pn = numeric_params_vi(seed + 7919 * k)
        Xn = charvar_vi.sample_point_vi(pn, seed + k)
        for gen in braid_vi.GENERATORS:
            worst = max(worst, omega_defect_vi(gen, pn, Xn))
    rep.add("g_ij^* omega = omega", "Poincare residue form preserved by all six generators",
            worst <= tol, f"max relative defect {worst:.2e} over {n_points} points")
    return rep


def suite_braid_relations(seed: int, mutate: Optional[Dict[str, str]] = None) -> SuiteReport:
    rep = SuiteReport("braid-relations", seed)
    rr = braid_vi.relations_report("a", mutate)
    about = {
        "g10 = gt0∘gt1∘g0t": "composition of generators",
        "g0t g1t g0t = g1t g0t g1t": "braid relation",
        "S²=id": "modular generator S = g_t1 o g_0t^2 is an involution",
        "(S∘T)³=id": "modular relation with T = g_t0",
    }
    for name, v in rr.verdicts.items():
        if name.startswith("F∘"):
            text = "generator preserves the Fricke cubic"
        elif name.endswith("explicit"):
            text = "closed form of the square agrees with the composed map"
        elif "∘" in name and name.endswith("=id") and name not in about:
            text = "generators g_ij and g_ji are mutually inverse"
        else:
            text = about.get(name, "")
        rep.add(name, text, v)
    for which in ("0t", "t1"):
        m = braid_vi.explicit_g2_map(which, "a")
        rep.add(f"F∘g{which}^2=F", "square preserves the Fricke cubic", braid_vi.preserves_fricke(m, "a"))
    return rep


def suite_confluence(seed: int, n_points: int = 50, tol: float = 1e-9) -> SuiteReport:
    rep = SuiteReport("confluence", seed)
    cp = confluence.symbolic_params()
    lhs, rhs = confluence.fricke_factor_sides(cp)
    rep.add("F∘Φ factor identity", "F o Phi = -(X0 - c) F~ / (et e1)", identity_test(lhs, rhs))
    P = tuple(symbol(s) for s in confluence.V_COORDS)
    Ft = charvar_v.fricke_v(P, cp.v)
    for name, (a, b) in zip(("F_X0", "F_Xt", "F_X1"), confluence.partial_transport_sides(cp)):
        rep.add(f"{name}∘Φ transport", "partial derivative transported through Phi (modulo F~)",
                identity_test(a, b, modulo=Ft, var="U1"))
    X = tuple(symbol(s) for s in confluence.VI_COORDS)
    F = charvar_vi.fricke(X, cp.vi)
    phi = confluence.phi_map(cp)
    for which in (1, 2):
        inv = confluence.phi_inverse_map(which, cp)
        comp = [as_rational(o.subs(dict(zip(confluence.V_COORDS, inv.outputs)))) for o in phi.outputs]
        ok = all(identity_test(c, x, modulo=F, var="X1") for c, x in zip(comp, X))
        rep.add(f"Φ∘Φ⁻¹=id (U1 formula {which})", "inverse map, modulo the cubic F", ok)
    (n1, d1), (n2, d2) = confluence.u1_formulas(X, cp)
    rep.add("U1 formulas agree", "the two expressions for U1 coincide modulo F",
            identity_test(as_rational(n1) / d1, as_rational(n2) / d2, modulo=F, var="X1"))
    inv = confluence.phi_inverse_map(1, cp)
    back = [as_rational(o.subs(dict(zip(confluence.VI_COORDS, phi.outputs)))) for o in inv.outputs]
    rep.add("Φ⁻¹∘Φ=id", "Phi^-1 o Phi is the identity on C^3",
            all(identity_test(b, x) for b, x in zip(back, P)))
    # indeterminacy exactly on L0
    rng = random.Random(seed)
    ok = True
    for _ in range(5):
        e0, einf, et, e1 = (_rand_exact(rng) for _ in range(4))
        ce = confluence.ConfluentParams(e0, -et * e1, einf, et, e1)
        lam = _rand_exact(rng)
        Xl = confluence.point_on_l0(ce, lam)
        try:
            confluence.phi_inverse(Xl, ce)
            ok = False
        except confluence.OnSingularLine:
            pass
        Xoff = (Xl[0], Xl[1] + 1, Xl[2])
        try:
            confluence.phi_inverse(Xoff, ce)
        except confluence.OnSingularLine:
            ok = False
    rep.add("Φ⁻¹ undefined exactly on L0", "phi_inverse raises on L0 and succeeds nearby", ok)
    worst = 0.0
    for k in range(n_points):
        cn = numeric_confluent(seed + 104729 * k)
        Pn = charvar_v.sample_point_v(cn.v, seed + k)
        worst = max(worst, omega_defect_phi(cn, Pn))
    rep.add("Φ^* ω = ω~", "Phi pulls back the residue form of S_VI to that of S_V",
            worst <= tol, f"max relative defect {worst:.2e} over {n_points} points")
    return rep


def suite_fricke_v(seed: int) -> SuiteReport:
    rep = SuiteReport("fricke-v", seed)
    e0, e1t, einf = (symbol(s, laurent=True) for s in ("e0", "e1t", "einf"))
    pv = charvar_v.ParamsV(e0, e1t, einf)
    P = tuple(symbol(s) for s in charvar_v.COORDS)
    Ft = charvar_v.fricke_v(P, pv)
    ok = all(_zero_poly(Ft - v) for v in charvar_v.decomposition_values(P, pv))
    rep.add("11 decompositions of F~", "F~ = A B + L1 L2 for every listed factorization", ok)
    rep.add("w~ a-form = e-form", "discriminant of S_V in a- and e-variables",
            identity_test(charvar_v.w_tilde_a_form(pv.a0, pv.a1t, pv.ainf),
                          charvar_v.w_tilde_e_form(e0, -e1t, einf)))
    rng = random.Random(seed)
    lam = symbol("lam")
    count_ok, zero_ok = True, True
    for _ in range(3):
        pe = charvar_v.ParamsV(*(_rand_exact(rng) for _ in range(3)))
        lines = charvar_v.lines_v(pe)
        count_ok &= len(lines) == 22
        zero_ok &= all(_zero_poly(charvar_v.fricke_v(ln.point(lam), pe)) for ln in lines)
    rep.add("22 lines on S_V", "each line substitutes to the zero polynomial", count_ok and zero_ok)
    sing_ok = True
    for e in ((1, 3, 5), (2, -6, 3), (2, Fraction(-1, 6), 3)):
        pe = charvar_v.ParamsV(*e)
        pts = charvar_v.singularities_v(pe)
        sing_ok &= bool(pts) and all(all(v == 0 for v in charvar_v.fricke_v_eval(s.location, pe)) for s in pts)
        sing_ok &= charvar_v.singular_criterion_v(pe) == 0
    generic = charvar_v.ParamsV(2, 3, 5)
    sing_ok &= charvar_v.singularities_v(generic) == [] and charvar_v.singular_criterion_v(generic) != 0
    rep.add("singular points of S_V", "listed points have F~ = 0 and zero gradient; generic parameters give none",
            sing_ok)
    return rep


def suite_wild(seed: int, n_points: int = 50, tol: float = 1e-8, numeric: bool = True) -> SuiteReport:
    rep = SuiteReport("wild", seed)
    pv, et = wild.wild_symbols()
    P = tuple(symbol(s) for s in wild.V_COORDS)
    Ft = charvar_v.fricke_v(P, pv)
    m = wild.monodromy_v_map(1, pv)
    rep.add("F~∘g~t1²=F~", "explicit wild monodromy preserves F~", identity_test(m.pullback(Ft), Ft))
    rep.add("g~t1²∘g~1t²=id", "the two explicit monodromies are inverse",
            is_identity(wild.monodromy_v_map(-1, pv) @ m))
    g = wild.wild_g0t_sq_map(1, pv, et)
    rep.add("g~0t²(ν) depends on ν=et² only", "no odd powers of et; invariant under et -> -et",
            wild.odd_et_terms(g) == 0 and bool(maps_equal(wild.flip_et(g), g)))
    lhs, rhs = wild.factor_identity_sides(pv, et)
    rep.add("F~∘g~0t²(ν) factor identity", "F~ o g~0t^2(nu) = base/(base - F_X0 o Phi) F~",
            identity_test(lhs, rhs))
    # half-monodromy: square equals the monodromy (symbolic in nu)
    nu = symbol("nu", laurent=True)
    h1, nu1 = wild.half_monodromy_wild(P, pv, nu, "t1")
    h2, _ = wild.half_monodromy_wild(h1, pv, nu1, "t1")
    target = wild.monodromy_v(P, pv, 1)
    rep.add("half-monodromy squared = g~t1²", "second iterate of the half-monodromy",
            all(identity_test(a, b) for a, b in zip(h2, target)))
    for which in ("U", "W"):
        rep.add(f"{which}-field tangent to S_V", "dF~ vanishes on the torus field",
                as_rational(wild.field_tangency(which, pv)).is_zero())
    if numeric:
        pn = charvar_v.ParamsV(cmath.rect(1.1, 0.4), cmath.rect(0.9, -1.3), cmath.rect(1.2, 2.1))
        nu0 = cmath.rect(1.2, 0.7)
        pts = wild.sample_points_v(pn, n_points, seed, radius=1.5)
        _, _, srep = wild.extract_sigma(pn, (nu0, 2 * nu0), pts)
        detail = f"{srep.points} points, {srep.skipped} skipped"
        rep.add("σ, σ′ independent of ν", "sigma at nu and 2 nu agree to 1e-8",
                srep.nu_independence <= tol and srep.points >= n_points, f"{srep.nu_independence:.2e}; {detail}")
        rep.add("σ′∘σ = g~t1²", "composition of the extracted operators is the monodromy",
                srep.sigma_prime_sigma <= tol, f"{srep.sigma_prime_sigma:.2e}")
        rep.add("τ_W⁻¹∘σ′ = σ′∘τ_U⁻¹", "displayed consistency of the operators",
                srep.display_consistency <= tol, f"{srep.display_consistency:.2e}")
    return rep


def suite_stokes(seed: int, n_data: int = 20) -> SuiteReport:
    rep = SuiteReport("stokes", seed)
    data = [stokes.random_admissible(seed + k) for k in range(n_data)]
    checks: Dict[str, bool] = {k: True for k in (
        "tr", "conj", "rel", "fricke", "E", "Ft", "route", "b0t", "bt1", "b0t2", "outer", "outer_det")}
    rng = random.Random(seed)
    for d in data:
        m = stokes.monodromy_from_stokes(d)
        checks["tr"] &= all(stokes.trace(M) == x * x + 2 for M, x in zip((m.M0, m.Mt, m.M1), d.e))
        dconj = d.conjugate([_rand_exact(rng) for _ in range(3)])
        checks["conj"] &= (stokes.invariants(dconj) == stokes.invariants(d)
                           and stokes.traces_from_stokes(dconj) == stokes.traces_from_stokes(d))
        checks["rel"] &= stokes.invariant_relation(d) == 0
        X0, Xt, X1, a = stokes.traces_from_stokes(d)
        X = (X0, Xt, X1)
        checks["fricke"] &= charvar_vi.fricke(X, a) == 0
        checks["E"] &= m.E == stokes.E_display(d, X) and m.Eprime == stokes.Eprime_display(d, X)
        o, Pv = stokes.confluent_stokes(d)
        cp = stokes.confluent_params_of(d)
        checks["Ft"] &= charvar_v.fricke_v(Pv, cp.v) == 0
        checks["route"] &= tuple(confluence.phi_inverse(X, cp)) == tuple(Pv)
        pvi = charvar_vi.ParamsVI(*d.e, d.einf)
        checks["b0t"] &= tuple(stokes.traces_from_stokes(stokes.braid_on_stokes("b0t", d))[:3]) == \
            braid_vi.apply_generator("gt0", X, pvi).point
        checks["bt1"] &= tuple(stokes.traces_from_stokes(stokes.braid_on_stokes("bt1", d))[:3]) == \
            braid_vi.apply_generator("g1t", X, pvi).point
        d2 = stokes.braid_on_stokes("b0t", stokes.braid_on_stokes("b0t", d))
        checks["b0t2"] &= tuple(stokes.traces_from_stokes(d2)[:3]) == braid_vi.apply_word("gt0^2", X, pvi).point
        M, E, Ep = stokes.assemble_outer_monodromy(o)
        checks["outer"] &= M == stokes.outer_closed_form(o)
        checks["outer_det"] &= stokes.det(stokes.sub(M, stokes.eye(3))) == 0
    rep.add("tr(M_i)=e_i²+2", "local monodromy traces", checks["tr"])
    rep.add("diagonal conjugation invariance", "five invariant products and traces unchanged", checks["conj"])
    rep.add("invariant product relation", "p0 p1 p2 = q0 q1 for the invariant products", checks["rel"])
    rep.add("traces satisfy the Fricke relation", "F(X, a) = 0 with a_inf = (E - 1)/(e0 et e1)", checks["fricke"])
    rep.add("E, E′ in trace coordinates", "trace and minor sum of M_inf^-1 rewritten via X", checks["E"])
    rep.add("confluent Stokes data on S_V", "F~(X0, Wt, U1) = 0", checks["Ft"])
    rep.add("Stokes route = Φ⁻¹ route", "confluent_stokes agrees with phi_inverse o traces", checks["route"])
    rep.add("β0t traces = g_t0", "braid on Stokes data matches the generator", checks["b0t"])
    rep.add("βt1 traces = g_1t", "braid on Stokes data matches the generator", checks["bt1"])
    rep.add("β0t twice = g_t0²", "composition of the braid on Stokes data", checks["b0t2"])
    rep.add("outer monodromy closed form", "S~1 S~t N~ S~0 entrywise", checks["outer"])
    rep.add("det(M~ - I)=0", "1 is an eigenvalue of the outer monodromy", checks["outer_det"])
    try:
        d = data[0]
        stokes.confluent_stokes(stokes.StokesDataVI({**d.s, "1t": 0}, *d.e))
        on_l0 = False
    except confluence.OnSingularLine:
        on_l0 = True
    rep.add("s_1t=0 is the line L0", "confluent_stokes raises on s_1t = 0", on_l0)
    rep.add("linear confluence demo", "N0(eps_n) constant and monodromy pair equals the wild pair",
            _demo_ok())
    return rep


def _demo_ok(tol: float = 1e-12) -> bool:
    SL = stokes.mat([[1, 0], [0.3 + 0.2j, 1]])
    SR = stokes.mat([[1, -0.7 + 0.1j], [0, 1]])
    demo = stokes.LinearConfluenceDemo(0.37 + 0.1j, 0.21 - 0.05j, 0.8 + 0.3j, SL, SR)
    N00 = demo.N0(demo.eps0)
    for n in range(1, 11):
        r = stokes.linear_confluence_demo(demo, n)
        scale = max(1.0, max(abs(x) for row in r.ML for x in row))
        if stokes.max_abs_diff(r.N0_n, N00) > tol * max(1.0, abs(N00[0][0]), abs(N00[1][1])):
            return False
        if stokes.max_abs_diff(r.ML, r.wild_L) > tol * scale or stokes.max_abs_diff(r.MR, r.wild_R) > tol * scale:
            return False
    plain = stokes.LinearConfluenceDemo(0.37, 0.21, 0.8, SL, SR, kappa=1)
    trivial = stokes.linear_confluence_demo(plain, 0)
    return (stokes.max_abs_diff(trivial.wild_L, stokes.mul(plain.N(), SL)) == 0
            and stokes.max_abs_diff(trivial.wild_R, SR) == 0)


RUNNERS: Dict[str, Callable[..., SuiteReport]] = {
    "fricke-vi": suite_fricke_vi,
    "braid-relations": suite_braid_relations,
    "confluence": suite_confluence,
    "fricke-v": suite_fricke_v,
    "wild": suite_wild,
    "stokes": suite_stokes,
}


def run_suite(name: str, seed: Optional[int] = None, mutate: Optional[str] = None) -> List[SuiteReport]:
    """Run one suite (or "all"); ``mutate`` names a corrupted-generator mode."""
    seed = default_seed() if seed is None else seed
    mut = None
    if mutate is not None:
        if mutate not in MUTATIONS:
            raise ValueError(f"unknown mutation {mutate!r}; expected one of {', '.join(MUTATIONS)}")
        mut = MUTATIONS[mutate]
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n not in RUNNERS:
            raise ValueError(f"unknown suite {n!r}; expected one of {', '.join(SUITES + ('all',))}")
        if n == "braid-relations":
            out.append(suite_braid_relations(seed, mut))
        elif mut is not None and n == "fricke-vi":
            rep = suite_fricke_vi(seed)
            rep.add("F∘g0t=F (mutated build)", "generator preserves the Fricke cubic",
                    braid_vi.preserves_fricke(braid_vi.generator_map("g0t", "a", mut["g0t"]), "a"))
            out.append(rep)
        else:
            out.append(RUNNERS[n](seed))
    return out


def combined_exit_code(reports: Sequence[SuiteReport]) -> int:
    codes = [r.exit_code for r in reports]
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0
