from __future__ import annotations

from fractions import Fraction

from pcv.charvar_v import (ParamsV, decomposition_values, fricke_v, fricke_v_eval, lines_v, omega_v_charts,
                           sample_point_v, singular_criterion_v, singularities_v, tangent_basis_v,
                           theta_tilde, theta_tilde_product_form, w_tilde, w_tilde_e_form)
from pcv.poly import symbol
from pcv.rational import as_rational
from pcv.scalar import I

from conftest import rand_exact

GENERIC = ParamsV(Fraction(2, 3), Fraction(5, 7), Fraction(11, 13))


def sym_params() -> ParamsV:
    return ParamsV(*(symbol(s, laurent=True) for s in ("e0", "e1t", "einf")))


def test_theta_tilde_examples():
    # a0 = ainf = 0 at e = i
    p = ParamsV(I, 1, I)
    assert theta_tilde(p) == (-1, 0, 0, 2)
    q = ParamsV(Fraction(2), -1, Fraction(3))
    a0, ai = q.a0, q.ainf
    assert theta_tilde(q) == (1, ai + a0, a0 + ai, 1 + a0 * ai + 1)


def test_theta_tilde_product_form_matches(rng):
    for _ in range(10):
        e0, ee, en = (rand_exact(rng) for _ in range(3))
        assert theta_tilde(ParamsV(e0, ee, en)) == theta_tilde_product_form(e0, -ee, en)
    sp = sym_params()
    for x, y in zip(theta_tilde(sp), theta_tilde_product_form(sp.e0, -sp.e1t, sp.einf)):
        assert as_rational(x - y).is_zero()


def test_fricke_v_examples():
    assert fricke_v((-2, 0, 0), ParamsV(I, 1, I)) == 0
    ee, en = Fraction(3, 7), Fraction(5, 2)
    p = ParamsV(1, ee, en)
    assert p.a0 == 2
    assert fricke_v_eval((p.ainf, -ee, 1), p) == (0, 0, 0, 0)


def test_partials_finite_differences():
    p = ParamsV(0.7 + 0.2j, -0.4 + 0.9j, 1.3 - 0.5j)
    h = 1e-6
    for k in range(20):
        P = sample_point_v(p, k)
        grads = fricke_v_eval(P, p)[1:]
        for i in range(3):
            up = list(P)
            dn = list(P)
            up[i] += h
            dn[i] -= h
            fd = (fricke_v(up, p) - fricke_v(dn, p)) / (2 * h)
            assert abs(fd - grads[i]) <= 1e-6 * max(1.0, abs(grads[i]))


def test_decompositions_exact():
    sp = sym_params()
    P = tuple(symbol(s) for s in ("X0", "Wt", "U1"))
    F = fricke_v(P, sp)
    vals = decomposition_values(P, sp)
    assert len(vals) == 11
    for v in vals:
        assert as_rational(F - v).is_zero()


def test_lines_count_and_substitution(rng):
    lam = symbol("lam")
    for _ in range(3):
        p = ParamsV(*(rand_exact(rng) for _ in range(3)))
        lines = lines_v(p)
        assert len(lines) == 22
        for ln in lines:
            assert as_rational(fricke_v(ln.point(lam), p)).is_zero(), ln.label


def _same_line(a, b) -> bool:
    return all(r == 0 for t in (0, 1) for r in b.residuals(a.point(t)))


def test_line_catalog_coincidences():
    # the W-decompositions and U-decompositions share one line each: 18 distinct lines
    lines = lines_v(GENERIC)
    pairs = {(a.family, a.branch, b.family, b.branch)
             for i, a in enumerate(lines) for b in lines[i + 1:] if _same_line(a, b)}
    assert pairs == {(4, 1, 11, 1), (5, 1, 10, 1), (6, 1, 9, 1), (7, 1, 8, 1)}


def test_specific_line_on_surface():
    p = GENERIC
    U = symbol("lam")
    # W = einf and einf*X0 + U + e~1*einf - a0 = 0
    X0 = (p.a0 - U - p.e1t * p.einf) / p.einf
    assert as_rational(fricke_v((X0, p.einf, U), p)).is_zero()


def test_singularities_examples():
    ee, en = Fraction(3, 7), Fraction(5, 2)
    p = ParamsV(1, ee, en)
    assert any(s.location == (p.ainf, -ee, 1) for s in singularities_v(p))
    e0, en = Fraction(2), Fraction(3)
    p = ParamsV(e0, -e0 * en, en)
    loc = (-p.e1t - 1 / p.e1t, en, e0)
    assert any(s.location == loc for s in singularities_v(p))
    assert singular_criterion_v(GENERIC) != 0
    assert singularities_v(GENERIC) == []
    for params in (ParamsV(1, ee, en), p, ParamsV(Fraction(2), Fraction(1, 5), -1)):
        for s in singularities_v(params):
            assert all(v == 0 for v in fricke_v_eval(s.location, params))
            assert all(x is not None and abs(complex(x)) < float("inf") for x in s.location)


def test_w_tilde_forms_agree():
    sp = sym_params()
    assert as_rational(w_tilde(sp) - w_tilde_e_form(sp.e0, -sp.e1t, sp.einf)).is_zero()


def test_omega_charts_agree():
    p = ParamsV(0.7 + 0.2j, -0.4 + 0.9j, 1.3 - 0.5j)
    for k in range(30):
        P = sample_point_v(p, k)
        u, v = tangent_basis_v(P, p)
        vals = [x for x in omega_v_charts(P, p, u, v) if x is not None]
        assert len(vals) == 3
        for x in vals[1:]:
            assert abs(x - vals[0]) <= 1e-10 * max(1.0, abs(vals[0]))


def test_sampling():
    p = ParamsV(0.7 + 0.2j, -0.4 + 0.9j, 1.3 - 0.5j)
    pts = [sample_point_v(p, k) for k in range(100)]
    assert all(abs(fricke_v(P, p)) <= 1e-12 for P in pts)
    assert sample_point_v(p, 7) == pts[7]
    assert len(set(pts)) == 100
