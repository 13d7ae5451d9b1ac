from __future__ import annotations

import cmath
from fractions import Fraction

import pytest

from pcv.braid_vi import S_WORD
from pcv.charvar_v import ParamsV, fricke_v, fricke_v_partials
from pcv.charvar_vi import ParamsVI, sample_point_vi, singularities_vi
from pcv.identity import identity_test, is_identity, maps_equal
from pcv.poly import symbol
from pcv.rational import as_rational
from pcv.wild import (TorusFlowSpec, V_COORDS, apply_v_word, bar_half_monodromy, classification_consistent,
                      extract_sigma, factor_identity_sides, field_tangency, flip_et, half_monodromy_conjugated,
                      half_monodromy_wild, monodromy_v, monodromy_v_map, nu_derivative_check, odd_et_terms,
                      orbit_run, sample_points_v, short_relations, torus_flow, wild_g0t_sq, wild_g0t_sq_map,
                      wild_symbols)

from conftest import rand_exact

PN = ParamsV(cmath.rect(1.1, 0.4), cmath.rect(0.9, -1.3), cmath.rect(1.2, 2.1))
NU = cmath.rect(1.2, 0.7)


def sym():
    return wild_symbols()[0], tuple(symbol(s) for s in V_COORDS)


def exact_point(rng, params: ParamsV):
    """A rational point of S_V: solve the linear equation for X0."""
    t0, tt, t1, ti = params.theta
    W, U = rand_exact(rng), rand_exact(rng)
    X0 = -(W * W + U * U - tt * W - t1 * U + ti) / (W * U - t0)
    return (X0, W, U)


def test_monodromy_preserves_cubic_and_inverts():
    pv, P = sym()
    Ft = fricke_v(P, pv)
    m = monodromy_v_map(1, pv)
    assert identity_test(m.pullback(Ft), Ft)
    assert is_identity(monodromy_v_map(-1, pv) @ m)


def test_monodromy_fixes_critical_points():
    p = ParamsV(Fraction(2), Fraction(3), Fraction(5))
    _, tt, t1, _ = p.theta
    # F~_W = F~_U = 0 is linear in (W, U) for fixed X0
    X0 = Fraction(1, 3)
    det = 4 - X0 * X0
    W = (2 * tt - X0 * t1) / det
    U = (2 * t1 - X0 * tt) / det
    P = (X0, W, U)
    assert fricke_v_partials(P, p)[1:] == (0, 0)
    assert monodromy_v(P, p, 1) == P


def test_wild_g0t_sq_depends_on_nu_only():
    pv, et = wild_symbols()
    g = wild_g0t_sq_map(1, pv, et)
    assert odd_et_terms(g) == 0
    assert maps_equal(flip_et(g), g)


def test_wild_factor_identity():
    lhs, rhs = factor_identity_sides()
    assert identity_test(lhs, rhs)


def test_wild_g0t_sq_round_trip_numeric():
    for k, P in enumerate(sample_points_v(PN, 50, 11, radius=1.5)):
        Q = wild_g0t_sq(wild_g0t_sq(P, PN, NU, 1), PN, NU, -1)
        assert max(abs(a - b) for a, b in zip(P, Q)) <= 1e-9 * max(1.0, max(abs(x) for x in P))


def test_wild_g0t_sq_round_trip_exact(rng):
    for _ in range(5):
        p = ParamsV(rand_exact(rng), rand_exact(rng), rand_exact(rng))
        et = rand_exact(rng)
        P = exact_point(rng, p)
        assert fricke_v(P, p) == 0
        Q = wild_g0t_sq(P, p, et=et, direction=1)
        assert wild_g0t_sq(Q, p, et=et, direction=-1) == P
        # same map for -et
        assert wild_g0t_sq(P, p, et=-et, direction=1) == Q


def test_half_monodromy_square_and_parameter():
    pv, P = sym()
    nu = symbol("nu", laurent=True)
    h1, nu1 = half_monodromy_wild(P, pv, nu, "t1")
    h2, nu2 = half_monodromy_wild(h1, pv, nu1, "t1")
    for a, b in zip(h2, monodromy_v(P, pv, 1)):
        assert identity_test(a, b)
    assert as_rational((nu / pv.e1t) * (nu1 / pv.e1t) - 1).is_zero()
    assert as_rational(nu2 - nu).is_zero()


def test_half_monodromy_matches_conjugated_generator(rng):
    p = ParamsV(rand_exact(rng), rand_exact(rng), rand_exact(rng))
    et = rand_exact(rng)
    P = exact_point(rng, p)
    direct, nu1 = half_monodromy_wild(P, p, et * et, "t1")
    conj, nu2 = half_monodromy_conjugated(P, p, et=et, which="t1")
    assert direct == conj and nu1 == nu2


def test_half_monodromy_box_vanishes():
    p = ParamsV(Fraction(2), Fraction(3), Fraction(5))
    nu = Fraction(7, 2)
    t0, tt, t1, _ = p.theta
    q = p.e1t / nu
    # choose X0, W and solve F~_U = (X0 + q) F~_W for U
    X0, W = Fraction(1, 4), Fraction(-2, 3)
    GW_noU = 2 * W - tt
    # F~_U = X0 W + 2U - t1 ; F~_W = X0 U + 2W - tt
    U = ((X0 + q) * GW_noU - X0 * W + t1) / (2 - (X0 + q) * X0)
    P = (X0, W, U)
    _, GW, GU = fricke_v_partials(P, p)
    assert GU == (X0 + q) * GW
    out, _ = half_monodromy_wild(P, p, nu, "t1")
    assert out == (X0, W - GW, U)


def test_bar_half_monodromy():
    pv, P = sym()
    Q, p2 = bar_half_monodromy(P, pv)
    assert identity_test(fricke_v(Q, p2), fricke_v(P, pv))
    R, p3 = bar_half_monodromy(Q, p2)
    assert p3 == pv
    for a, b in zip(R, monodromy_v(P, pv, 1)):
        assert identity_test(a, b)


def test_torus_fields_tangent():
    for which in ("U", "W"):
        assert as_rational(field_tangency(which)).is_zero()


def test_torus_flows():
    pts = sample_points_v(PN, 10, 3, radius=1.5)
    for P in pts:
        assert torus_flow(P, PN, TorusFlowSpec("U", 1.0)) == tuple(complex(x) for x in P)
        for which, idx in (("U", 2), ("W", 1)):
            Q = torus_flow(P, PN, TorusFlowSpec(which, NU))
            assert abs(Q[idx] - P[idx]) <= 1e-12 * max(1.0, abs(P[idx]))
            assert abs(fricke_v(Q, PN)) <= 1e-10 * max(1.0, max(abs(x) for x in Q) ** 3)
            back = torus_flow(Q, PN, TorusFlowSpec(which, NU), inverse=True)
            assert max(abs(a - b) for a, b in zip(back, P)) <= 1e-8


def test_nu_derivative_matches_field():
    pts = sample_points_v(PN, 20, 5, radius=1.5)
    for which in ("U", "W"):
        for P in pts:
            assert nu_derivative_check(PN, NU, P, which) < 1e-6


def test_nu_derivative_second_order():
    P = sample_points_v(PN, 1, 8, radius=1.5)[0]
    r1 = nu_derivative_check(PN, NU, P, "U", h=1e-2)
    r2 = nu_derivative_check(PN, NU, P, "U", h=5e-3)
    assert 3.0 < r1 / r2 < 5.0


def test_sigma_operators():
    pts = sample_points_v(PN, 8, 21, radius=1.5)
    _, _, rep = extract_sigma(PN, (NU, 2 * NU), pts)
    assert rep.points == 8
    assert rep.nu_independence <= 1e-8
    assert rep.sigma_prime_sigma <= 1e-8
    assert rep.display_consistency <= 1e-8


def test_no_short_relations():
    pts = sample_points_v(PN, 3, 17, radius=1.5)
    assert short_relations(PN, NU, pts, max_len=4) == []


def test_v_word_parsing():
    P = sample_points_v(PN, 1, 2)[0]
    Q = apply_v_word("gt1^2, g1t^2", P, PN, NU)
    assert max(abs(a - b) for a, b in zip(P, Q)) < 1e-12
    with pytest.raises(ValueError):
        apply_v_word("gt1", P, PN, NU)


def test_orbit_fixed_at_singular_point():
    p = ParamsVI(1, 3, 5, 7)
    s = singularities_vi(p)[0]
    rec = orbit_run("vi", s.location, p, "g0t^2", generators=["g0t^2", "gt1^2"])
    assert rec.classification == "fixed" and len(rec.iterates) == 1


def test_orbit_generic_classification_consistent():
    p = ParamsVI(cmath.rect(1.1, 0.3), cmath.rect(0.8, -1.0), cmath.rect(1.3, 2.0), cmath.rect(0.9, 0.5))
    P = sample_point_vi(p, 4)
    rec = orbit_run("vi", P, p, "g0t^2", max_iter=1000, escape_radius=1e8, match_tol=1e-9)
    assert rec.classification in ("escaping", "bounded-unresolved")
    assert classification_consistent(rec, 1e8, 1e-9)


def test_orbit_periodic_two_for_involution():
    p = ParamsVI(cmath.rect(1.1, 0.3), cmath.rect(0.8, -1.0), cmath.rect(1.3, 2.0), cmath.rect(0.9, 0.5))
    P = sample_point_vi(p, 6)
    rec = orbit_run("vi", P, p, S_WORD, max_iter=10)
    assert rec.classification == "periodic" and rec.period == 2
    assert classification_consistent(rec, 1e8, 1e-9)
