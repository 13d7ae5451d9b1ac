from __future__ import annotations

import pytest

from pcv.charvar_v import fricke_v, sample_point_v
from pcv.charvar_vi import fricke
from pcv.confluence import (ConfluentParams, OnSingularLine, V_COORDS, VI_COORDS, blowup_chart,
                            blowup_coordinates, confluent_params, eps_sequence, fricke_factor_sides,
                            on_l0, partial_transport_sides, phi_forward, phi_inverse, phi_inverse_map,
                            phi_map, point_on_l0, symbolic_params, u1_formulas)
from pcv.identity import identity_test
from pcv.poly import symbol
from pcv.rational import as_rational
from pcv.scalar import AlgebraError
from pcv.verify import numeric_confluent, omega_defect_phi

from conftest import rand_exact


def exact_params(rng) -> ConfluentParams:
    e0, einf, et, e1 = (rand_exact(rng) for _ in range(4))
    return ConfluentParams(e0, -et * e1, einf, et, e1)


def test_confluent_params_relation():
    cp = confluent_params(0.3, 0.2, -0.4, eps=0.7)
    assert abs(cp.et * cp.e1 + cp.e1t) <= 1e-15
    cp = confluent_params(e0=2, e1t=1, einf=3, et=2)
    assert cp.e1 == -0.5 or cp.e1 == pytest.approx(-0.5)
    with pytest.raises(AlgebraError):
        confluent_params(0.3, 0.2, -0.4, eps=0)


def test_nu_constant_along_eps_sequence():
    eps0 = 0.37 + 0.05j
    nu0 = confluent_params(0.3, 0.2, -0.4, eps=eps0).nu
    for n in range(1, 11):
        nu = confluent_params(0.3, 0.2, -0.4, eps=eps_sequence(eps0, 1, n)).nu
        assert abs(nu - nu0) <= 1e-9 * abs(nu0)


def test_phi_keeps_x0_and_maps_to_s_vi():
    for k in range(20):
        cp = numeric_confluent(k)
        P = sample_point_v(cp.v, k)
        X = phi_forward(P, cp)
        assert X[0] == P[0]
        assert abs(fricke(X, cp.vi)) <= 1e-10 * max(1.0, max(abs(x) for x in X) ** 3)


def test_factor_identity_exact():
    lhs, rhs = fricke_factor_sides()
    assert identity_test(lhs, rhs)


def test_partial_transport_modulo_cubic():
    cp = symbolic_params()
    P = tuple(symbol(s) for s in V_COORDS)
    Ft = fricke_v(P, cp.v)
    sides = partial_transport_sides(cp)
    for lhs, rhs in sides:
        assert identity_test(lhs, rhs, modulo=Ft, var="U1")
    # the F_Xt and F_X1 rows even hold on all of C^3; the F_X0 row differs by -F~/(et e1)
    assert identity_test(*sides[1]) and identity_test(*sides[2])
    assert identity_test(sides[0][0] - sides[0][1], -Ft / (cp.et * cp.e1))


def test_phi_phi_inverse_modulo_f():
    cp = symbolic_params()
    X = tuple(symbol(s) for s in VI_COORDS)
    F = fricke(X, cp.vi)
    phi = phi_map(cp)
    for which in (1, 2):
        inv = phi_inverse_map(which, cp)
        comp = [as_rational(o.subs(dict(zip(V_COORDS, inv.outputs)))) for o in phi.outputs]
        for c, x in zip(comp, X):
            assert identity_test(c, x, modulo=F, var="X1")
    (n1, d1), (n2, d2) = u1_formulas(X, cp)
    assert identity_test(as_rational(n1) / d1, as_rational(n2) / d2, modulo=F, var="X1")


def test_phi_inverse_exact_points(rng):
    for _ in range(10):
        cp = exact_params(rng)
        W, U = rand_exact(rng), rand_exact(rng)
        t0, tt, t1, ti = cp.v.theta
        den = W * U - t0
        X0 = -(W * W + U * U - tt * W - t1 * U + ti) / den
        P = (X0, W, U)
        assert fricke_v(P, cp.v) == 0
        X = phi_forward(P, cp)
        assert fricke(X, cp.vi) == 0
        assert phi_inverse(X, cp) == P


def test_phi_inverse_raises_on_l0(rng):
    for _ in range(5):
        cp = exact_params(rng)
        X = point_on_l0(cp, rand_exact(rng))
        assert on_l0(X, cp)
        with pytest.raises(OnSingularLine):
            phi_inverse(X, cp)
    cp = numeric_confluent(3)
    with pytest.raises(OnSingularLine):
        phi_inverse(point_on_l0(cp, 0.3 + 0.1j), cp)


def test_blowup_chart(rng):
    cp = exact_params(rng)
    pts = [point_on_l0(cp, rand_exact(rng)) for _ in range(5)]
    charts = [blowup_chart(X, cp) for X in pts]
    tht = cp.v.theta[1]
    for X, z in zip(pts, charts):
        assert z.Z0 == 0 and z.Zt / z.Z1 == -cp.et / cp.e1
        assert z.Zinf == tht - cp.et * X[1] - cp.e1 * X[2]
    assert cp.et ** 2 != cp.e1 ** 2
    assert len({z.Zinf for z in charts}) == len({X[1] for X in pts})
    with pytest.raises(AlgebraError):
        blowup_chart((pts[0][0] + 1, pts[0][1], pts[0][2]), cp)


def test_blowup_limit_along_surface_curve():
    cp = numeric_confluent(5)
    X = point_on_l0(cp, 0.4 - 0.2j)
    z = blowup_chart(X, cp)
    # approach L0 along S_VI by moving X0 and re-solving for X1 on the surface
    from pcv.charvar_vi import solve_monic_quadratic, theta_from_a

    t0, tt, t1, ti = theta_from_a(cp.vi.a)
    for d in (1e-3, 1e-4):
        X0, Xt = X[0] + d, X[1]
        roots = [solve_monic_quadratic(X0 * Xt - t1, X0 * X0 + Xt * Xt - t0 * X0 - tt * Xt + ti, k) for k in (0, 1)]
        X1 = min(roots, key=lambda r: abs(r - X[2]))
        Y0, Yt, Y1 = blowup_coordinates((X0, Xt, X1), cp)
        assert abs(Yt / Y1 - z.Zt / z.Z1) < 50 * d
        assert abs(Y1 - z.Zinf) < 50 * d * max(1.0, abs(z.Zinf))


def test_symplectic_pullback():
    worst = max(omega_defect_phi(numeric_confluent(900 + k), sample_point_v(numeric_confluent(900 + k).v, k))
                for k in range(50))
    assert worst <= 1e-9
