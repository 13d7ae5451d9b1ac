from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from pcv import stokes
from pcv.braid_vi import apply_generator, apply_word
from pcv.charvar_v import fricke_v
from pcv.charvar_vi import ParamsVI, fricke
from pcv.confluence import OnSingularLine, phi_inverse
from pcv.scalar import AlgebraError, I
from pcv.stokes import KEYS, StokesDataVI

from conftest import rand_exact

DATA = [stokes.random_admissible(100 + k) for k in range(20)]


def zero_data(e0=2, et=3, e1=5) -> StokesDataVI:
    return StokesDataVI({k: 0 for k in KEYS}, e0, et, e1)


def test_all_zero_traces():
    d = zero_data()
    X0, Xt, X1, _ = stokes.traces_from_stokes(d)
    e0, et, e1 = d.e
    assert (X0, Xt, X1) == (et / e1 + e1 / et, e0 / e1 + e1 / e0, e0 / et + et / e0)


def test_x0_example():
    s = {k: 0 for k in KEYS}
    s["t1"], s["1t"] = Fraction(2, 3), Fraction(3, 2)
    d = StokesDataVI(s, Fraction(7, 3), 1, 1)
    assert stokes.traces_from_stokes(d)[0] == 3


def test_local_traces_and_relation():
    for d in DATA:
        m = stokes.monodromy_from_stokes(d)
        for M, x in zip((m.M0, m.Mt, m.M1), d.e):
            assert stokes.trace(M) == x * x + 2
        assert stokes.invariant_relation(d) == 0
        assert stokes.admissibility(d) == 0


def test_admissibility_is_a_constraint():
    s = {k: Fraction(k.count("1") + 2, 3) for k in KEYS}
    assert stokes.admissibility(StokesDataVI(s, 2, 3, 5)) != 0


def test_diagonal_conjugation_invariance():
    rng = random.Random(5)
    for d in DATA[:5]:
        c = d.conjugate([rand_exact(rng) for _ in range(3)])
        assert stokes.invariants(c) == stokes.invariants(d)
        assert stokes.traces_from_stokes(c) == stokes.traces_from_stokes(d)


def test_traces_satisfy_fricke_and_displays():
    for d in DATA:
        X0, Xt, X1, a = stokes.traces_from_stokes(d)
        X = (X0, Xt, X1)
        assert fricke(X, a) == 0
        m = stokes.monodromy_from_stokes(d)
        assert m.E == stokes.E_display(d, X)
        assert m.Eprime == stokes.Eprime_display(d, X)


def test_braid_on_stokes_matches_generators():
    for d in DATA[:10]:
        X = stokes.traces_from_stokes(d)[:3]
        p = ParamsVI(*d.e, d.einf)
        b = stokes.braid_on_stokes("b0t", d)
        assert stokes.admissibility(b) == 0
        assert tuple(stokes.traces_from_stokes(b)[:3]) == apply_generator("gt0", X, p).point
        assert tuple(stokes.traces_from_stokes(stokes.braid_on_stokes("bt1", d))[:3]) == \
            apply_generator("g1t", X, p).point
        b2 = stokes.braid_on_stokes("b0t", b)
        assert tuple(stokes.traces_from_stokes(b2)[:3]) == apply_word("gt0^2", X, p).point


def test_braid_of_zero_data():
    d = zero_data()
    b = stokes.braid_on_stokes("b0t", d)
    assert all(v == 0 for v in b.s.values())
    assert b.e == (d.et, d.e0, d.e1)


def test_braid_unknown_name():
    with pytest.raises(ValueError):
        stokes.braid_on_stokes("b10", DATA[0])


def test_confluent_stokes_on_s_v():
    for d in DATA:
        o, P = stokes.confluent_stokes(d)
        cp = stokes.confluent_params_of(d)
        assert fricke_v(P, cp.v) == 0
        X = stokes.traces_from_stokes(d)[:3]
        assert tuple(phi_inverse(X, cp)) == tuple(P)
        M, E, Ep = stokes.assemble_outer_monodromy(o)
        assert M == stokes.outer_closed_form(o)
        assert stokes.det(stokes.sub(M, stokes.eye(3))) == 0
        assert E == stokes.outer_E_display(o, *P[1:])
        assert Ep == stokes.outer_Eprime_display(o, *P[1:])


def test_singular_line_raises():
    d = DATA[0]
    with pytest.raises(OnSingularLine):
        stokes.confluent_stokes(StokesDataVI({**d.s, "1t": 0}, *d.e))


def test_outer_det_needs_admissible_origin():
    # arbitrary outer values do not give an eigenvalue 1
    o = stokes.OuterStokesData(Fraction(1, 2), 3, Fraction(-2, 7), 5, 4, 2, 3, 5)
    M, _, _ = stokes.assemble_outer_monodromy(o)
    assert stokes.det(stokes.sub(M, stokes.eye(3))) != 0


def test_outer_zero_data_eigenvalues():
    e0, et, e1 = Fraction(2), Fraction(3), Fraction(5)
    o = stokes.OuterStokesData(0, 0, 0, 0, et / e1 + e1 / et, e0, et, e1)
    M, _, _ = stokes.assemble_outer_monodromy(o)
    for lam in (e0 * e0, et * et, e1 * e1):
        assert stokes.det(stokes.sub(M, stokes.diag(lam, lam, lam))) == 0


def test_json_round_trip():
    d = DATA[3]
    text = json.dumps(d.to_json())
    assert StokesDataVI.from_json(text) == d
    obj = json.loads(text)
    obj["s"]["0t"] = [0.5, 0.0]
    with pytest.raises(AlgebraError):
        StokesDataVI.from_json(obj)
    del obj["e"]["t"]
    with pytest.raises(ValueError):
        StokesDataVI.from_json(obj)


def test_exact_data_uses_gaussian_i():
    o, P = stokes.confluent_stokes(DATA[1])
    assert all(not isinstance(x, complex) for x in P)
    assert I * I == -1


def demo(kappa=None) -> stokes.LinearConfluenceDemo:
    SL = stokes.mat([[1, 0], [0.3 + 0.2j, 1]])
    SR = stokes.mat([[1, -0.7 + 0.1j], [0, 1]])
    return stokes.LinearConfluenceDemo(1.0, 0.21 - 0.05j, 0.8 + 0.3j, SL, SR, kappa)


def test_linear_confluence_demo():
    dm = demo()
    N00 = dm.N0(dm.eps0)
    base = stokes.mul(N00, dm.SL)
    for n in range(1, 11):
        r = stokes.linear_confluence_demo(dm, n)
        assert stokes.max_abs_diff(r.N0_n, N00) <= 1e-12 * max(abs(N00[0][0]), abs(N00[1][1]))
        assert stokes.max_abs_diff(r.ML, base) <= 1e-12 * max(1.0, max(abs(x) for row in base for x in row))
        assert stokes.max_abs_diff(r.ML, r.wild_L) <= 1e-12 * max(1.0, max(abs(x) for row in base for x in row))


def test_linear_confluence_trivial_kappa():
    dm = demo(kappa=1)
    r = stokes.linear_confluence_demo(dm, 1)
    assert stokes.max_abs_diff(r.wild_L, stokes.mul(dm.N(), dm.SL)) == 0
    assert stokes.max_abs_diff(r.wild_R, dm.SR) == 0
