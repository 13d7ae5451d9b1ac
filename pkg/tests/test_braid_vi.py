from __future__ import annotations

import cmath
import random
from fractions import Fraction

import pytest

from pcv.braid_vi import (GENERATORS, S_WORD, T_WORD, apply_generator, apply_word, explicit_g2,
                          generator_map, parse_word, preserves_fricke, relations_report, word_map)
from pcv.charvar_vi import ParamsVI, fricke, sample_point_vi, singularities_vi
from pcv.identity import maps_equal
from pcv.verify import omega_defect_vi


def numeric_params(seed: int) -> ParamsVI:
    r = random.Random(seed)
    return ParamsVI(*(cmath.rect(r.uniform(0.6, 1.6), r.uniform(-3, 3)) for _ in range(4)))


def test_generator_example():
    res = apply_generator("g0t", (2, 0, 0), (0, 0, 0, 0))
    assert res.point == (0, -2, 0)


def test_inverse_pair_on_point():
    p = ParamsVI(2, 3, 5, 7)
    X = (Fraction(1, 2), 3, -1)
    r = apply_generator("g0t", X, p)
    res = apply_generator("gt0", r.point, r.params)
    assert res.point == X and res.params == p


def test_fricke_preserved_with_swap():
    p = ParamsVI(2, 3, 5, 7)
    X = (Fraction(1, 3), Fraction(-2, 5), 4)
    for g in GENERATORS:
        res = apply_generator(g, X, p)
        assert fricke(res.point, res.params) == fricke(X, p)


def test_empty_word_and_parsing():
    p = ParamsVI(2, 3, 5, 7)
    X = (1, 2, 3)
    assert apply_word("", X, p).point == X
    assert apply_word("id", X, p).point == X
    w = parse_word("g0t, gt1^-1, g0t^2")
    assert w.expanded() == ["g0t", "g1t", "g0t", "g0t"]
    with pytest.raises(ValueError):
        parse_word("g0x")


def test_composite_generator():
    assert maps_equal(word_map("g0t, gt1, gt0"), word_map("g10"))


def test_s_is_involution_numerically():
    for k in range(20):
        p = numeric_params(k)
        X = sample_point_vi(p, k)
        Y = apply_word(f"{S_WORD}, {S_WORD}", X, p).point
        assert max(abs(a - b) for a, b in zip(X, Y)) <= 1e-9 * max(1.0, max(abs(x) for x in X))


def test_explicit_squares():
    for which in ("0t", "t1"):
        gen = "g" + which
        assert maps_equal(word_map(f"{gen}^2"), generator_map(gen) @ generator_map(gen))
        m = word_map(f"{gen}^2")
        assert preserves_fricke(m)


def test_singular_points_fixed_by_squares():
    for e in ((1, 3, 5, 7), (2, 3, 5, Fraction(1, 30)), (-1, 2, 3, 5)):
        p = ParamsVI(*e)
        for s in singularities_vi(p):
            for which in ("0t", "t1"):
                assert explicit_g2(which, s.location, p).point == s.location
            assert apply_word(f"{S_WORD}, {S_WORD}", s.location, p).point == s.location


def test_relations_report_a_mode():
    rep = relations_report("a")
    assert rep.ok, rep.failures()
    assert "(S∘T)³=id: PASS" in rep.lines()


def test_relations_report_e_mode_without_modular():
    rep = relations_report("e", include_modular=False)
    assert rep.ok, rep.failures()


def test_corrupted_generator_detected():
    rep = relations_report("a", {"g0t": "sign"})
    assert not rep.ok
    assert rep.failures()


def test_symplectic_invariance():
    worst = 0.0
    for k in range(50):
        p = numeric_params(500 + k)
        X = sample_point_vi(p, k)
        for g in GENERATORS:
            worst = max(worst, omega_defect_vi(g, p, X))
    assert worst <= 1e-9


def test_t_word_is_gt0():
    assert maps_equal(word_map(T_WORD), generator_map("gt0"))
