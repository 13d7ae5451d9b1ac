"""Braid and modular group action on S_VI(a).

The generator g_ij (i, j distinct in {0, t, 1}, k the third index) acts by

    X_i -> X_j,  X_j -> X_i - F_{X_i},  X_k -> X_k,  e_i <-> e_j,

and g_ij o g_ji = id.  Words are read left to right: the first letter is
applied first.  S = g_t1 o g_0t^2 is the word "g0t^2, gt1" and T = g_t0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .charvar_vi import POS, ParamsVI, _a, fricke, fricke_partials
from .identity import Verdict, identity_test, is_identity, maps_equal
from .poly import symbol
from .ratmap import RationalMap, compose_all

GENERATORS = ("g0t", "gt0", "gt1", "g1t", "g01", "g10")
INPUTS = ("X0", "Xt", "X1")
A_SYMBOLS = ("a0", "at", "a1", "ainf")
E_SYMBOLS = ("e0", "et", "e1", "einf")


def parse_generator(name: str) -> Tuple[str, str]:
    name = name.strip()
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}")
    return name[1], name[2]


def swap_params(params, i: str, j: str):
    """Swap the i and j parameters of a ParamsVI or an a-tuple."""
    if isinstance(params, ParamsVI):
        return params.swap(i, j)
    a = list(_a(params))
    a[POS[i]], a[POS[j]] = a[POS[j]], a[POS[i]]
    return tuple(a)


@dataclass(frozen=True)
class ActionResult:
    point: Tuple[object, object, object]
    params: object


def apply_generator(gen: str, X: Sequence[object], params) -> ActionResult:
    i, j = parse_generator(gen)
    partial = fricke_partials(X, params)[POS[i]]
    out = list(X)
    out[POS[i]] = X[POS[j]]
    out[POS[j]] = X[POS[i]] - partial
    return ActionResult(tuple(out), swap_params(params, i, j))


# --- words -------------------------------------------------------------------

_TOKEN = re.compile(r"^\s*(g[0t1]{2})\s*(?:\^\s*(-?\d+))?\s*$")


@dataclass(frozen=True)
class BraidWordVI:
    letters: Tuple[Tuple[str, int], ...] = ()

    def expanded(self) -> List[str]:
        """Flatten powers into single generators (negative powers use g_ji)."""
        out: List[str] = []
        for gen, p in self.letters:
            name = gen if p >= 0 else "g" + gen[2] + gen[1]
            out.extend([name] * abs(p))
        return out

    def __str__(self) -> str:
        return ", ".join(g if p == 1 else f"{g}^{p}" for g, p in self.letters) or "id"


def parse_word(text: str) -> BraidWordVI:
    """Parse "g0t, gt1^-1, g0t^2" (empty string or "id" is the identity)."""
    text = text.strip()
    if text in ("", "id"):
        return BraidWordVI()
    letters = []
    for tok in text.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        parse_generator(m.group(1))
        letters.append((m.group(1), int(m.group(2) or 1)))
    return BraidWordVI(tuple(letters))


def as_word(word) -> BraidWordVI:
    if isinstance(word, BraidWordVI):
        return word
    if isinstance(word, str):
        return parse_word(word)
    return BraidWordVI(tuple((g, 1) if isinstance(g, str) else tuple(g) for g in word))


def apply_word(word, X: Sequence[object], params) -> ActionResult:
    res = ActionResult(tuple(X), params)
    for gen in as_word(word).expanded():
        res = apply_generator(gen, res.point, res.params)
    return res


def explicit_g2(which: str, X: Sequence[object], params) -> ActionResult:
    """The squares g_0t^2 and g_t1^2 in closed form (parameters unchanged)."""
    X0, Xt, X1 = X
    F0, Ft, F1 = fricke_partials(X, params)
    if which == "0t":
        return ActionResult((X0 - F0, Xt - Ft + X1 * F0, X1), params)
    if which == "t1":
        return ActionResult((X0, Xt - Ft, X1 - F1 + X0 * Ft), params)
    raise ValueError("which must be '0t' or 't1'")


# --- symbolic maps -----------------------------------------------------------

def param_symbols(mode: str):
    if mode == "a":
        return tuple(symbol(s) for s in A_SYMBOLS)
    if mode == "e":
        return ParamsVI(*(symbol(s, laurent=True) for s in E_SYMBOLS))
    raise ValueError("mode must be 'a' or 'e'")


def generator_map(gen: str, mode: str = "a", mutate: Optional[str] = None) -> RationalMap:
    """g_ij as a RationalMap in X0, Xt, X1 with the parameter swap.

    ``mutate="sign"`` flips the sign of F_{X_i} (a corrupted generator used
    to check that the relation suite can fail).
    """
    i, j = parse_generator(gen)
    X = tuple(symbol(s) for s in INPUTS)
    params = param_symbols(mode)
    partial = fricke_partials(X, params)[POS[i]]
    if mutate == "sign":
        partial = -partial
    elif mutate is not None:
        raise ValueError(f"unknown mutation {mutate!r}")
    out = list(X)
    out[POS[i]] = X[POS[j]]
    out[POS[j]] = X[POS[i]] - partial
    names = A_SYMBOLS if mode == "a" else E_SYMBOLS
    si, sj = names[POS[i]], names[POS[j]]
    return RationalMap.build(INPUTS, out, {si: symbol(sj, mode == "e"), sj: symbol(si, mode == "e")}, gen)


def word_map(word, mode: str = "a", mutate: Optional[Dict[str, str]] = None) -> RationalMap:
    """RationalMap of a word (left to right)."""
    gens = as_word(word).expanded()
    if not gens:
        return RationalMap.identity(INPUTS)
    mutate = mutate or {}
    maps = [generator_map(g, mode, mutate.get(g)) for g in gens]
    # first letter applied first, so it is the innermost map
    return compose_all(*reversed(maps))


def explicit_g2_map(which: str, mode: str = "a") -> RationalMap:
    X = tuple(symbol(s) for s in INPUTS)
    res = explicit_g2(which, X, param_symbols(mode))
    return RationalMap.build(INPUTS, res.point, {}, f"g{which}^2")


def surface_polynomial(mode: str = "a"):
    X = tuple(symbol(s) for s in INPUTS)
    return fricke(X, param_symbols(mode))


def preserves_fricke(m: RationalMap, mode: str = "a") -> Verdict:
    F = surface_polynomial(mode)
    return identity_test(m.pullback(F), F)


# --- relations ----------------------------------------------------------------

S_WORD = "g0t^2, gt1"
T_WORD = "gt0"


@dataclass
class RelationsReport:
    verdicts: Dict[str, Verdict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.value == "true" for v in self.verdicts.values())

    def failures(self) -> List[str]:
        return [k for k, v in self.verdicts.items() if v.value != "true"]

    def lines(self) -> List[str]:
        return [f"{k}: {'PASS' if v.value == 'true' else v.value.upper()}" for k, v in self.verdicts.items()]


def _rel(word_a, word_b, mode, mutate):
    return maps_equal(word_map(word_a, mode, mutate), word_map(word_b, mode, mutate))


def relations_report(mode: str = "a", mutate: Optional[Dict[str, str]] = None,
                     include_modular: bool = True) -> RelationsReport:
    """Check the defining relations of the action with exact identity tests.

    Relations are checked as identities of polynomial maps on C^3 together
    with the parameter permutation.
    """
    rep = RelationsReport()
    for a, b in (("0", "t"), ("t", "1"), ("1", "0")):
        rep.verdicts[f"g{a}{b}∘g{b}{a}=id"] = is_identity(word_map(f"g{b}{a}, g{a}{b}", mode, mutate))
    rep.verdicts["g0t g1t g0t = g1t g0t g1t"] = _rel(
        "g0t, gt1, g0t", "gt1, g0t, gt1", mode, mutate)
    # g_ki = g_ji o g_jk o g_ij for (i, j, k) = (0, t, 1): word "g0t, gt1, gt0"
    rep.verdicts["g10 = gt0∘gt1∘g0t"] = _rel("g0t, gt1, gt0", "g10", mode, mutate)
    for name in ("g0t", "gt1", "gt0", "g1t"):
        rep.verdicts[f"F∘{name}=F"] = preserves_fricke(generator_map(name, mode, (mutate or {}).get(name)), mode)
    rep.verdicts["g0t^2 explicit"] = maps_equal(explicit_g2_map("0t", mode), word_map("g0t^2", mode, mutate))
    rep.verdicts["gt1^2 explicit"] = maps_equal(explicit_g2_map("t1", mode), word_map("gt1^2", mode, mutate))
    if include_modular:
        rep.verdicts["S²=id"] = is_identity(word_map(f"{S_WORD}, {S_WORD}", mode, mutate))
        st = f"{T_WORD}, {S_WORD}"  # S o T: apply T first
        rep.verdicts["(S∘T)³=id"] = is_identity(word_map(f"{st}, {st}, {st}", mode, mutate))
    return rep


def fixes_point(word, X: Sequence[object], params) -> bool:
    res = apply_word(word, X, params)
    return tuple(res.point) == tuple(X)
