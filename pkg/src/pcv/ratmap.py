"""Rational maps with a parameter action, and their composition."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

from .poly import symbol
from .rational import RationalExpression, as_rational
from .scalar import AlgebraError


@dataclass(frozen=True)
class RationalMap:
    """``inputs -> outputs`` together with a substitution on parameter symbols.

    ``param_action[p]`` is the value of the new parameter ``p`` expressed in
    the old parameters; symbols absent from the dict are fixed.  The outputs
    are expressed in the inputs and the old parameters.
    """

    inputs: Tuple[str, ...]
    outputs: Tuple[RationalExpression, ...]
    param_action: Mapping[str, RationalExpression] = field(default_factory=dict)
    name: str = ""

    @staticmethod
    def build(inputs: Sequence[str], outputs: Sequence[object],
              param_action: Mapping[str, object] | None = None, name: str = "") -> "RationalMap":
        outs = tuple(as_rational(o) for o in outputs)
        pa = {k: as_rational(v) for k, v in (param_action or {}).items()}
        return RationalMap(tuple(inputs), outs, pa, name)

    @staticmethod
    def identity(inputs: Sequence[str], name: str = "id") -> "RationalMap":
        return RationalMap.build(inputs, [symbol(v) for v in inputs], {}, name)

    @property
    def arity(self) -> int:
        return len(self.outputs)

    def substitution(self) -> Dict[str, object]:
        """Mapping that realizes ``expr o self`` for an expression in the inputs."""
        mp: Dict[str, object] = dict(zip(self.inputs, self.outputs))
        mp.update(self.param_action)
        return mp

    def pullback(self, expr) -> RationalExpression:
        """``expr o self`` (inputs and parameters substituted simultaneously)."""
        return as_rational(as_rational(expr).subs(self.substitution()))

    def apply(self, point: Sequence[object], params: Mapping[str, object]):
        """Evaluate at a point; returns (new point, new parameter values)."""
        if len(point) != len(self.inputs):
            raise AlgebraError("point arity mismatch")
        values = dict(params)
        values.update(zip(self.inputs, point))
        out = tuple(o.evaluate(values) for o in self.outputs)
        new_params = dict(params)
        for p, v in self.param_action.items():
            new_params[p] = v.evaluate(values)
        return out, new_params

    def derivatives(self) -> Tuple[Tuple[RationalExpression, ...], ...]:
        """Symbolic Jacobian: rows are outputs, columns are inputs."""
        return tuple(tuple(o.derivative(v) for v in self.inputs) for o in self.outputs)

    def jacobian(self, point: Sequence[object], params: Mapping[str, object]):
        """Jacobian matrix evaluated at a point."""
        values = dict(params)
        values.update(zip(self.inputs, point))
        return tuple(tuple(d.evaluate(values) for d in row) for row in self.derivatives())

    def __matmul__(self, other: "RationalMap") -> "RationalMap":
        return map_compose(self, other)


def map_compose(m1: RationalMap, m2: RationalMap) -> RationalMap:
    """Return ``m1 o m2`` (apply ``m2`` first)."""
    if m2.arity != len(m1.inputs):
        raise AlgebraError(f"arity mismatch: {m2.arity} outputs into {len(m1.inputs)} inputs")
    sub = dict(zip(m1.inputs, m2.outputs))
    sub.update(m2.param_action)
    outs = tuple(as_rational(o.subs(sub)) for o in m1.outputs)
    pa: Dict[str, RationalExpression] = {}
    for p in set(m1.param_action) | set(m2.param_action):
        if p in m1.param_action:
            pa[p] = as_rational(m1.param_action[p].subs(m2.param_action))
        else:
            pa[p] = m2.param_action[p]
    pa = {p: v for p, v in pa.items() if not (v.is_polynomial() and v.num == symbol(p))}
    name = f"{m1.name}∘{m2.name}" if m1.name and m2.name else ""
    return RationalMap(m2.inputs, outs, pa, name)


def compose_all(*maps: RationalMap) -> RationalMap:
    """``maps[0] o maps[1] o ... o maps[-1]``."""
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = map_compose(m, result)
    return result
