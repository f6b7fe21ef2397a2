"""Differential-difference operators and the named operator algebra.

The two first-order operators act on polynomials in z, zb as a derivative
plus difference quotients across the four mirror lines; the difference
quotients divide exactly, so the result is again a polynomial.  Everything
else (Hamiltonians, angular momentum, ladder operators, the fourth-order
invariant) is a tree of sums, compositions, multiplication operators and
group elements over those two generators.

Operator trees are parameter-free: coupling and frequency appear inside
multiplication coefficients as the variables k0, k1, w and get instantiated
at application time when the supplied parameters are numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .group import (GroupElem, act, central_element_terms, ell, elem_name,
                    parse_elem, reflection)
from .params import Params
from .poly import MPoly
from .scalars import QI


class Expr:
    """Marker base class for operator syntax trees."""
    __slots__ = ()


@dataclass(frozen=True)
class Dunkl(Expr):
    var: str     # "z" or "zb"

    def __post_init__(self):
        if self.var not in ("z", "zb"):
            raise ValueError("Dunkl direction must be z or zb")


@dataclass(frozen=True)
class Mul(Expr):
    poly: MPoly


@dataclass(frozen=True)
class GroupOp(Expr):
    elem: GroupElem


@dataclass(frozen=True)
class Sum(Expr):
    parts: Tuple[Expr, ...]


@dataclass(frozen=True)
class Compose(Expr):
    """Operator product; the rightmost factor acts first."""
    parts: Tuple[Expr, ...]


@dataclass(frozen=True)
class Commutator(Expr):
    a: Expr
    b: Expr


def apply_dunkl(var: str, p: MPoly, params: Params) -> MPoly:
    """First-order Dunkl operator in the z or zb direction."""
    conjugate = (var == "zb")
    res = p.diff(var)
    for j in range(4):
        diff = p - act(reflection(j), p)
        if diff.is_zero():
            continue
        quot = diff.divide_linear(ell(j))
        kap = params.kappa(j)
        if conjugate:
            res = res - QI.i_power(j) * (kap * quot)
        else:
            res = res + kap * quot
    return res


def apply(expr: Expr, p: MPoly, params: Params) -> MPoly:
    if isinstance(expr, Dunkl):
        return apply_dunkl(expr.var, p, params)
    if isinstance(expr, Mul):
        return params.instantiate(expr.poly) * p
    if isinstance(expr, GroupOp):
        return act(expr.elem, p)
    if isinstance(expr, Sum):
        acc = MPoly.zero()
        for part in expr.parts:
            acc = acc + apply(part, p, params)
        return acc
    if isinstance(expr, Compose):
        for part in reversed(expr.parts):
            p = apply(part, p, params)
        return p
    if isinstance(expr, Commutator):
        return (apply(expr.a, apply(expr.b, p, params), params)
                - apply(expr.b, apply(expr.a, p, params), params))
    raise TypeError(f"not an operator expression: {expr!r}")


# ---- named operators ---------------------------------------------------

_Z = MPoly.var("z")
_ZB = MPoly.var("zb")
_W = MPoly.var("w")

T = Dunkl("z")
TB = Dunkl("zb")


def _const(c) -> Mul:
    return Mul(MPoly.const(c))


def _scaled(c, *parts: Expr) -> Expr:
    return Compose((_const(c),) + parts)


def _anti(a: Expr, b: Expr) -> Expr:
    """Anticommutator {a, b}."""
    return Sum((Compose((a, b)), Compose((b, a))))


def _lower(j: int) -> Expr:
    # T - i^{-j} Tb, annihilates one quantum along the j-th direction pair
    return Sum((T, _scaled(-QI.i_power(-j), TB)))


def _raise(j: int) -> Expr:
    return Sum((Mul(QI.i_power(-j) * _W * ell(j)), _lower(j)))


def _hhat_component(j: int) -> Expr:
    d = _lower(j)
    return Sum((
        _scaled(QI.i_power(j), T, T),
        _scaled(-2, T, TB),
        _scaled(QI.i_power(-j), TB, TB),
        _scaled(Fraction(1, 2), Compose((Mul(_W * ell(j)), d))),
        _scaled(Fraction(1, 2), Compose((d, Mul(_W * ell(j))))),
    ))


def _h_component(j: int) -> Expr:
    lj = ell(j)
    return Sum((
        Mul(Fraction(-1, 4) * QI.i_power(-j) * _W * _W * lj * lj),
        _scaled(QI.i_power(j), T, T),
        _scaled(-2, T, TB),
        _scaled(QI.i_power(-j), TB, TB),
    ))


def _hhat() -> Expr:
    return Sum((
        _scaled(-4, T, TB),
        Compose((Mul(_W), Sum((
            Compose((Mul(_Z), T)),
            Compose((T, Mul(_Z))),
            Compose((Mul(_ZB), TB)),
            Compose((TB, Mul(_ZB))),
        )))),
    ))


def _angular() -> Expr:
    return Sum((Compose((Mul(_Z), T)), Compose((Mul(-_ZB), TB))))


def _signature(signs, components) -> Expr:
    parts = []
    for sg, comp in zip(signs, components):
        sq = Compose((comp, comp))
        parts.append(sq if sg > 0 else _scaled(-1, sq))
    return Sum(tuple(parts))


def _central() -> Expr:
    terms = central_element_terms(Params.symbolic())
    return Sum(tuple(Compose((Mul(coeff), GroupOp(g)))
                     for g, coeff in terms))


def _build_registry() -> Dict[str, Expr]:
    reg: Dict[str, Expr] = {
        "T": T,
        "Tb": TB,
        "DeltaKappa": _scaled(4, T, TB),
        "J": _angular(),
        "J2": Compose((_angular(), _angular())),
        "Hhat": _hhat(),
        "Hcal": Sum((Mul(_W * _W * _Z * _ZB), _scaled(-4, T, TB))),
        "R": _central(),
    }
    for j in range(4):
        reg[f"Hhat_{j}"] = _hhat_component(j)
        reg[f"H_{j}"] = _h_component(j)
        reg[f"Lower_{j}"] = _lower(j)
        reg[f"Raise_{j}"] = _raise(j)
    reg["K"] = _signature((1, -1, 1, -1),
                          [reg[f"H_{j}"] for j in range(4)])
    reg["Khat"] = _signature((1, -1, 1, -1),
                             [reg[f"Hhat_{j}"] for j in range(4)])
    return reg


_REGISTRY = _build_registry()

OPERATOR_NAMES = tuple(sorted(_REGISTRY))


def named(name: str) -> Expr:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; available: "
                       + ", ".join(OPERATOR_NAMES)) from None


def apply_named(name: str, p: MPoly, params: Params) -> MPoly:
    return apply(named(name), p, params)


def monomial_span(max_degree: int, vars=("z", "zb")):
    """All monomials of total degree <= max_degree, graded order."""
    out = []
    for d in range(max_degree + 1):
        for a in range(d, -1, -1):
            exp = (a, d - a)
            out.append(MPoly(vars, {exp: 1}))
    return out


# ---- serialization ------------------------------------------------------

def expr_to_json(expr: Expr) -> dict:
    if isinstance(expr, Dunkl):
        return {"op": "dunkl", "var": expr.var}
    if isinstance(expr, Mul):
        return {"op": "mul", "poly": expr.poly.to_json_dict()}
    if isinstance(expr, GroupOp):
        return {"op": "group", "element": elem_name(expr.elem)}
    if isinstance(expr, Sum):
        return {"op": "sum", "parts": [expr_to_json(e) for e in expr.parts]}
    if isinstance(expr, Compose):
        return {"op": "compose",
                "parts": [expr_to_json(e) for e in expr.parts]}
    if isinstance(expr, Commutator):
        return {"op": "commutator", "a": expr_to_json(expr.a),
                "b": expr_to_json(expr.b)}
    raise TypeError(f"not an operator expression: {expr!r}")


def expr_from_json(obj: dict) -> Expr:
    kind = obj["op"]
    if kind == "dunkl":
        return Dunkl(obj["var"])
    if kind == "mul":
        return Mul(MPoly.from_json_dict(obj["poly"]))
    if kind == "group":
        return GroupOp(parse_elem(obj["element"]))
    if kind == "sum":
        return Sum(tuple(expr_from_json(e) for e in obj["parts"]))
    if kind == "compose":
        return Compose(tuple(expr_from_json(e) for e in obj["parts"]))
    if kind == "commutator":
        return Commutator(expr_from_json(obj["a"]), expr_from_json(obj["b"]))
    if kind == "named":
        return named(obj["name"])
    raise ValueError(f"unknown operator node {kind!r}")
