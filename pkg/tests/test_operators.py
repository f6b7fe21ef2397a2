"""First-order operators against hand-computed values, then the algebraic
identities that tie the named second- and fourth-order operators together."""

from fractions import Fraction as Q

import pytest

from b2dunkl.group import ALL_ELEMENTS, act, central_element_apply, inv
from b2dunkl.operators import (
    Commutator, apply, apply_named, expr_from_json, expr_to_json,
    monomial_span, named,
)
from b2dunkl.params import DEFAULT_PARAMS, Params
from b2dunkl.poly import MPoly
from b2dunkl.scalars import QI

Z = MPoly.var("z")
ZB = MPoly.var("zb")
K0 = MPoly.var("k0")
K1 = MPoly.var("k1")
SYM = Params.symbolic()
GAMMA = 2 * K0 + 2 * K1


def T(p, params=SYM):
    return apply_named("T", p, params)


def Tb(p, params=SYM):
    return apply_named("Tb", p, params)


def test_first_order_frozen_values_symbolic():
    one = MPoly.const(1)
    assert T(one).is_zero()
    assert Tb(one).is_zero()
    assert T(Z) == (1 + GAMMA) * one
    assert T(ZB).is_zero()
    assert Tb(ZB) == (1 + GAMMA) * one
    assert Tb(Z).is_zero()
    assert T(Z ** 2) == (2 + GAMMA) * Z
    assert Tb(Z ** 2) == -2 * (K0 - K1) * ZB
    assert T(ZB ** 2) == -2 * (K0 - K1) * Z
    assert Tb(ZB ** 2) == (2 + GAMMA) * ZB
    assert T(Z * ZB) == ZB
    assert Tb(Z * ZB) == Z


def test_first_order_numeric_matches_symbolic_instantiation():
    p = Z ** 3 * ZB + 2 * ZB ** 2
    for params in (DEFAULT_PARAMS, Params.numeric("7/5", "2/9", "5/7")):
        assert T(p, params) == params.instantiate(T(p))
        assert Tb(p, params) == params.instantiate(Tb(p))


def test_first_order_lowers_degree():
    p = Z ** 4 + Z * ZB ** 3
    assert T(p, DEFAULT_PARAMS).total_degree() == 3
    assert Tb(p, DEFAULT_PARAMS).total_degree() == 3


def test_dunkl_operators_commute():
    for p in monomial_span(6):
        pq = T(Tb(p, DEFAULT_PARAMS), DEFAULT_PARAMS)
        qp = Tb(T(p, DEFAULT_PARAMS), DEFAULT_PARAMS)
        assert pq == qp
    # and as a symbolic polynomial identity on a smaller span
    for p in monomial_span(4):
        assert T(Tb(p)) == Tb(T(p))


def test_laplacian_frozen_values():
    assert apply_named("DeltaKappa", Z * ZB, SYM) == 4 * (1 + GAMMA)
    assert apply_named("DeltaKappa", Z ** 2, SYM).is_zero()
    assert apply_named("DeltaKappa", Z ** 2 + ZB ** 2, SYM).is_zero()
    assert apply_named("DeltaKappa", Z ** 2 - ZB ** 2, SYM).is_zero()


def test_angular_momentum_frozen_values():
    assert apply_named("J", Z, SYM) == (1 + GAMMA) * Z
    assert apply_named("J", ZB, SYM) == -(1 + GAMMA) * ZB
    assert apply_named("J", Z * ZB, SYM).is_zero()


def test_oscillator_lowest_energies():
    w = MPoly.var("w")
    # constant: energy 2w(gamma+1); degree one: 2w(gamma+2)
    assert apply_named("Hhat", MPoly.const(1), SYM) == 2 * w * (1 + GAMMA)
    assert apply_named("Hhat", Z, SYM) == 2 * w * (2 + GAMMA) * Z
    assert apply_named("Hhat", ZB, SYM) == 2 * w * (2 + GAMMA) * ZB


def test_component_zero_on_degree_one_is_pure_cross_term():
    # (Hhat_0 - E_1/2) z = -w (1 + 2 k1) zb, checked by hand
    w = MPoly.var("w")
    e1_half = w * (2 + GAMMA)
    res = apply_named("Hhat_0", Z, SYM) - e1_half * Z
    assert res == -w * (1 + 2 * K1) * ZB


def test_component_sums_reassemble_full_operators():
    for p in monomial_span(6):
        full = apply_named("Hhat", p, DEFAULT_PARAMS)
        assert apply_named("Hhat_0", p, DEFAULT_PARAMS) + \
            apply_named("Hhat_2", p, DEFAULT_PARAMS) == full
        assert apply_named("Hhat_1", p, DEFAULT_PARAMS) + \
            apply_named("Hhat_3", p, DEFAULT_PARAMS) == full
        bare = apply_named("Hcal", p, DEFAULT_PARAMS)
        assert apply_named("H_0", p, DEFAULT_PARAMS) + \
            apply_named("H_2", p, DEFAULT_PARAMS) == bare
        assert apply_named("H_1", p, DEFAULT_PARAMS) + \
            apply_named("H_3", p, DEFAULT_PARAMS) == bare


def test_components_are_half_anticommutators_of_ladder_pairs():
    for j in range(4):
        lo = named(f"Lower_{j}")
        hi = named(f"Raise_{j}")
        phase = QI.i_power(j) * Q(1, 2)
        for p in monomial_span(5):
            anti = (apply(lo, apply(hi, p, DEFAULT_PARAMS), DEFAULT_PARAMS)
                    + apply(hi, apply(lo, p, DEFAULT_PARAMS), DEFAULT_PARAMS))
            assert phase * anti == apply_named(f"Hhat_{j}", p,
                                               DEFAULT_PARAMS)


def test_group_conjugation_permutes_components():
    span = monomial_span(5)
    for g in ALL_ELEMENTS:
        for j in range(4):
            jj = (2 * g.k - j) % 4 if g.refl else (j + 2 * g.k) % 4
            for p in span:
                lhs = act(inv(g),
                          apply_named(f"Hhat_{j}", act(g, p),
                                      DEFAULT_PARAMS))
                assert lhs == apply_named(f"Hhat_{jj}", p, DEFAULT_PARAMS)


def test_central_operator_matches_group_algebra_and_commutes():
    # R is central for the group algebra and commutes with the conserved
    # quantities, though not with the first-order operators themselves
    pr = DEFAULT_PARAMS
    for p in monomial_span(4):
        rp = apply_named("R", p, pr)
        assert rp == central_element_apply(p, pr)
        for name in ("Hhat", "J2"):
            assert apply_named(name, rp, pr) == \
                apply_named("R", apply_named(name, p, pr), pr)


def test_square_sum_collapses_to_invariants():
    # sum of squared components = 3/2 Hhat^2 - 2 w^2 J^2 - 2 w^2 R
    pr = DEFAULT_PARAMS
    w2 = pr.w ** 2

    def sq(name, p):
        return apply_named(name, apply_named(name, p, pr), pr)

    for p in monomial_span(4):
        lhs = MPoly.zero()
        for j in range(4):
            lhs = lhs + sq(f"Hhat_{j}", p)
        rhs = Q(3, 2) * sq("Hhat", p) - 2 * w2 * apply_named("J2", p, pr) \
            - 2 * w2 * apply_named("R", p, pr)
        assert lhs == rhs


def test_signature_invariant_closed_form():
    # Khat = -1/2 Hhat^2 + 2 w^2 J^2 + 2 w^2 R + 4 (Hhat_0 - Hhat/2)^2
    pr = DEFAULT_PARAMS
    w2 = pr.w ** 2
    for p in monomial_span(4):
        h = apply_named("Hhat", p, pr)
        hh = apply_named("Hhat", h, pr)
        half_diff = apply_named("Hhat_0", p, pr) - Q(1, 2) * h
        half_diff = (apply_named("Hhat_0", half_diff, pr)
                     - Q(1, 2) * apply_named("Hhat", half_diff, pr))
        rhs = -Q(1, 2) * hh + 2 * w2 * apply_named("J2", p, pr) \
            + 2 * w2 * apply_named("R", p, pr) + 4 * half_diff
        assert apply_named("Khat", p, pr) == rhs


def test_commutator_node():
    c = Commutator(named("T"), named("Tb"))
    for p in monomial_span(3):
        assert apply(c, p, DEFAULT_PARAMS).is_zero()


def test_expr_json_round_trip():
    for name in ("T", "Hhat_1", "Khat", "R", "Raise_2"):
        e = named(name)
        assert expr_from_json(expr_to_json(e)) == e
    c = Commutator(named("J2"), named("Khat"))
    assert expr_from_json(expr_to_json(c)) == c
    assert expr_from_json({"op": "named", "name": "Hcal"}) == named("Hcal")


def test_unknown_operator_name():
    with pytest.raises(KeyError):
        named("nope")
