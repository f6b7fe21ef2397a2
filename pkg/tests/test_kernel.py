"""Prover states against hand-computed values, then the identity catalogue.

The first half pins the action of the generators on explicit states; the
second half runs every catalogued identity fully symbolically and checks
the expected verdicts, including the one deliberate refutation.
"""

import time
from fractions import Fraction as Q

import pytest

from b2dunkl.group import ALL_ELEMENTS, IDENTITY, mul, reflection, rotation
from b2dunkl.kernel import (
    IDENTITIES, IDENTITY_NAMES, KernelState, ProofResult, get_identity,
    k_apply, k_initial, prove, prove_named,
)
from b2dunkl.operators import Commutator, Compose, GroupOp, Mul, named
from b2dunkl.params import Params
from b2dunkl.poly import MPoly
from b2dunkl.scalars import QI

Z = MPoly.var("z")
ZB = MPoly.var("zb")
U = MPoly.var("u")
UB = MPoly.var("ub")
K0 = MPoly.var("k0")


def test_seed_state_and_serialization():
    seed = k_initial()
    assert seed.parts == {IDENTITY: MPoly.const(1)}
    assert not seed.is_zero()
    # zero amplitudes are dropped on construction
    assert KernelState({IDENTITY: MPoly.zero()}).is_zero()
    assert (seed - seed).is_zero()

    mixed = KernelState({reflection(2): 3 * Z * U - 1,
                         rotation(1): MPoly.const(Q(5, 7))})
    again = KernelState.from_json_dict(mixed.to_json_dict())
    assert again == mixed
    with pytest.raises(AttributeError):
        seed.parts = {}


def test_conjugate_generator_on_seed():
    state = k_apply(named("Tb"), k_initial())
    assert state == KernelState({IDENTITY: Q(1, 2) * U})
    # and the plain generator picks the conjugate dual variable
    assert k_apply(named("T"), k_initial()) == \
        KernelState({IDENTITY: Q(1, 2) * UB})


def test_generator_on_even_difference():
    start = KernelState({IDENTITY: Z * Z - ZB * ZB})
    state = k_apply(named("T"), start)
    assert state == KernelState({
        IDENTITY: Q(1, 2) * (Z * Z - ZB * ZB) * UB + 2 * Z,
        reflection(0): 2 * K0 * (Z + ZB),
        reflection(2): 2 * K0 * (Z - ZB),
    })


def test_group_ops_relabel_and_compose():
    assert k_apply(GroupOp(reflection(0)), k_initial()) == \
        KernelState({reflection(0): MPoly.const(1)})
    probe = KernelState({IDENTITY: Z + 2 * U, reflection(1): ZB * ZB - 3})
    for g in ALL_ELEMENTS:
        for h in ALL_ELEMENTS:
            two = k_apply(GroupOp(g), k_apply(GroupOp(h), probe))
            one = k_apply(GroupOp(mul(g, h)), probe)
            assert two == one


def test_dual_polynomial_eigen_relation():
    # on amplitudes free of z, zb both generators act by multiplication
    for q in (MPoly.const(1), U, 3 * U * U * UB + U - 7, UB ** 3):
        state = KernelState({IDENTITY: q})
        assert k_apply(named("Tb"), state) == \
            KernelState({IDENTITY: Q(1, 2) * U * q})
        assert k_apply(named("T"), state) == \
            KernelState({IDENTITY: Q(1, 2) * UB * q})


def test_numeric_couplings_specialize_symbolic_result():
    pr = Params.numeric(Q(3, 7), Q(5, 11), Q(2, 3))
    start = KernelState({IDENTITY: Z ** 3 - Z * ZB * ZB})
    sym = k_apply(named("Hcal"), start)
    num = k_apply(named("Hcal"), start, pr)
    assert num == KernelState({g: pr.instantiate(p)
                               for g, p in sym.parts.items()})


def test_catalogue_verdicts():
    assert set(IDENTITY_NAMES) == set(IDENTITIES)
    for name in IDENTITY_NAMES:
        res = prove_named(name)
        assert res.proven == IDENTITIES[name].provable, name
        assert res.name == name


def test_square_sum_identity_is_fast():
    t0 = time.monotonic()
    res = prove_named("component-square-sum")
    assert res.proven
    assert time.monotonic() - t0 < 60


def test_refutation_carries_nonzero_witness():
    res = prove_named("angular-quartic")
    assert not res.proven
    assert res.status == "REFUTED"
    assert not res.residual.is_zero()
    blob = res.to_json_dict()
    assert blob["status"] == "REFUTED"
    assert KernelState.from_json_dict(blob["witness"]) == res.residual
    # a proven result serializes without a witness
    ok = prove_named("component-sum-02")
    assert ok.to_json_dict() == {"status": "PROVEN",
                                 "identity": "component-sum-02"}


def test_prove_defaults_to_zero_rhs():
    good = prove(Commutator(Mul(Z * ZB), named("T")), Mul(-ZB))
    assert good.proven
    bad = prove(named("T"))
    assert not bad.proven
    assert IDENTITY in bad.residual.parts


def test_unknown_identity_is_rejected():
    with pytest.raises(KeyError):
        get_identity("no-such-identity")
    assert get_identity("quartic-hamiltonian").provable
