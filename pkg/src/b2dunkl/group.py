"""The symmetry group of the square in complex coordinates.

Eight elements: rotations ``rot k`` sending z to i^k z, and reflections
``ref k`` sending z to i^k zb.  ``mul(a, b)`` composes as "apply a, then b";
with that convention the polynomial action satisfies
``act(g, act(h, p)) == act(mul(g, h), p)``.

Also hosts the four mirror lines ``ell(j) = z - i^j zb`` whose vanishing loci
are the reflection hyperplanes, the four linear characters of the group, and
the central group-algebra element built from the couplings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .poly import MPoly
from .scalars import QI


@dataclass(frozen=True, order=True)
class GroupElem:
    refl: bool
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)


def rotation(k: int) -> GroupElem:
    return GroupElem(False, k)


def reflection(k: int) -> GroupElem:
    return GroupElem(True, k)


IDENTITY = rotation(0)
ALL_ELEMENTS: Tuple[GroupElem, ...] = tuple(
    [rotation(k) for k in range(4)] + [reflection(k) for k in range(4)]
)


def mul(a: GroupElem, b: GroupElem) -> GroupElem:
    """Composite "apply a, then b"."""
    if not a.refl and not b.refl:
        return rotation(a.k + b.k)
    if not a.refl:
        return reflection(b.k - a.k)
    if not b.refl:
        return reflection(a.k + b.k)
    return rotation(b.k - a.k)


def inv(g: GroupElem) -> GroupElem:
    return g if g.refl else rotation(-g.k)


def elem_name(g: GroupElem) -> str:
    return f"{'ref' if g.refl else 'rot'}{g.k}"


def parse_elem(name: str) -> GroupElem:
    kind, knum = name[:3], name[3:]
    if kind not in ("rot", "ref") or knum not in "0123" or len(knum) != 1:
        raise ValueError(f"not a group element name: {name!r}")
    return GroupElem(kind == "ref", int(knum))


def act(g: GroupElem, p: MPoly) -> MPoly:
    """Action on polynomials: (g.p)(x) = p(x moved by g).

    Only the coordinates z, zb transform; all other variables are spectators.
    """
    zi = p.vars.index("z") if "z" in p.vars else -1
    zbi = p.vars.index("zb") if "zb" in p.vars else -1
    if (zi < 0 and zbi < 0) or g == IDENTITY:
        return p
    swap_both = g.refl and zi >= 0 and zbi >= 0
    out = {}
    for exp, c in p.terms.items():
        ez = exp[zi] if zi >= 0 else 0
        ezb = exp[zbi] if zbi >= 0 else 0
        nc = QI.i_power(g.k * (ez - ezb)) * c
        if swap_both:
            lexp = list(exp)
            lexp[zi], lexp[zbi] = ezb, ez
            nexp = tuple(lexp)
        else:
            nexp = exp
        prev = out.get(nexp)
        out[nexp] = nc + prev if prev is not None else nc
    vars_ = p.vars
    if g.refl and not swap_both:
        # a reflection turns a pure-z polynomial into a pure-zb one
        vars_ = tuple({"z": "zb", "zb": "z"}.get(v, v) for v in vars_)
    return MPoly(vars_, out)


def transform_pair(g: GroupElem, pair: Tuple[MPoly, MPoly]) -> Tuple[MPoly, MPoly]:
    """Coordinates of a point moved by g, given its coordinates (A, B)."""
    a, b = pair
    ik, imk = QI.i_power(g.k), QI.i_power(-g.k)
    if g.refl:
        return (ik * b, imk * a)
    return (ik * a, imk * b)


def char_value(r: int, g: GroupElem) -> int:
    """The four linear characters, indexed 0..3."""
    if r not in (0, 1, 2, 3):
        raise ValueError("character index out of range")
    if r == 0:
        return 1
    if r == 3:
        return -1 if g.refl else 1
    sign = -1 if g.k % 2 else 1
    if r == 2 and g.refl:
        return -sign
    return sign


_ELL = tuple(MPoly.var("z") - QI.i_power(j) * MPoly.var("zb")
             for j in range(4))


def ell(j: int) -> MPoly:
    """Mirror line z - i^j zb."""
    return _ELL[j % 4]


def central_element_terms(params) -> List[Tuple[GroupElem, MPoly]]:
    """Group-algebra coefficients of the central coupling element.

    The element is 1 + 4(k0^2+k1^2) rot2 + 2 k0 (ref0+ref2)
    + 2 k1 (ref1+ref3) + 4 k0 k1 (rot1+rot3); it commutes with the whole
    group algebra and with both Dunkl operators.
    """
    k0, k1 = params.kappa(0), params.kappa(1)
    one = MPoly.const(1)
    return [
        (rotation(0), one),
        (rotation(1), 4 * k0 * k1 * one),
        (rotation(2), 4 * (k0 * k0 + k1 * k1) * one),
        (rotation(3), 4 * k0 * k1 * one),
        (reflection(0), 2 * k0 * one),
        (reflection(1), 2 * k1 * one),
        (reflection(2), 2 * k0 * one),
        (reflection(3), 2 * k1 * one),
    ]


def central_element_apply(p: MPoly, params) -> MPoly:
    acc = MPoly.zero()
    for g, coeff in central_element_terms(params):
        acc = acc + coeff * act(g, p)
    return acc
