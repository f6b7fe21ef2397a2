"""Model parameters: two reflection couplings and the oscillator frequency.

Parameters are either all numeric (exact rationals) or all symbolic, in which
case they enter polynomials as the variables ``k0``, ``k1``, ``w``.  Numeric
parameters must be generic for the degrees being processed: the recurring
denominators ``2n + k0 + k1 + r`` must not vanish, otherwise basis functions
degenerate and coefficient tables lose meaning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .poly import MPoly
from .scalars import format_rat, parse_rat

RatOrPoly = Union[Fraction, MPoly]


@dataclass(frozen=True)
class Params:
    k0: Optional[Fraction]
    k1: Optional[Fraction]
    w: Optional[Fraction]

    def __post_init__(self):
        vals = (self.k0, self.k1, self.w)
        if any(v is None for v in vals):
            if not all(v is None for v in vals):
                raise ValueError("parameters must be all numeric or all "
                                 "symbolic")
            return
        if self.k0 < 0 or self.k1 < 0:
            raise ValueError("couplings must be nonnegative")
        if self.w <= 0:
            raise ValueError("frequency must be positive")

    @classmethod
    def numeric(cls, k0, k1, w) -> "Params":
        def conv(v):
            return parse_rat(v) if isinstance(v, str) else Fraction(v)
        return cls(conv(k0), conv(k1), conv(w))

    @classmethod
    def symbolic(cls) -> "Params":
        return cls(None, None, None)

    @property
    def is_symbolic(self) -> bool:
        return self.k0 is None

    # parameter values as ring elements ----------------------------------

    def kappa(self, j: int) -> RatOrPoly:
        """Coupling attached to reflection class j mod 2."""
        if self.is_symbolic:
            return MPoly.var("k0" if j % 2 == 0 else "k1")
        return self.k0 if j % 2 == 0 else self.k1

    def omega(self) -> RatOrPoly:
        return MPoly.var("w") if self.is_symbolic else self.w

    def gamma(self) -> RatOrPoly:
        """2*k0 + 2*k1, the total coupling weight."""
        if self.is_symbolic:
            return 2 * MPoly.var("k0") + 2 * MPoly.var("k1")
        return 2 * self.k0 + 2 * self.k1

    def instantiate(self, p: MPoly) -> MPoly:
        """Substitute numeric parameter values into a polynomial."""
        if self.is_symbolic:
            return p
        return p.subst({"k0": self.k0, "k1": self.k1, "w": self.w})

    # genericity -----------------------------------------------------------

    def is_generic(self, max_degree: int) -> bool:
        """No vanishing structural denominator up to the given degree."""
        if self.is_symbolic:
            return True
        total = self.k0 + self.k1
        for n in range(max_degree // 4 + 2):
            for r in (-1, 0, 1, 2, 3):
                if 2 * n + total + r == 0:
                    return False
        return True

    def require_generic(self, max_degree: int) -> None:
        if not self.is_generic(max_degree):
            raise ValueError(
                f"parameters k0={self.k0}, k1={self.k1} are not generic "
                f"up to degree {max_degree}: a structural denominator "
                "2n + k0 + k1 + r vanishes")

    def label(self) -> str:
        if self.is_symbolic:
            return "symbolic"
        return (f"k0={format_rat(self.k0)},k1={format_rat(self.k1)},"
                f"w={format_rat(self.w)}")

    def to_json_dict(self) -> dict:
        if self.is_symbolic:
            return {"symbolic": True}
        return {"k0": format_rat(self.k0), "k1": format_rat(self.k1),
                "w": format_rat(self.w)}


DEFAULT_PARAMS = Params(Fraction(3, 7), Fraction(5, 11), Fraction(2, 3))

# alternative generic triples used for stability checks of contested formulas
EXTRA_PARAM_SETS = (
    Params(Fraction(7, 5), Fraction(2, 9), Fraction(5, 7)),
    Params(Fraction(4, 9), Fraction(10, 13), Fraction(3, 2)),
)
