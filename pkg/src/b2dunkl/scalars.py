"""Exact scalar arithmetic over the Gaussian rationals.

Every number in this package is either a ``fractions.Fraction`` or a ``QI``,
a complex number with rational real and imaginary parts.  There is no floating
point anywhere; equality of computed quantities always means exact equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Q = Fraction

RatLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QI"]


def parse_rat(text: str) -> Fraction:
    """Parse 'p/q' or 'p' into an exact rational.

    Decimal notation is rejected on purpose: callers must state exact values.
    """
    s = text.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"not an exact rational literal: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational literal: {text!r}") from exc


def format_rat(value: RatLike) -> str:
    """Render a rational as 'p/q' with the denominator always explicit."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


class QI:
    """Gaussian rational re + im*i with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @classmethod
    def of(cls, value: ScalarLike) -> "QI":
        if isinstance(value, QI):
            return value
        if not isinstance(value, (int, Fraction)):
            raise TypeError(f"not an exact scalar: {value!r}")
        return cls(value)

    @classmethod
    def i_power(cls, k: int) -> "QI":
        """i**k for any integer k."""
        return _I_POWERS[k % 4]

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QI(other)
        if not isinstance(other, QI):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # matches hash of plain rationals when imaginary part vanishes
        return hash((self.re, self.im))

    @staticmethod
    def _as_scalar(other):
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Fraction)):
            return QI(other)
        return None

    def __add__(self, other: ScalarLike) -> "QI":
        o = self._as_scalar(other)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "QI":
        o = self._as_scalar(other)
        if o is None:
            return NotImplemented
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "QI":
        o = self._as_scalar(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other: ScalarLike) -> "QI":
        o = self._as_scalar(other)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "QI":
        o = self._as_scalar(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        return QI((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other: ScalarLike) -> "QI":
        return QI.of(other) / self

    def __pow__(self, k: int) -> "QI":
        if k < 0:
            return QI(1) / self ** (-k)
        out = QI(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self) -> str:
        return f"QI({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return format_rat(self.re)
        return f"{format_rat(self.re)}+{format_rat(self.im)}i"


_I_POWERS = (QI(1), QI(0, 1), QI(-1), QI(0, -1))

ZERO = QI(0)
ONE = QI(1)
I = QI(0, 1)
