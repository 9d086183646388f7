"""Coefficient backends: double-precision complex and exact rational complex.

Float mode uses plain ``int | float | complex`` scalars.  Exact mode uses
``int | Fraction | RationalComplex``; all ring operations stay exact, which is
what the identity checks and the factorial-weighted golden values rely on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union


class RationalComplex:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("RationalComplex is immutable")

    @staticmethod
    def _coerce(x) -> "RationalComplex | None":
        if isinstance(x, RationalComplex):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalComplex(x, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = RationalComplex(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"RationalComplex({self.re!r}, {self.im!r})"


Scalar = Union[int, float, complex, Fraction, RationalComplex]

EXACT_TYPES = (int, Fraction, RationalComplex)


def is_exact(x) -> bool:
    return isinstance(x, EXACT_TYPES)


def scalar_zero_like(x) -> Scalar:
    return RationalComplex() if isinstance(x, RationalComplex) else type(x)(0)


def magnitude(x) -> float:
    """|x| as a float, for residual and scale measurements."""
    if isinstance(x, RationalComplex):
        return math.sqrt(float(x.abs2()))
    return abs(float(x.real)) if isinstance(x, (int, Fraction)) else abs(x)


def to_complex(x) -> complex:
    return complex(x)
