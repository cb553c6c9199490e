"""Abelian coefficient groups: cyclic groups Z_m and the torsion group Q/Z.

Elements are plain Python values (``int`` residues for ``Cyclic``,
``Fraction`` in ``[0, 1)`` for ``TorsionRational``) so cocycle tables stay
hashable and comparable.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidParamsError, ParseError


@dataclass(frozen=True)
class Cyclic:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParamsError("cyclic modulus must be positive")

    zero = 0

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def scale(self, k, a):
        return (k * a) % self.m

    def element(self, v):
        return int(v) % self.m

    def is_element(self, v):
        return isinstance(v, int) and 0 <= v < self.m

    def annihilated_by(self, a, d):
        return (d * a) % self.m == 0

    def elements(self):
        return range(self.m)

    def hom_generators(self, d):
        """Generator of Hom(Z_d, Z_m) as the image of 1 (``None`` if trivial)."""
        k = gcd(d, self.m)
        return None if k == 1 else self.m // k

    def characters(self, d):
        """All images of a generator of Z_d under homomorphisms to Z_m."""
        step = self.m // gcd(d, self.m)
        return list(range(0, self.m, step))

    def format(self, a):
        return str(a)

    def parse(self, token):
        try:
            v = int(token)
        except ValueError:
            raise ParseError(f"{token!r} is not an integer") from None
        if not 0 <= v < self.m:
            raise ParseError(f"{v} is not a residue mod {self.m}")
        return v

    @property
    def label(self):
        return f"Z{self.m}"

    def render(self, a):
        return cmath.exp(2j * cmath.pi * a / self.m)


@dataclass(frozen=True)
class TorsionRational:
    """Q/Z, standing in exactly for the roots of unity in C^x."""

    zero = Fraction(0)

    @staticmethod
    def _red(a):
        a = Fraction(a)
        return a - (a.numerator // a.denominator)

    def add(self, a, b):
        return self._red(a + b)

    def neg(self, a):
        return self._red(-a)

    def sub(self, a, b):
        return self._red(a - b)

    def scale(self, k, a):
        return self._red(k * a)

    def element(self, v):
        return self._red(v)

    def is_element(self, v):
        return isinstance(v, Fraction) and 0 <= v < 1

    def annihilated_by(self, a, d):
        return self._red(d * a) == 0

    def hom_generators(self, d):
        return None if d == 1 else Fraction(1, d)

    def characters(self, d):
        return [Fraction(k, d) for k in range(d)]

    def format(self, a):
        a = Fraction(a)
        return "0" if a == 0 else f"{a.numerator}/{a.denominator}"

    def parse(self, token):
        try:
            v = Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{token!r} is not a fraction") from None
        if not 0 <= v < 1:
            raise ParseError(f"{token} is not reduced into [0, 1)")
        return v

    @property
    def label(self):
        return "QZ"

    def render(self, a):
        return cmath.exp(2j * cmath.pi * float(a))


QZ = TorsionRational()


def parse_coefficients(label: str):
    """``Z<m>`` or ``QZ``."""
    label = label.strip()
    if label.upper() == "QZ":
        return QZ
    if label[:1] in "Zz":
        try:
            return Cyclic(int(label[1:]))
        except ValueError:
            pass
    raise ParseError(f"unknown coefficient group {label!r} (expected Z<m> or QZ)")
