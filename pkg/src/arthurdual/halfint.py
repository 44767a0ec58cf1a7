"""Exact half-integer arithmetic.

Every exponent in this package (twists x, reducibility points alpha,
segment ends A, B, parities) lives in (1/2)Z.  Values are stored as the
doubled integer, so all arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, value=0, *, twice=None):
        if twice is not None:
            self.twice = int(twice)
            return
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, int):
            self.twice = 2 * value
        elif isinstance(value, Fraction):
            if (2 * value).denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            self.twice = int(2 * value)
        elif isinstance(value, float):
            if (2 * value) != int(2 * value):
                raise ValueError(f"{value} is not a half-integer")
            self.twice = int(2 * value)
        else:
            raise TypeError(f"cannot build HalfInt from {value!r}")

    @staticmethod
    def of_doubled(n):
        return HalfInt(twice=n)

    @staticmethod
    def parse(text):
        """Parse '3/2', '-1/2', '0', '2', or a decimal like '.5'/'2.5'."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) != 2:
                f = Fraction(int(num), int(den))
                return HalfInt(f)
            return HalfInt(twice=int(num))
        if "." in text:
            return HalfInt(float(text))
        return HalfInt(int(text))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        return HalfInt(twice=self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(twice=self.twice - HalfInt(other).twice)

    def __rsub__(self, other):
        return HalfInt(twice=HalfInt(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(twice=-self.twice)

    def __abs__(self):
        return HalfInt(twice=abs(self.twice))

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt(twice=self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    # -- predicates ---------------------------------------------------

    def is_integer(self):
        return self.twice % 2 == 0

    def floor(self):
        """Integer floor, as a plain int."""
        return self.twice // 2

    def as_fraction(self):
        return Fraction(self.twice, 2)

    def as_int(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other):
        try:
            return self.twice == HalfInt(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt(other).twice

    def __hash__(self):
        return hash(Fraction(self.twice, 2))

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


ZERO = HalfInt(0)
HALF = HalfInt(twice=1)
ONE = HalfInt(1)
