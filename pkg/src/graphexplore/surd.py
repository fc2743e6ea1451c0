"""Exact arithmetic on numbers of the form ``a + b*sqrt(2)`` with rational a, b.

Only what the blocking comparisons and the competitive-ratio bounds need:
ring operations, division, exact sign, ordering and floor.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["QuadSurd", "SQRT2", "as_exact", "exact_sign"]


class QuadSurd:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadSurd):
            return other
        if isinstance(other, (int, Rational)):
            return QuadSurd(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadSurd(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadSurd(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadSurd(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadSurd:
        return QuadSurd(self.a, -self.b)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return QuadSurd(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: the larger magnitude wins; a^2 == 2 b^2 is impossible
        return sa if self.a * self.a > 2 * self.b * self.b else sb

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadSurd with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __floor__(self) -> int:
        guess = math.floor(float(self))
        while (self - guess).sign() < 0:
            guess -= 1
        while (self - (guess + 1)).sign() >= 0:
            guess += 1
        return guess

    def __repr__(self):
        return f"QuadSurd({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = "sqrt2" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt2"
        if not self.a:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{root}"


SQRT2 = QuadSurd(0, 1)


def as_exact(x):
    """Normalize ints, Fractions and surds; a surd with zero root part becomes a Fraction."""
    if isinstance(x, QuadSurd):
        return x.a if x.b == 0 else x
    return Fraction(x)


def exact_sign(x) -> int:
    if isinstance(x, QuadSurd):
        return x.sign()
    return (x > 0) - (x < 0)

