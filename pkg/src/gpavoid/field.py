"""Exact arithmetic in Q(sqrt 3)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "QSqrt3"]


class QSqrt3:
    """The number a + b*sqrt(3) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x: Scalar) -> QSqrt3:
        if isinstance(x, QSqrt3):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(sqrt 3)")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QSqrt3:
        return QSqrt3(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def inverse(self) -> QSqrt3:
        d = self.norm()
        if d == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        return QSqrt3(self.a / d, -self.b / d)

    def __add__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QSqrt3:
        return QSqrt3(-self.a, -self.b)

    def __mul__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.b and not o.b:
            return QSqrt3(self.a * o.a)
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("division by zero in Q(sqrt 3)")
            return QSqrt3(self.a / o.a, self.b / o.a)
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> QSqrt3:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other: object) -> bool:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"QSqrt3({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt3"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt3"


def _coerce_or_none(x: object) -> QSqrt3 | None:
    if isinstance(x, QSqrt3):
        return x
    if isinstance(x, (int, Rational)):
        return QSqrt3(Fraction(x))
    return None


SQRT3 = QSqrt3(0, 1)
HALF_SQRT3 = QSqrt3(0, Fraction(1, 2))
