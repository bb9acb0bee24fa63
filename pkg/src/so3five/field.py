"""Exact arithmetic in the real quadratic field Q(sqrt 3).

Elements are pairs ``a + b*sqrt(3)`` with ``fractions.Fraction`` parts.  The
text form uses ``s3`` for sqrt(3), e.g. ``1/2*s3`` or ``(1+2*s3)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "QSqrt3"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
class QSqrt3:
    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0) -> None:
        self._a = _frac(a)
        self._b = _frac(b)

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return self._a

    @property
    def b(self) -> Fraction:
        """Coefficient of sqrt(3)."""
        return self._b

    @classmethod
    def coerce(cls, x: Scalar) -> QSqrt3:
        if isinstance(x, QSqrt3):
            return x
        return cls(_frac(x), 0)

    def is_zero(self) -> bool:
        return not self._a and not self._b

    def is_rational(self) -> bool:
        return not self._b

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSqrt3):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return not self._b and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b))

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(3), decided without floats."""
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        return sa if a * a > 3 * b * b else sb

    def __lt__(self, other: Scalar) -> bool:
        return (self - QSqrt3.coerce(other)).sign() < 0

    def __neg__(self) -> QSqrt3:
        return QSqrt3(-self._a, -self._b)

    def __pos__(self) -> QSqrt3:
        return self

    def __add__(self, other: Scalar) -> QSqrt3:
        if not isinstance(other, (QSqrt3, int, Fraction)):
            return NotImplemented
        o = QSqrt3.coerce(other)
        return QSqrt3(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> QSqrt3:
        if not isinstance(other, (QSqrt3, int, Fraction)):
            return NotImplemented
        o = QSqrt3.coerce(other)
        return QSqrt3(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: Scalar) -> QSqrt3:
        return QSqrt3.coerce(other) - self

    def __mul__(self, other: Scalar) -> QSqrt3:
        if not isinstance(other, (QSqrt3, int, Fraction)):
            return NotImplemented
        o = QSqrt3.coerce(other)
        a, b, c, d = self._a, self._b, o._a, o._b
        return QSqrt3(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt3:
        """Galois conjugate a - b*sqrt(3)."""
        return QSqrt3(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 3 b^2; nonzero for every nonzero element."""
        return self._a * self._a - 3 * self._b * self._b

    def inverse(self) -> QSqrt3:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        n = self.norm()
        return QSqrt3(self._a / n, -self._b / n)

    def __truediv__(self, other: Scalar) -> QSqrt3:
        if not isinstance(other, (QSqrt3, int, Fraction)):
            return NotImplemented
        return self * QSqrt3.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> QSqrt3:
        return QSqrt3.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QSqrt3:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self) -> QSqrt3 | None:
        """A square root inside Q(sqrt 3) with non-negative value, if one exists.

        Solves (p + q s3)^2 = a + b s3, i.e. p^2 + 3q^2 = a and 2pq = b.
        """
        if self.is_zero():
            return ZERO
        if self.sign() < 0:
            return None
        a, b = self._a, self._b
        disc = rational_sqrt(a * a - 3 * b * b)
        if disc is None:
            return None
        for p2 in ((a + disc) / 2, (a - disc) / 2):
            p = rational_sqrt(p2)
            if p is None:
                continue
            if p:
                q = b / (2 * p)
            else:
                q = rational_sqrt(a / 3)
                if q is None:
                    continue
            root = QSqrt3(p, q)
            if root * root == self:
                return root if root.sign() >= 0 else -root
        return None

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(3.0)

    def __repr__(self) -> str:
        return f"QSqrt3({self._a}, {self._b})"

    def __str__(self) -> str:
        return format_scalar(self)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x: QSqrt3) -> str:
    """Canonical text: ``a``, ``b*s3``, ``s3``, ``-s3`` or ``a+b*s3``."""
    a, b = x.a, x.b
    if not b:
        return _fmt_frac(a)
    if b == 1:
        irr = "s3"
    elif b == -1:
        irr = "-s3"
    else:
        irr = f"{_fmt_frac(b)}*s3"
    if not a:
        return irr
    sep = "" if irr.startswith("-") else "+"
    return f"{_fmt_frac(a)}{sep}{irr}"


ZERO = QSqrt3(0, 0)
ONE = QSqrt3(1, 0)
SQRT3 = QSqrt3(0, 1)
