"""Exact Gaussian rationals ``a + b i`` with ``a, b`` in Q.

Components are ``gmpy2.mpq``; they compare and hash equal to the matching
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_MPQ = type(mpq(0))
_Q0 = mpq(0)


def q(x) -> "mpq":
    """Exact rational from an int, Fraction, mpq or ``"p/q"`` string."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        f = Fraction(x)
        return mpq(f.numerator, f.denominator)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, _MPQ, Rational))


def _new(re, im) -> "GaussQ":
    z = object.__new__(GaussQ)
    z.re = re
    z.im = im
    return z


class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = q(re)
        self.im = q(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        return x if isinstance(x, GaussQ) else cls(x)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        if _is_scalar(other):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        if isinstance(other, GaussQ):
            return _new(self.re + other.re, self.im + other.im)
        if _is_scalar(other):
            return _new(self.re + q(other), self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussQ):
            return _new(self.re - other.re, self.im - other.im)
        if _is_scalar(other):
            return _new(self.re - q(other), self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussQ):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return _new(a * c, _Q0)
            return _new(a * c - b * d, a * d + b * c)
        if _is_scalar(other):
            other = q(other)
            return _new(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussQ.coerce(other)
        n = other.abs2()
        if not n:
            raise ZeroDivisionError("division by zero")
        return self * _new(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) / self

    def conjugate(self) -> "GaussQ":
        return _new(self.re, -self.im)

    def abs2(self):
        """Squared modulus, which stays rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussQ({qstr(self.re)}, {qstr(self.im)})"

    def __str__(self):
        re, im = _short(self.re), _short(self.im)
        if not self.im:
            return re
        if not self.re:
            return f"{im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{re}{sign}{_short(abs(self.im))}i"

    def to_json(self) -> dict:
        return {"re": qstr(self.re), "im": qstr(self.im)}


def _short(x) -> str:
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qstr(x) -> str:
    """Canonical ``p/q`` string for a rational (denominator always shown)."""
    x = q(x)
    return f"{x.numerator}/{x.denominator}"


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)
