"""Gaussian rationals: exact elements of Q(i).

Stored as three integers ``(a, b, d)`` meaning ``(a + b i) / d`` with ``d > 0``
and ``gcd(a, b, d) == 1``, which keeps arithmetic to one gcd per operation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
import numbers
import re

__all__ = ["GaussianRational", "GR", "ZERO", "ONE", "I", "as_gr", "parse_rational"]


def _norm(a: int, b: int, d: int):
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(a, b, d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return a, b, d


class GaussianRational:
    __slots__ = ("_a", "_b", "_d", "_h")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._a, self._b, self._d = _norm(a, b, d)
        self._h = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._a, obj._b, obj._d = _norm(a, b, d)
        obj._h = None
        return obj

    # -- accessors
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    real = re
    imag = im

    def parts(self):
        """Integers ``(a, b, d)`` with value ``(a + b i)/d``."""
        return self._a, self._b, self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    # -- arithmetic
    def conjugate(self) -> "GaussianRational":
        if self._b == 0:
            return self
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d, obj._h = self._a, -self._b, self._d, None
        return obj

    def abs2(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            a1, b1, d1 = self._a, self._b, self._d
            a2, b2, d2 = other._a, other._b, other._d
            if d1 == d2:
                return GaussianRational._raw(a1 + a2, b1 + b2, d1)
            return GaussianRational._raw(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)
        if isinstance(other, int):
            return GaussianRational._raw(self._a + other * self._d, self._b, self._d)
        if isinstance(other, Fraction):
            return self + GaussianRational(other)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d, obj._h = -self._a, -self._b, self._d, None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return self + (-other)
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a1, b1, d1 = self._a, self._b, self._d
            a2, b2, d2 = other._a, other._b, other._d
            return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)
        if isinstance(other, int):
            return GaussianRational._raw(self._a * other, self._b * other, self._d)
        if isinstance(other, Fraction):
            return GaussianRational._raw(
                self._a * other.numerator, self._b * other.numerator, self._d * other.denominator
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        # d/(a+bi) = d(a-bi)/(a^2+b^2)
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._raw(self._a, self._b, self._d * other)
        if isinstance(other, Fraction):
            return self * (1 / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, int):
            return self._b == 0 and self._d == 1 and self._a == other
        if isinstance(other, Fraction):
            return self._b == 0 and Fraction(self._a, self._d) == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            if self._b == 0:
                self._h = hash(Fraction(self._a, self._d))
            else:
                self._h = hash((self._a, self._b, self._d))
        return self._h

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GR({self.re}, {self.im})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}i"

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    def mod(self, p: int, sqrt_minus_one: int) -> int:
        """Image under Z[i]_(p) -> F_p sending i to ``sqrt_minus_one``."""
        if self._d % p == 0:
            raise ZeroDivisionError("denominator divisible by modulus")
        return (self._a + self._b * sqrt_minus_one) * pow(self._d, -1, p) % p


GR = GaussianRational
ZERO = GaussianRational()
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

numbers.Complex.register(GaussianRational)

_RAT = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int, or a decimal string into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, str):
        m = _RAT.match(text)
        if m:
            return Fraction(int(m.group(1)), int(m.group(2) or 1))
        try:
            return Fraction(text.strip())
        except ValueError:
            pass
    raise ValueError(f"not a rational: {text!r}")


def as_gr(x) -> GaussianRational:
    """Coerce ints, Fractions, JSON dicts and ``GaussianRational`` to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, str):
        return GaussianRational(parse_rational(x))
    if isinstance(x, dict):
        return GaussianRational(parse_rational(x.get("re", 0)), parse_rational(x.get("im", 0)))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return GaussianRational(parse_rational(x[0]), parse_rational(x[1]))
    raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
