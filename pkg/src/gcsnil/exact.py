"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Rational literals are written ``p/q`` (``q`` omitted when 1); Gaussian
rationals as ``a+bi`` with either part optional (``i``, ``-2/3i``, ``1-i``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

Scalar = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational literal {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Element ``re + im*i`` of Q(i). Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + im
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational._raw(Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational._raw(self.re * other.re, self.im * other.re)
            if not self.im:
                return GaussianRational._raw(self.re * other.re, self.re * other.im)
            return GaussianRational._raw(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Rational)):
            return GaussianRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def norm(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._raw(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational._raw(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons ----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({format_complex(self)!r})"

    def __str__(self):
        return format_complex(self)


I = GaussianRational(0, 1)
ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def as_complex(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational._raw(Fraction(x), Fraction(0))


def conj(x):
    """Complex conjugate of a scalar; identity on rationals."""
    return x.conjugate() if isinstance(x, GaussianRational) else x


def format_complex(z) -> str:
    z = as_complex(z)
    if not z.im:
        return format_rational(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = format_rational(z.im) + "i"
    if not z.re:
        return imag
    sep = "" if imag.startswith("-") else "+"
    return f"{format_rational(z.re)}{sep}{imag}"


_COMPLEX_RE = re.compile(
    r"^(?:(?P<re>[+-]?\d+(?:/\d+)?)(?P<im>[+-](?:\d+(?:/\d+)?)?i)?|(?P<only>[+-]?(?:\d+(?:/\d+)?)?i))$"
)


def parse_complex(text: str) -> GaussianRational:
    """Parse ``a``, ``bi``, or ``a+bi`` (rational ``a``, ``b``)."""
    s = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not m:
        raise ValueError(f"malformed complex literal {text!r}")
    re_part = parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im") or m.group("only")
    im_part = Fraction(0)
    if im_text:
        body = im_text[:-1]
        if body in ("", "+"):
            im_part = Fraction(1)
        elif body == "-":
            im_part = Fraction(-1)
        else:
            im_part = parse_rational(body)
    return GaussianRational(re_part, im_part)
