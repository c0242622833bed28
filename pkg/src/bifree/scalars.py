"""Exact complex-rational arithmetic.

Every numeric value in this library (moments, cumulants, Moebius values) is
an exact complex number whose real and imaginary parts are rationals.  There
is deliberately no floating-point fallback: equality checks in the test and
verification suites are plain ``==``.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["Scalar", "ZERO", "ONE", "parse_scalar", "format_scalar"]

_RAT = r"-?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_IMAG_RE = re.compile(rf"^({_RAT})i$")
_BOTH_RE = re.compile(rf"^({_RAT})([+-]\d+(?:/\d+)?)i$")


class Scalar:
    """A complex number with ``Fraction`` real and imaginary parts.

    Instances are treated as immutable; arithmetic returns new objects.

    >>> Scalar(1, 2) * Scalar(1, -2)
    Scalar('5')
    >>> print(Scalar(Fraction(1, 2)) - Scalar(Fraction(3, 4)))
    -1/4
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _coerce(other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("scalar division by zero")
        if not self.im and not o.im:
            return Scalar(self.re / o.re)
        den = o.re * o.re + o.im * o.im
        return Scalar((self.re * o.re + self.im * o.im) / den,
                      (self.im * o.re - self.re * o.im) / den)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar('{format_scalar(self)}')"

    @staticmethod
    def parse(text: str) -> "Scalar":
        return parse_scalar(text)


ZERO = Scalar(0)
ONE = Scalar(1)


def _fmt_frac(q: Fraction) -> str:
    return str(q)


def format_scalar(value: Scalar) -> str:
    """Serialize a scalar as ``p/q``, ``r/si`` or ``p/q+r/si``."""
    if not value.im:
        return _fmt_frac(value.re)
    if not value.re:
        return _fmt_frac(value.im) + "i"
    sign = "+" if value.im > 0 else "-"
    return f"{_fmt_frac(value.re)}{sign}{_fmt_frac(abs(value.im))}i"


def parse_scalar(text: str) -> Scalar:
    """Parse the serialization produced by :func:`format_scalar`.

    >>> parse_scalar("1/2-1/3i")
    Scalar('1/2-1/3i')
    """
    s = text.strip().replace(" ", "")
    m = _REAL_RE.match(s)
    if m:
        return Scalar(Fraction(m.group(1)))
    m = _IMAG_RE.match(s)
    if m:
        return Scalar(0, Fraction(m.group(1)))
    m = _BOTH_RE.match(s)
    if m:
        return Scalar(Fraction(m.group(1)), Fraction(m.group(2)))
    raise ValueError(f"malformed scalar: {text!r}")
