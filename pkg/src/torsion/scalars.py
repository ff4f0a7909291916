"""Scalar layer: exact complex rationals and mpmath interop.

Two arithmetic modes run through the whole package.  In exact mode every
quantity is an ``int``/``fractions.Fraction`` or a :class:`ComplexRational`;
in mp mode the same formulas run on ``mpmath`` ``mpf``/``mpc`` values inside a
``workprec`` block.  All numeric kernels are written against the small common
protocol (``+ - * /``, ``.conjugate()``, ``.real``, ``.imag``) so one
implementation serves both modes; the helpers here do the coercion at the
boundaries.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_PRECISION = 256  # binary digits


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Strings go through ``Fraction(str)`` (so ``"1/3"`` and ``"0.25"`` both
    work, read as exact decimals); floats convert by their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class ComplexRational:
    """A complex number with Fraction real and imaginary parts.

    Supports mixed arithmetic with ``int`` and ``Fraction`` and mirrors the
    float-complex protocol (``.real``, ``.imag``, ``.conjugate()``) so generic
    code cannot tell it apart from ``complex``/``mpc``.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = re if isinstance(re, Fraction) else as_fraction(re)
        self._im = im if isinstance(im, Fraction) else as_fraction(im)

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self._re, -self._im)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(o._re - self._re, o._im - self._im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexRational(self._re * other, self._im * other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexRational(self._re / other, self._im / other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        den = o._re * o._re + o._im * o._im
        return ComplexRational(
            (self._re * o._re + self._im * o._im) / den,
            (self._im * o._re - self._re * o._im) / den,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return ComplexRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ComplexRational(1, 0)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / conversion --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __repr__(self):
        return f"ComplexRational({self._re!r}, {self._im!r})"

    def __str__(self):
        if self._im == 0:
            return str(self._re)
        if self._re == 0:
            return f"{self._im}*i"
        sign = "+" if self._im >= 0 else "-"
        return f"{self._re} {sign} {abs(self._im)}*i"


#: The exact imaginary unit.
I_UNIT = ComplexRational(0, 1)
_I_POWERS = (ComplexRational(1), I_UNIT, ComplexRational(-1), ComplexRational(0, -1))


def i_power(k: int) -> ComplexRational:
    """The exact value of i**k."""
    return _I_POWERS[k % 4]


def is_exact(value) -> bool:
    """True when ``value`` carries exact rational arithmetic."""
    return isinstance(value, (int, Fraction, ComplexRational))


def abs2(value):
    """|value|^2 in the value's own arithmetic (no square roots)."""
    if isinstance(value, (int, Fraction, float)):
        return value * value
    return (value * value.conjugate()).real


def real_part(value):
    return value.real if not isinstance(value, (int, Fraction, float)) else value


def to_mpf(value) -> mpmath.mpf:
    """Convert a real scalar to mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def to_mpc(value) -> mpmath.mpc:
    """Convert any supported scalar to mpc at the current working precision."""
    if isinstance(value, ComplexRational):
        return mp.mpc(to_mpf(value.real), to_mpf(value.imag))
    if isinstance(value, (int, float, Fraction)):
        return mp.mpc(to_mpf(value))
    return mp.mpc(value)


def to_float_complex(value) -> complex:
    """Lossy conversion for display and JSON output."""
    if isinstance(value, ComplexRational):
        return complex(value)
    if isinstance(value, (int, float, Fraction)):
        return complex(float(value), 0.0)
    return complex(value)
