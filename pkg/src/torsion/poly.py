"""Univariate polynomials and rational functions over generic scalars.

Coefficients are stored dense, lowest degree first, and may be exact
(``int``/``Fraction``/:class:`~torsion.scalars.ComplexRational`) or mpmath
values; arithmetic never leaves the coefficient domain.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import abs2, is_exact, to_mpc


def _is_zero(c) -> bool:
    return c == 0


class ComplexPolynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies z**k.

    The zero polynomial has an empty coefficient list and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPolynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPolynomial([self[k] - other[k] for k in range(n)])

    def __rsub__(self, other):
        return ComplexPolynomial([other]) - self

    def __neg__(self):
        return ComplexPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return ComplexPolynomial([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return ComplexPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ComplexPolynomial(out)

    def __rmul__(self, other):
        return ComplexPolynomial([other * c for c in self.coeffs])

    def __truediv__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)  # keep int/int coefficient division exact
        return ComplexPolynomial([c / scalar for c in self.coeffs])

    def shifted(self, k: int) -> "ComplexPolynomial":
        """Multiply by z**k (k >= 0) or divide by z**k when divisible (k < 0)."""
        if k >= 0:
            return ComplexPolynomial([0] * k + self.coeffs)
        if any(not _is_zero(c) for c in self.coeffs[:-k]):
            raise ValueError("polynomial is not divisible by z**%d" % (-k))
        return ComplexPolynomial(self.coeffs[-k:])

    def evaluate(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "ComplexPolynomial":
        return ComplexPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def conjugate_coeffs(self) -> "ComplexPolynomial":
        return ComplexPolynomial([c.conjugate() for c in self.coeffs])

    def reversed_conjugate(self, n: int | None = None) -> "ComplexPolynomial":
        """z**n * conj(p(1/conj(z))): coefficients conjugated and reversed.

        ``n`` defaults to the degree; a larger ``n`` pads with zeros before
        reversing (the usual degree-n star of a lower-degree polynomial).
        """
        if n is None:
            n = max(self.degree, 0)
        if n < self.degree:
            raise ValueError("star order below polynomial degree")
        padded = self.coeffs + [0] * (n + 1 - len(self.coeffs))
        return ComplexPolynomial([c.conjugate() for c in reversed(padded)])

    def map_coeffs(self, fn) -> "ComplexPolynomial":
        return ComplexPolynomial([fn(c) for c in self.coeffs])

    def to_mpc(self) -> "ComplexPolynomial":
        return self.map_coeffs(to_mpc)

    def max_coeff_abs2(self):
        """max_k |coeff_k|^2, 0 for the zero polynomial."""
        best = 0
        for c in self.coeffs:
            a = abs2(c)
            if a > best:
                best = a
        return best

    def __repr__(self):
        return f"ComplexPolynomial({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)


def monomial(k: int, coeff=1) -> ComplexPolynomial:
    return ComplexPolynomial([0] * k + [coeff])


class RationalFunction:
    """Quotient of two polynomials.  No common-factor cancellation is done."""

    __slots__ = ("num", "den")

    def __init__(self, num: ComplexPolynomial, den: ComplexPolynomial):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    def evaluate(self, z):
        return self.num.evaluate(z) / self.den.evaluate(z)

    def evaluate_derivative(self, z):
        n, d = self.num.evaluate(z), self.den.evaluate(z)
        np, dp = self.num.derivative().evaluate(z), self.den.derivative().evaluate(z)
        return (np * d - n * dp) / (d * d)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def equivalent(self, other: "RationalFunction") -> bool:
        """True when the two quotients agree as functions (cross-multiply)."""
        return (self.num * other.den) == (other.num * self.den)

    def taylor(self, terms: int) -> list:
        """Series division around 0; requires den(0) != 0."""
        d0 = self.den[0]
        if _is_zero(d0):
            raise ZeroDivisionError("denominator vanishes at 0")
        out = []
        for k in range(terms):
            acc = self.num[k]
            for j in range(1, min(k, self.den.degree) + 1):
                acc = acc - self.den[j] * out[k - j]
            out.append(acc / d0)
        return out

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"
