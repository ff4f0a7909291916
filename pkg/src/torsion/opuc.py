"""Orthogonal polynomials on the unit circle via the Szegő recursion.

Covers the forward recursion Φ_{n+1} = zΦ_n − conj(α_n)Φ_n*, its inverse
(peeling recurrence coefficients off a single monic polynomial), second-kind
polynomials, and the Herglotz function F of a measure |p(e^{iθ})|^{-2} dθ/2π
when p is zero-free on the closed unit disk.

Everything is exact over rational complex coefficients.  Irrational real
scale factors of p are carried as ``scale_sq`` (the squared scale), which
cancels out of all polynomials and enters only the mass of the measure.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp

from .errors import (
    InconsistencyError,
    InvalidCoefficientError,
    InvalidMapError,
    NormalizationError,
    NotOrthogonalPolynomialError,
    PreconditionError,
)
from .poly import ComplexPolynomial, RationalFunction
from .scalars import abs2, is_exact, to_mpf


def star(poly: ComplexPolynomial, n: int) -> ComplexPolynomial:
    """The degree-n reversal z^n conj(poly(1/conj(z)))."""
    return poly.reversed_conjugate(n)


class VerblunskySequence:
    """Recurrence coefficients α_0, ..., α_{n-1}, each of modulus < 1."""

    __slots__ = ("alphas",)

    def __init__(self, alphas):
        alphas = tuple(alphas)
        for k, a in enumerate(alphas):
            if not abs2(a) < 1:
                raise InvalidCoefficientError(
                    f"recurrence coefficient {k} has modulus >= 1", index=k)
        self.alphas = alphas

    def __len__(self):
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def __getitem__(self, k):
        return self.alphas[k]

    def __eq__(self, other):
        if isinstance(other, VerblunskySequence):
            other = other.alphas
        return self.alphas == tuple(other)

    def __repr__(self):
        return f"VerblunskySequence({list(self.alphas)!r})"

    def negated(self) -> "VerblunskySequence":
        return VerblunskySequence(tuple(-a for a in self.alphas))


class MonicOpucPolynomial:
    """A monic polynomial produced by (or fed to) the Szegő recursion."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: ComplexPolynomial):
        if poly.is_zero or not poly.leading() == 1:
            raise NotOrthogonalPolynomialError("polynomial is not monic")
        self.poly = poly
        self.degree = poly.degree

    def __eq__(self, other):
        if isinstance(other, MonicOpucPolynomial):
            other = other.poly
        return self.poly == other

    def __repr__(self):
        return f"MonicOpucPolynomial({self.poly})"

    def evaluate(self, z):
        return self.poly.evaluate(z)

    def is_genuine(self) -> bool:
        """Whether all zeros lie in the open unit disk (Schur-Cohn by recursion)."""
        try:
            szego_inverse(self)
        except NotOrthogonalPolynomialError:
            return False
        return True


def _as_verblunsky(alphas) -> VerblunskySequence:
    if isinstance(alphas, VerblunskySequence):
        return alphas
    return VerblunskySequence(alphas)


def szego_forward(alphas) -> MonicOpucPolynomial:
    """Run the recursion Φ_{k+1} = zΦ_k − conj(α_k)Φ_k* up from Φ_0 = 1."""
    alphas = _as_verblunsky(alphas)
    phi = ComplexPolynomial([1])
    for k, a in enumerate(alphas):
        phi = phi.shifted(1) - a.conjugate() * star(phi, k)
    return MonicOpucPolynomial(phi)


def second_kind(alphas) -> MonicOpucPolynomial:
    """Second-kind polynomial Ψ_n: the recursion run on the negated sequence."""
    return szego_forward(_as_verblunsky(alphas).negated())


def szego_inverse(phi_n) -> tuple:
    """Recover (α_0..α_{n-1}, [Φ_0..Φ_{n-1}]) from the monic polynomial Φ_n.

    Each downward step solves the recursion for the lower polynomial,

        Φ_k = (Φ_{k+1} + conj(α_k) Φ_{k+1}*) / (z (1 − |α_k|²)),

    in which the constant term cancels identically; a surviving constant
    means the input was corrupted.  A coefficient of modulus >= 1 means the
    input is not an orthogonal polynomial of any measure on the circle.
    """
    if not isinstance(phi_n, MonicOpucPolynomial):
        phi_n = MonicOpucPolynomial(phi_n)
    n = phi_n.degree
    cur = phi_n.poly
    alphas = [None] * n
    lower = [None] * n
    for k in range(n - 1, -1, -1):
        a = -(cur[0].conjugate())
        if not abs2(a) < 1:
            raise NotOrthogonalPolynomialError(
                f"step {k} produced a recurrence coefficient of modulus >= 1")
        alphas[k] = a
        numerator = cur + a.conjugate() * star(cur, k + 1)
        const = numerator[0]
        if numerator.is_exact:
            if const != 0:
                raise InconsistencyError(
                    f"constant term failed to cancel at step {k}")
        else:
            allowance = numerator.max_coeff_abs2() * mp.mpf(2) ** (32 - 2 * mp.prec)
            if abs2(const) > allowance:
                raise InconsistencyError(
                    f"constant term failed to cancel at step {k}")
        cur = ComplexPolynomial(list(numerator.coeffs[1:])) / (1 - abs2(a))
        lower[k] = MonicOpucPolynomial(cur)
    return VerblunskySequence(alphas), lower


class ReciprocalPolyMeasure:
    """The circle measure |p(e^{iθ})|^{-2} dθ/2π with p = sqrt(scale_sq)·q."""

    __slots__ = ("q", "scale_sq", "phi", "lower", "alphas", "mass", "exact")

    def __init__(self, q, scale_sq, phi, lower, alphas, mass, exact):
        self.q = q
        self.scale_sq = scale_sq
        self.phi = phi
        self.lower = lower
        self.alphas = alphas
        self.mass = mass
        self.exact = exact


def reciprocal_poly_measure(q: ComplexPolynomial, scale_sq=1) -> ReciprocalPolyMeasure:
    """Orthogonal-polynomial data of |p|^{-2} dθ/2π for p = sqrt(scale_sq)·q.

    The monic polynomial of top degree is q*/conj(q(0)); the inverse recursion
    supplies everything below it, and the total mass comes out exactly as
    1/(|p(0)|² · prod(1 − |α_k|²)).
    """
    if not isinstance(q, ComplexPolynomial):
        q = ComplexPolynomial(q)
    if scale_sq <= 0:
        raise PreconditionError("scale_sq must be positive")
    q0 = q[0]
    if q0 == 0:
        raise InvalidMapError("polynomial vanishes at the origin")
    phi_poly = star(q, q.degree) / q0.conjugate()
    try:
        alphas, lower = szego_inverse(MonicOpucPolynomial(phi_poly))
    except NotOrthogonalPolynomialError as exc:
        raise InvalidMapError(
            "polynomial has a zero on or inside the unit circle") from exc
    mass_den = scale_sq * abs2(q0)
    for a in alphas:
        mass_den = mass_den * (1 - abs2(a))
    mass = Fraction(1) / mass_den if is_exact(mass_den) else 1 / mass_den
    exact = q.is_exact and is_exact(scale_sq)
    return ReciprocalPolyMeasure(q, scale_sq, MonicOpucPolynomial(phi_poly),
                                 lower, alphas, mass, exact)


def measure_mass_series(q: ComplexPolynomial, scale_sq=1,
                        tolerance=None, max_terms: int = 8192):
    """Mass of |p|^{-2} dθ/2π as sum |b_k|^2 / scale_sq, b = Taylor of 1/q.

    Purely numerical (Parseval on the circle); used to cross-check the exact
    recursion-based mass.
    """
    tol = tolerance if tolerance is not None else mp.mpf(2) ** (-(mp.prec // 2))
    qm = q.to_mpc()
    one = ComplexPolynomial([mp.mpc(1)])
    terms = 128
    prev = None
    while True:
        b = RationalFunction(one, qm).taylor(terms)
        total = mp.fsum(abs2(c) for c in b) / to_mpf(scale_sq)
        if prev is not None and abs(total - prev) <= tol / 2:
            return total
        if terms >= max_terms:
            raise PreconditionError(
                "mass series did not stabilize; polynomial zero too close to "
                "the unit circle")
        prev = total
        terms *= 2


def _check_unit_mass(measure: ReciprocalPolyMeasure, tolerance=None):
    if measure.exact:
        if measure.mass != 1:
            raise NormalizationError(
                f"measure mass is {measure.mass}, expected 1", mass=measure.mass)
        series = measure_mass_series(measure.q, to_mpf(measure.scale_sq))
        tol = tolerance if tolerance is not None else mp.mpf(2) ** (-(mp.prec // 2))
        if abs(series - 1) > tol:
            raise InconsistencyError(
                f"series mass {mp.nstr(series, 12)} disagrees with the exact mass")
        return
    mass = measure_mass_series(measure.q, measure.scale_sq, tolerance)
    tol = tolerance if tolerance is not None else mp.mpf(2) ** (-(mp.prec // 2))
    if abs(mass - 1) > tol:
        raise NormalizationError(
            f"measure mass is {mp.nstr(mass, 12)}, expected 1", mass=mass)


def herglotz_from_reciprocal_poly(q: ComplexPolynomial, scale_sq=1,
                                  check_normalization: bool = True,
                                  tolerance=None) -> RationalFunction:
    """Herglotz function F = Ψ_n*/Φ_n* of the measure |p|^{-2} dθ/2π.

    ``p = sqrt(scale_sq)·q`` must be zero-free on the closed unit disk and
    normalized to unit mass (checked unless disabled).  F is returned as a
    ratio of polynomials, analytic on the disk with positive real part, and
    F(0) equals the measure's mass.
    """
    if not isinstance(q, ComplexPolynomial):
        q = ComplexPolynomial(q)
    measure = reciprocal_poly_measure(q, scale_sq)
    if check_normalization:
        _check_unit_mass(measure, tolerance)
    psi = second_kind(measure.alphas)
    n = q.degree
    return RationalFunction(star(psi.poly, n), star(measure.phi.poly, n))
