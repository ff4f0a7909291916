"""Circle recursion: forward/inverse, second kind, Herglotz functions."""

import random
from fractions import Fraction

import pytest
from mpmath import mp

from torsion.errors import (
    InvalidCoefficientError,
    InvalidMapError,
    NotOrthogonalPolynomialError,
)
from torsion.opuc import (
    MonicOpucPolynomial,
    VerblunskySequence,
    herglotz_from_reciprocal_poly,
    measure_mass_series,
    reciprocal_poly_measure,
    second_kind,
    star,
    szego_forward,
    szego_inverse,
)
from torsion.poly import ComplexPolynomial, RationalFunction
from torsion.scalars import ComplexRational


def C(re, im=0):
    return ComplexRational(Fraction(re), Fraction(im))


def test_star_reverses_and_conjugates():
    p = ComplexPolynomial([C(1, 2), C(0, -1), C(3)])
    assert star(p, 2) == ComplexPolynomial([C(3), C(0, 1), C(1, -2)])
    # degree padding inserts a zero at the low end of the reversal
    assert star(p, 3) == ComplexPolynomial([C(0), C(3), C(0, 1), C(1, -2)])


def test_forward_single_step():
    # Phi_1 = z - conj(alpha_0)
    phi = szego_forward([C(Fraction(1, 3), Fraction(1, 5))])
    assert phi.poly == ComplexPolynomial(
        [C(Fraction(-1, 3), Fraction(1, 5)), C(1)])


def test_forward_rejects_modulus_one_coefficient():
    with pytest.raises(InvalidCoefficientError):
        szego_forward([C(1)])
    with pytest.raises(InvalidCoefficientError):
        szego_forward([C(Fraction(3, 5), Fraction(4, 5))])


def test_inverse_recovers_coefficients_and_stack():
    alphas = [C(Fraction(-10, 11)), C(Fraction(-4, 7)), C(Fraction(-1, 8))]
    phi = szego_forward(alphas)
    got, lower = szego_inverse(phi)
    assert got == VerblunskySequence(alphas)
    assert lower[0].poly == ComplexPolynomial([1])
    assert lower[2] == szego_forward(alphas[:2])


def test_inverse_rejects_zero_outside_disk():
    # z - 2 has its zero at 2, outside the closed disk
    with pytest.raises(NotOrthogonalPolynomialError):
        szego_inverse(ComplexPolynomial([C(-2), C(1)]))


def test_roundtrip_random_rational_sequences():
    # forward then inverse is the identity, bit for bit
    rng = random.Random(70921)

    def rational_in_disk():
        while True:
            re = Fraction(rng.randint(-8, 8), rng.randint(9, 16))
            im = Fraction(rng.randint(-8, 8), rng.randint(9, 16))
            a = ComplexRational(re, im)
            if abs(a.real) + abs(a.imag) < 1:  # crude but sufficient gate
                return a

    for trial in range(100):
        n = rng.randint(1, 8)
        alphas = [rational_in_disk() for _ in range(n)]
        phi = szego_forward(alphas)
        got, lower = szego_inverse(phi)
        assert list(got) == alphas, trial
        for k in range(n):
            assert lower[k] == szego_forward(alphas[:k]), (trial, k)


def test_second_kind_flips_signs():
    alphas = [C(Fraction(1, 2)), C(0, Fraction(1, 3))]
    psi = second_kind(alphas)
    assert psi == szego_forward([-a for a in alphas])


def test_monic_guard():
    with pytest.raises(NotOrthogonalPolynomialError):
        MonicOpucPolynomial(ComplexPolynomial([C(1), C(2)]))


def test_genuine_predicate():
    assert MonicOpucPolynomial(
        szego_forward([C(Fraction(1, 2))]).poly).is_genuine()
    assert not MonicOpucPolynomial(
        ComplexPolynomial([C(-2), C(1)])).is_genuine()


# -- reciprocal-polynomial measures -------------------------------------------


WORKED_Q = ComplexPolynomial([8, 12, 6, 1])  # (z + 2)^3, zeros outside
WORKED_SCALE = Fraction(11, 81)  # normalizes |p|^{-2} dtheta/2pi to mass 1


def worked_measure():
    return reciprocal_poly_measure(WORKED_Q, WORKED_SCALE)


def test_reciprocal_poly_measure_worked_example():
    measure = worked_measure()
    assert measure.mass == 1
    assert [a for a in measure.alphas] == \
        [C(Fraction(-10, 11)), C(Fraction(-4, 7)), C(Fraction(-1, 8))]


def test_reciprocal_poly_measure_rejects_zero_at_origin():
    with pytest.raises(InvalidMapError):
        reciprocal_poly_measure(ComplexPolynomial([C(0), C(1)]))


def test_reciprocal_poly_measure_rejects_zero_in_disk():
    # q = z - 1/2 vanishes inside the unit circle
    with pytest.raises(InvalidMapError):
        reciprocal_poly_measure(ComplexPolynomial([C(Fraction(-1, 2)), C(1)]))


def test_mass_series_cross_check():
    measure = worked_measure()
    with mp.workprec(128):
        series = measure_mass_series(measure.q, WORKED_SCALE)
        assert abs(series - 1) < mp.mpf(2) ** -48


def test_herglotz_value_at_zero_is_mass():
    f = herglotz_from_reciprocal_poly(WORKED_Q, WORKED_SCALE)
    assert f.evaluate(C(0)) == 1


def test_herglotz_closed_form_worked_example():
    f = herglotz_from_reciprocal_poly(WORKED_Q, WORKED_SCALE)
    want = RationalFunction(
        ComplexPolynomial([C(24), C(Fraction(-84, 11)), C(Fraction(-138, 11)),
                           C(-3)]),
        ComplexPolynomial([C(24), C(36), C(18), C(3)]))
    assert f.equivalent(want)


def test_herglotz_rejects_unnormalized_measure():
    from torsion.errors import NormalizationError
    with pytest.raises(NormalizationError):
        herglotz_from_reciprocal_poly(WORKED_Q, Fraction(1, 2))


def test_herglotz_positive_real_part_on_disk_samples():
    f = herglotz_from_reciprocal_poly(WORKED_Q, WORKED_SCALE)
    with mp.workprec(96):
        num = f.num.to_mpc()
        den = f.den.to_mpc()
        for k in range(24):
            z = mp.mpf("0.93") * mp.expjpi(2 * mp.mpf(k) / 24)
            assert (num.evaluate(z) / den.evaluate(z)).real > 0
