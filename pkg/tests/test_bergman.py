"""Moment-method upper bounds: orthonormalization, projections, rho_N."""

from fractions import Fraction

import pytest
from mpmath import mp

from torsion.bergman import (
    bergman_projection,
    convergence_probe,
    orthonormalize,
    rho1_closed,
    rho2_closed,
    rho_sequence,
    rho_upper,
    rho_via_determinants,
)
from torsion.errors import PreconditionError
from torsion.moments import moment_table, polygon_real_moment_table
from torsion.regions import PolygonRegion, RegionSpec, realize_polygon

# centered isosceles right triangle with unit legs (centroid at the origin)
ISO = PolygonRegion([(Fraction(-1, 3), Fraction(-1, 3)),
                     (Fraction(2, 3), Fraction(-1, 3)),
                     (Fraction(-1, 3), Fraction(2, 3))])


def iso_table(degree=6):
    return moment_table(ISO, degree)


def test_rho_one_and_two_exact_values():
    rho = rho_sequence(iso_table(), 2)
    assert rho[1] == Fraction(1, 24)
    assert rho[2] == Fraction(11, 408)


def test_rho_zero_is_c11_minus_centroid_term():
    # rho_0 subtracts only the |c_01|^2/area term; centered => c_01 = 0
    rho = rho_sequence(iso_table(), 0)
    assert rho[0] == iso_table().c(1, 1)


def test_rho_sequence_monotone_nonincreasing():
    rho = rho_sequence(iso_table(8), 8)
    assert all(a >= b for a, b in zip(rho, rho[1:]))


def test_closed_degree_one_form_matches_ldl_route():
    I = polygon_real_moment_table(ISO, 2)
    rho1, alpha = rho1_closed(I[(2, 0)], I[(0, 2)], I[(1, 1)])
    assert rho1 == rho_sequence(iso_table(), 1)[1] == Fraction(1, 24)
    # the linear part of the projection is alpha * z
    q = bergman_projection(iso_table(), 1)
    assert q.coeffs[1] == alpha


def test_closed_degree_two_form_matches_ldl_route():
    # needs I_21 = 0, which the axis-aligned rectangle has by symmetry
    rect = realize_polygon(RegionSpec.rectangle(2, Fraction(1, 2)))
    I = polygon_real_moment_table(rect, 4)
    rho2 = rho2_closed(I)
    assert rho2 == rho_sequence(moment_table(rect, 2), 2)[2]


def test_closed_degree_two_form_rejects_unnormalized_input():
    # the centered isosceles triangle has I_21 = -1/540: not rotation-aligned
    with pytest.raises(PreconditionError):
        rho2_closed(polygon_real_moment_table(ISO, 4))


def test_determinant_route_matches_ldl_route():
    table = iso_table()
    assert rho_via_determinants(table, 4) == rho_sequence(table, 4)


def test_determinant_route_on_float_table():
    with mp.workprec(192):
        table = moment_table(RegionSpec.house(Fraction(1, 4)), 4,
                             precision=192)
        dets = rho_via_determinants(table, 4)
        ldl = rho_sequence(table, 4)
        for d, l in zip(dets, ldl):
            assert abs(d - l) < mp.mpf(2) ** -150


def test_translation_invariance_exact():
    rho = rho_sequence(iso_table(), 3)
    moved = moment_table(ISO.translated(Fraction(7, 2), -3), 3)
    assert rho_sequence(moved, 3) == rho[:4]


def test_scaling_law_exact():
    rho = rho_sequence(iso_table(), 3)
    scaled = moment_table(ISO.scaled(Fraction(3, 2)), 3)
    factor = Fraction(3, 2) ** 4
    assert rho_sequence(scaled, 3) == [factor * r for r in rho[:4]]


def test_rotation_invariance_exact():
    rho = rho_sequence(iso_table(), 3)
    rot = moment_table(ISO.rotated(Fraction(3, 5), Fraction(4, 5)), 3)
    assert rho_sequence(rot, 3) == rho[:4]


def test_disk_projection_is_zero_and_rho_is_half_pi():
    table = moment_table(RegionSpec.unit_disk(), 6)
    with mp.workprec(table.precision):
        q = bergman_projection(table, 6)
        assert all(abs(c) == 0 for c in q.coeffs)
        rho = rho_sequence(table, 6)
        assert abs(rho[6] - mp.pi / 2) < mp.mpf(2) ** -200


def test_orthonormal_norms_positive():
    basis = orthonormalize(iso_table(), 6)
    assert all(n > 0 for n in basis.norms_sq)


def test_projection_residual_orthogonal_to_monomials():
    # <zbar - Q_N, z^k> = 0 for k <= N, i.e. c_{0,k+1} = sum_m q_m c_{m,k}
    table = iso_table()
    degree = 4
    q = bergman_projection(table, degree)
    for k in range(degree + 1):
        lhs = table.c(0, k + 1)
        rhs = sum(coeff * table.c(m, k) for m, coeff in enumerate(q.coeffs))
        assert lhs == rhs, k


def test_rho_upper_exact_region_reports_exact():
    est = rho_upper(ISO, degree=2)
    assert est.bound == "upper"
    assert est.value_exact == Fraction(11, 408)
    assert est.precision is None
    assert est.tail == 0


def test_rho_upper_forced_precision_matches_exact():
    est = rho_upper(ISO, degree=2, precision=160)
    assert est.precision == 160
    assert est.value_exact is None
    with mp.workprec(160):
        want = mp.mpf(11) / 408
        assert abs(est.value - want) < mp.mpf(2) ** -120


def test_rho_upper_accepts_prebuilt_table():
    table = iso_table()
    est = rho_upper(table, degree=4)
    assert est.value_exact == rho_sequence(table, 4)[4]
    with pytest.raises(PreconditionError):
        rho_upper(table, degree=9)  # table too small


def test_convergence_probe_geometric_on_oval():
    with mp.workprec(256):
        rho_true = mp.pi * 7 / 2
    probe = convergence_probe(RegionSpec.neumann_oval(1), 12, rho_true,
                              fit_window=(4, 12))
    assert 0 < probe.ratio < 0.9
