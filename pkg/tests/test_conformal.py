"""Disk-route rigidity: Taylor maps, Herglotz data, closed-form families."""

from fractions import Fraction

import pytest
from mpmath import mp

from torsion.conformal import (
    DentedDisk,
    NeumannOval,
    TaylorSeries,
    boundary_stress_residual,
    dented_disk_family,
    disk_l2_normsq,
    equilateral_triangle_exact,
    fourier_h,
    herglotz_series,
    map_series_for,
    moment_table_from_map,
    neumann_oval_family,
    reciprocal_map_series,
    rho_conformal,
    rho_conformal_region,
)
from torsion.errors import (
    InvalidMapError,
    ParameterDomainError,
    UnsupportedVariantError,
)
from torsion.regions import RegionSpec

mp.prec = 256


def test_identity_map_gives_half_pi():
    psi = TaylorSeries([0, 1], radius=mp.inf, exact_polynomial=True)
    est = rho_conformal(psi)
    assert est.bound == "exact"
    assert abs(est.value - mp.pi / 2) < mp.mpf(2) ** -250
    assert est.tail == 0


def test_scaled_map_obeys_fourth_power_law():
    psi = TaylorSeries([0, 3], radius=mp.inf, exact_polynomial=True)
    est = rho_conformal(psi)
    assert abs(est.value - 81 * mp.pi / 2) < mp.mpf(2) ** -240


def test_disk_l2_normsq_monomials():
    # int |z^k|^2 over the disk = pi/(k+1)
    assert abs(disk_l2_normsq(TaylorSeries([0, 0, 1])) - mp.pi / 3) \
        < mp.mpf(2) ** -250


def test_fourier_h_of_identity_map():
    psi = TaylorSeries([0, 1], radius=mp.inf, exact_polynomial=True)
    assert fourier_h(psi, 0) == mp.mpf("0.5")
    assert fourier_h(psi, 1) == 0
    assert fourier_h(psi, 5) == 0


def test_herglotz_head_guards():
    from torsion.conformal import HerglotzSeries
    with pytest.raises(InvalidMapError):
        HerglotzSeries([mp.mpc(0, 3)])  # h_0 must be real
    with pytest.raises(InvalidMapError):
        HerglotzSeries([mp.mpf(-1)])  # ... and positive


def test_herglotz_positivity_sampled():
    from torsion.conformal import HerglotzSeries
    # genuine map data is of positive type
    ok = herglotz_series(neumann_oval_family(1).psi_series(64))
    assert ok.positivity_ok
    # hand-corrupted h data is not, and gets flagged
    with pytest.warns(UserWarning):
        bad = HerglotzSeries([1, 40])
    assert not bad.positivity_ok


# -- Neumann oval --------------------------------------------------------------


def test_oval_closed_form_cofactor():
    oval = neumann_oval_family(Fraction(1, 2))
    assert oval.rho_cofactor == Fraction(1, 2) ** 4 / 2 + 2 * Fraction(1, 2) ** 2 + 1
    assert abs(oval.rho_closed - mp.pi * to_f(oval.rho_cofactor)) \
        < mp.mpf(2) ** -240


def to_f(q):
    return mp.mpf(q.numerator) / q.denominator


def test_oval_series_route_agrees_with_closed_form():
    oval = neumann_oval_family(1)
    est = rho_conformal(oval.psi_series(200))
    rel = abs(est.value - oval.rho_closed) / oval.rho_closed
    assert rel < 1e-8
    assert est.tail < oval.rho_closed * 1e-8


def test_oval_rejects_nonpositive_parameter():
    with pytest.raises(ParameterDomainError):
        neumann_oval_family(0)
    with pytest.raises(ParameterDomainError):
        NeumannOval(-2)


def test_oval_map_is_odd():
    psi = neumann_oval_family(1).psi_series(31)
    assert all(c == 0 for c in psi.coefficients[::2])


def test_oval_boundary_stress_vanishes():
    oval = neumann_oval_family(1)
    _, stress = oval.stress_pair()
    residual = boundary_stress_residual(stress, oval.psi_point, samples=32)
    assert residual < mp.mpf(2) ** -100


# -- dented disk ---------------------------------------------------------------


def test_dent_validity_naming():
    with pytest.raises(ParameterDomainError) as err:
        dented_disk_family(0, 2)
    assert "nondegenerate" in str(err.value)
    # a pole inside the disk breaks all three conditions
    with pytest.raises(ParameterDomainError):
        dented_disk_family(Fraction(1, 5), Fraction(1, 2))


def test_dent_relaxed_construction_reports_failures():
    fam = dented_disk_family(0, 2, require_valid=False)
    assert not fam.validity.ok
    assert "nondegenerate" in fam.validity.failed()


def test_dent_series_vs_closed_form():
    fam = dented_disk_family(Fraction(1, 5), Fraction(3, 2))
    est = rho_conformal(fam.psi_series(200))
    rel = abs(est.value - fam.rho_closed) / fam.rho_closed
    assert rel < 1e-6


def test_dent_flattens_to_disk():
    gaps = []
    for b in (10, 100, 1000):
        fam = dented_disk_family(Fraction(1, 5), b)
        gaps.append(abs(fam.rho_closed - mp.pi / 2))
    assert gaps[0] > gaps[1] > gaps[2]


def test_dent_inverse_map_roundtrip():
    fam = dented_disk_family(Fraction(1, 5), Fraction(3, 2))
    for k in range(8):
        w = mp.mpf("0.7") * mp.expjpi(2 * mp.mpf(k) / 8)
        z = fam.psi_point(w)
        assert abs(fam.phi(z) - w) < mp.mpf(2) ** -200


# -- region-spec plumbing --------------------------------------------------------


def test_map_series_dispatch():
    assert map_series_for(RegionSpec.unit_disk()).exact_polynomial
    psi = map_series_for(RegionSpec.dented_disk(Fraction(1, 5),
                                                Fraction(3, 2)), 64)
    assert psi.truncation == 64
    with pytest.raises(UnsupportedVariantError):
        map_series_for(RegionSpec.house(Fraction(1, 4)))


def test_rho_conformal_region_doubles_until_tail_clears():
    est = rho_conformal_region(RegionSpec.neumann_oval(Fraction(1, 2)),
                               truncation=25, precision=128)
    assert est.order > 25  # a=1/2 decays slowly; 25 terms cannot suffice
    assert est.tail < (abs(est.value) + 1) * mp.mpf(2) ** -64


def test_moment_table_from_map_upper_bounds_decrease_to_closed_rho():
    table = moment_table_from_map(RegionSpec.neumann_oval(1), 8,
                                  truncation=200)
    from torsion.bergman import rho_sequence
    with mp.workprec(table.precision):
        rho = rho_sequence(table, 8)
        true = mp.pi * 7 / 2
        # the moment route converges geometrically (slowly), from above
        assert rho[4] > rho[8] > true
        assert rho[8] - true < rho[4] - true < 1
    assert mp.isfinite(table.tail)


def test_reciprocal_map_series_matches_direct_expansion():
    # psi = sqrt(2/scale_sq)/q for q = (z+2)^3: check against mpmath Taylor
    psi = reciprocal_map_series([8, 12, 6, 1], Fraction(11, 81),
                                truncation=24)
    scale = mp.sqrt(2 / (mp.mpf(11) / 81))
    direct = mp.taylor(lambda z: 1 / (z + 2) ** 3, 0, 6)
    for k in range(6):
        assert abs(psi.coefficients[k] - scale * direct[k]) < mp.mpf(2) ** -200


# -- equilateral triangle -------------------------------------------------------


def test_equilateral_projection_and_value():
    proj = equilateral_triangle_exact()
    assert proj.q == ComplexPolynomialLike([0, 0, 1])
    with mp.workprec(256):
        assert abs(proj.rho - 9 * mp.sqrt(3) / 80) < mp.mpf(2) ** -240
    assert proj.report["rational_wall_points_exact_zero"]


def ComplexPolynomialLike(coeffs):
    from torsion.poly import ComplexPolynomial
    return ComplexPolynomial(coeffs)
