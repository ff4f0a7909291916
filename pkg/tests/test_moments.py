"""Area moments: triangle fans, Green-edge tables, closed forms."""

from fractions import Fraction

import pytest
from mpmath import mp

from torsion.errors import ParameterDomainError, UnsupportedVariantError
from torsion.moments import (
    MomentTable,
    complex_moment,
    gauss_2F1_terminating,
    house_moment_closed,
    moment_table,
    polygon_real_moment,
    polygon_real_moment_table,
    rectangle_moment_closed,
    right_triangle_moment_closed,
    triangle_monomial_moment,
)
from torsion.regions import PolygonRegion, RegionSpec, realize_polygon

L_SHAPE = PolygonRegion([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])

TRI = PolygonRegion([(Fraction(-1, 3), Fraction(-1, 3)),
                     (Fraction(2, 3), Fraction(-1, 3)),
                     (Fraction(-1, 3), Fraction(2, 3))])


def test_triangle_moment_unit_simplex():
    # integral of x^m y^n over {x,y >= 0, x+y <= 1} is m! n! / (m+n+2)!
    assert triangle_monomial_moment((0, 0), (1, 0), (0, 1), 0, 0) == Fraction(1, 2)
    assert triangle_monomial_moment((0, 0), (1, 0), (0, 1), 1, 0) == Fraction(1, 6)
    assert triangle_monomial_moment((0, 0), (1, 0), (0, 1), 2, 3) == \
        Fraction(2 * 6, 5040)  # 2! 3! / 7!


def test_triangle_moment_orientation_sign():
    plus = triangle_monomial_moment((0, 0), (1, 0), (0, 1), 2, 1)
    minus = triangle_monomial_moment((0, 0), (0, 1), (1, 0), 2, 1)
    assert plus == -minus


def test_degenerate_triangle_warns_and_vanishes():
    with pytest.warns(UserWarning):
        value = triangle_monomial_moment((0, 0), (1, 1), (2, 2), 1, 0)
    assert value == 0


@pytest.mark.parametrize("poly", [L_SHAPE, TRI], ids=["L", "triangle"])
def test_edge_table_matches_triangle_fan(poly):
    table = polygon_real_moment_table(poly, 6)
    for (m, n), value in table.items():
        assert value == polygon_real_moment(poly, m, n), (m, n)


def test_edge_table_exact_on_integer_vertices():
    # all-integer coordinates must stay exact, not decay to float
    table = polygon_real_moment_table(L_SHAPE, 4)
    assert all(isinstance(v, (int, Fraction)) for v in table.values())
    assert table[(0, 0)] == 3  # area of the L


def test_complex_moment_conjugate_symmetry():
    for i in range(4):
        for j in range(4):
            assert complex_moment(TRI, i, j) == \
                complex_moment(TRI, j, i).conjugate()


# -- closed forms -------------------------------------------------------------


def test_gauss_2f1_terminating_degree_zero_is_one():
    assert gauss_2F1_terminating(0, Fraction(5, 2), Fraction(1, 2),
                                 Fraction(3, 7)) == 1


def test_gauss_2f1_terminating_matches_mpmath():
    got = gauss_2F1_terminating(-3, Fraction(5, 2), Fraction(7, 2),
                                Fraction(-2, 5))
    want = mp.hyp2f1(-3, mp.mpf(5) / 2, mp.mpf(7) / 2, mp.mpf(-2) / 5)
    assert abs(mp.mpf(got.numerator) / got.denominator - want) < 1e-12


@pytest.mark.parametrize("a,b", [(2, Fraction(1, 2)), (1, 1),
                                 (Fraction(7, 3), Fraction(3, 7))])
def test_rectangle_closed_vs_polygon(a, b):
    poly = realize_polygon(RegionSpec.rectangle(a, b))
    for i in range(4):
        for j in range(4):
            assert rectangle_moment_closed(a, b, i, j) == \
                complex_moment(poly, i, j), (i, j)


def test_rectangle_closed_integer_sides_stay_exact():
    # integer inputs hit the same exact path as Fractions
    assert rectangle_moment_closed(1, 1, 1, 1) == Fraction(1, 6)
    assert rectangle_moment_closed(2, 2, 2, 2) == \
        rectangle_moment_closed(Fraction(2), Fraction(2), 2, 2)


@pytest.mark.parametrize("a", [Fraction(2, 3), 1, Fraction(3, 2)])
def test_right_triangle_closed_vs_polygon(a):
    poly = realize_polygon(RegionSpec.right_triangle(a))
    for i in range(4):
        for j in range(4):
            assert right_triangle_moment_closed(a, i, j) == \
                complex_moment(poly, i, j), (i, j)


@pytest.mark.parametrize("a", [0, Fraction(1, 4), Fraction(1, 2)])
def test_house_closed_vs_polygon(a):
    poly = realize_polygon(RegionSpec.house(a))
    for i in range(4):
        for j in range(4):
            assert house_moment_closed(a, i, j) == \
                complex_moment(poly, i, j), (i, j)


def test_house_closed_rejects_out_of_range():
    with pytest.raises(ParameterDomainError):
        house_moment_closed(Fraction(2, 3), 1, 1)
    with pytest.raises(ParameterDomainError):
        house_moment_closed(mp.mpf("0.75"), 1, 1)


def test_house_closed_float_route_matches_exact():
    exact = house_moment_closed(Fraction(1, 4), 3, 2)
    with mp.workprec(113):
        loose = house_moment_closed(mp.mpf(1) / 4, 3, 2)
        assert abs(loose - mp.mpc(*[mp.mpf(t.numerator) / t.denominator
                                    for t in (exact.real, exact.imag)])) \
            < mp.mpf(2) ** -100


# -- tables -------------------------------------------------------------------


def test_moment_table_extends_one_degree():
    table = moment_table(RegionSpec.house(Fraction(1, 4)), 3)
    # entries exist through degree+1 so rho_N can see c_{N+1, j}
    table.c(4, 4)
    with pytest.raises(IndexError):
        table.c(5, 0)


def test_moment_table_is_hermitian_by_construction():
    table = moment_table(RegionSpec.right_triangle(Fraction(3, 2)), 5)
    assert table.hermitian_residual() == 0
    assert table.exact


def test_moment_table_float_route_diagonal_is_real():
    poly = realize_polygon(RegionSpec.house(Fraction(1, 3)))
    table = moment_table(poly, 6, precision=128)
    assert not table.exact
    for n in range(7):
        assert table.c(n, n).imag == 0


def test_moment_table_json_roundtrip():
    table = moment_table(RegionSpec.rectangle(2, Fraction(1, 2)), 3)
    again = MomentTable.from_json_dict(table.to_json_dict())
    for i in range(4):
        for j in range(4):
            assert again.c(i, j) == table.c(i, j)
    assert again.exact == table.exact


def test_moment_table_rejects_map_families():
    with pytest.raises(UnsupportedVariantError):
        moment_table(RegionSpec.neumann_oval(1), 4)
