"""Runnable self-checks covering the headline numbers the library stands behind.

Checks are grouped so that the expensive parameter sweeps can be skipped by
default:

==========  ================================================================
exact       bit-exact rational identities: closed forms vs the moment
            pipeline, scaling/rotation/translation laws, determinant route
opuc        the zero-free cubic worked example on the unit circle and its
            Herglotz function, exact and series routes side by side
series      classical double-series reference values, their rigorous tails,
            and the elementary rectangle bracket
conformal   disk-map routes against closed forms; boundary stress residuals
sandwich    variational lower bounds vs moment upper bounds for the house
properties  structural invariants: Hermiticity, positive definiteness,
            monotonicity, the equilateral projection, convergence rate
rectsweep   (long) rectangles a x 1/a: the degree-12 moment bound stays
            within half a percent above the series reference
argmax      (long) unit-area right triangles on a 0.002-step grid: the
            rigidity maximum sits at the isosceles shape
==========  ================================================================

:func:`run` prints one PASS/FAIL line per check plus a summary and returns a
process exit code (0 when everything passed, 1 otherwise).  Output is
deterministic: fixed grids, fixed precision, no randomness.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp

from . import bergman, conformal, lowerbound, moments, opuc, reference
from .errors import PreconditionError, TorsionError
from .poly import ComplexPolynomial, RationalFunction
from .regions import PolygonRegion, RegionSpec, realize_polygon
from .scalars import (
    DEFAULT_PRECISION,
    ComplexRational,
    is_exact,
    to_mpc,
    to_mpf,
)

GROUP_ORDER = ("exact", "opuc", "series", "conformal", "sandwich", "properties")
LONG_GROUP_ORDER = ("rectsweep", "argmax")


class CheckResult(NamedTuple):
    group: str
    name: str
    ok: bool
    measured: str
    expected: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status}  {self.group}/{self.name}: "
                f"measured {self.measured}; expected {self.expected}")


def _fmt(x, digits: int = 12) -> str:
    if isinstance(x, str):
        return x
    if is_exact(x):
        return str(x)
    return mp.nstr(to_mpf(x), digits)


def _check(group: str, name: str, ok, measured, expected) -> CheckResult:
    return CheckResult(group, name, bool(ok), _fmt(measured), _fmt(expected))


# ---------------------------------------------------------------------------
# exact: bit-exact rational identities
# ---------------------------------------------------------------------------

# Centered isosceles right triangle with legs 1 (centroid at the origin).
_LEG_ONE_TRIANGLE = (
    (Fraction(-1, 3), Fraction(-1, 3)),
    (Fraction(2, 3), Fraction(-1, 3)),
    (Fraction(-1, 3), Fraction(2, 3)),
)
# The same triangle multiplied by (1 - i)/2: rotated an eighth turn and
# shrunk by sqrt(2), yet still rational, so the quartic scaling law and
# rotation invariance can be checked bit-exactly (rho scales by 1/4).
_TILTED_TRIANGLE = (
    (Fraction(-1, 3), Fraction(0)),
    (Fraction(1, 6), Fraction(-1, 2)),
    (Fraction(1, 6), Fraction(1, 2)),
)


def _exact_checks(precision: int) -> list:
    out = []
    tri = PolygonRegion(_LEG_ONE_TRIANGLE)
    table = moments.moment_table(tri, 5)
    rho = bergman.rho_sequence(table, 5)
    out.append(_check("exact", "right-triangle-rho1",
                      rho[1] == Fraction(1, 24), rho[1], Fraction(1, 24)))
    out.append(_check("exact", "right-triangle-rho2",
                      rho[2] == Fraction(11, 408), rho[2], Fraction(11, 408)))

    tilted = bergman.rho_sequence(
        moments.moment_table(PolygonRegion(_TILTED_TRIANGLE), 2), 2)
    ok = 4 * tilted[1] == rho[1] and 4 * tilted[2] == rho[2]
    out.append(_check("exact", "rotation-and-quarter-scaling", ok,
                      f"4*rho1 = {4 * tilted[1]}, 4*rho2 = {4 * tilted[2]}",
                      "1/24 and 11/408 after the eighth-turn map"))

    scaled = bergman.rho_sequence(moments.moment_table(tri.scaled(3), 3), 3)
    ok = all(scaled[n] == 81 * rho[n] for n in range(4))
    out.append(_check("exact", "scaling-law-r-cubed-region", ok,
                      f"rho3(3*T)/rho3(T) = {scaled[3] / rho[3]}", "81 (= 3^4)"))

    det = bergman.rho_via_determinants(table, 2)
    out.append(_check("exact", "determinant-cross-route", det == rho[:3],
                      f"rho2 = {det[2]}", f"rho2 = {rho[2]} (factorization route)"))

    house = realize_polygon(RegionSpec.house(Fraction(1, 4)))
    moved = house.translated(Fraction(3), Fraction(-2))
    same = (bergman.rho_sequence(moments.moment_table(house, 5), 5)
            == bergman.rho_sequence(moments.moment_table(moved, 5), 5))
    out.append(_check("exact", "translation-invariance", same,
                      "house(1/4) sequence equals its translate" if same
                      else "sequences differ",
                      "identical rho_0..rho_5 after translating by (3, -2)"))

    rect = realize_polygon(RegionSpec.rectangle(2, Fraction(1, 2)))
    rho_rect = bergman.rho_sequence(moments.moment_table(rect, 2), 2)
    real = moments.polygon_real_moment_table(rect, 4)
    rho1, _ = bergman.rho1_closed(real[(2, 0)], real[(0, 2)], real[(1, 1)])
    rho2 = bergman.rho2_closed(real)
    ok = rho1 == rho_rect[1] and rho2 == rho_rect[2]
    out.append(_check("exact", "closed-forms-degree-1-2", ok,
                      f"rho1 = {rho1}, rho2 = {rho2}",
                      f"rho1 = {rho_rect[1]}, rho2 = {rho_rect[2]}"))

    mismatch = None
    for a in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        poly = realize_polygon(RegionSpec.house(a))
        for n in range(4):
            for m in range(4):
                if moments.house_moment_closed(a, n, m) \
                        != moments.complex_moment(poly, n, m):
                    mismatch = ("house", a, n, m)
    for a in (Fraction(2, 3), Fraction(3, 2)):
        poly = realize_polygon(RegionSpec.right_triangle(a))
        for n in range(4):
            for m in range(4):
                if moments.right_triangle_moment_closed(a, n, m) \
                        != moments.complex_moment(poly, n, m):
                    mismatch = ("right_triangle", a, n, m)
    for a, b in ((2, Fraction(1, 2)), (1, 1)):
        poly = realize_polygon(RegionSpec.rectangle(a, b))
        for n in range(4):
            for m in range(4):
                if moments.rectangle_moment_closed(a, b, n, m) \
                        != moments.complex_moment(poly, n, m):
                    mismatch = ("rectangle", a, n, m)
    out.append(_check("exact", "closed-moments-match-polygon-route",
                      mismatch is None,
                      "all c_nm equal (n, m <= 3)" if mismatch is None
                      else f"first mismatch at {mismatch}",
                      "closed-form moments == polygon-pipeline moments"))
    return out


# ---------------------------------------------------------------------------
# opuc: the cubic worked example on the unit circle
# ---------------------------------------------------------------------------

def _opuc_checks(precision: int) -> list:
    out = []
    q = ComplexPolynomial([8, 12, 6, 1])  # (z + 2)^3, constant term first
    scale_sq = Fraction(11, 81)
    measure = opuc.reciprocal_poly_measure(q, scale_sq)
    out.append(_check("opuc", "measure-mass", measure.mass == 1,
                      measure.mass, "1 (exactly)"))

    expected_alphas = (Fraction(-10, 11), Fraction(-4, 7), Fraction(-1, 8))
    ok = tuple(measure.alphas) == expected_alphas
    out.append(_check("opuc", "verblunsky-coefficients", ok,
                      "(" + ", ".join(str(a) for a in measure.alphas) + ")",
                      "(-10/11, -4/7, -1/8)"))

    phi1 = ComplexPolynomial([Fraction(10, 11), 1])
    phi2 = ComplexPolynomial([Fraction(4, 7), Fraction(10, 7), 1])
    ok = measure.lower[1] == phi1 and measure.lower[2] == phi2
    out.append(_check("opuc", "first-kind-polynomials", ok,
                      f"Phi1 = {measure.lower[1].poly}, Phi2 = {measure.lower[2].poly}",
                      "z + 10/11 and z^2 + (10/7)z + 4/7"))

    psi3 = opuc.second_kind(measure.alphas).poly
    expected_psi3 = ComplexPolynomial(
        [Fraction(-1, 8), Fraction(-23, 44), Fraction(-7, 22), 1])
    out.append(_check("opuc", "second-kind-cubic", psi3 == expected_psi3,
                      str(psi3), "z^3 - (7/22)z^2 - (23/44)z - 1/8"))

    f = opuc.herglotz_from_reciprocal_poly(q, scale_sq)
    expected_f = RationalFunction(
        ComplexPolynomial([24, Fraction(-84, 11), Fraction(-138, 11), -3]),
        ComplexPolynomial([24, 36, 18, 3]))
    out.append(_check("opuc", "herglotz-closed-form", f.equivalent(expected_f),
                      f"F = ({f.num}) / ({f.den})",
                      "(24 - (84/11)z - (138/11)z^2 - 3z^3) / (3(z+2)^3)"))

    with mp.workprec(precision):
        psi_map = conformal.reciprocal_map_series(
            [8, 12, 6, 1], scale_sq, truncation=160, precision=precision)
        herglotz = conformal.herglotz_series(psi_map)
        exact_taylor = f.taylor(33)
        series_taylor = herglotz.f_coefficients()
        worst = max(abs(to_mpc(a) - to_mpc(b))
                    for a, b in zip(exact_taylor, series_taylor))
        tol = mp.mpf(2) ** (-(precision // 2))
    out.append(_check("opuc", "herglotz-series-agreement", worst <= tol,
                      f"max coefficient gap {_fmt(worst, 6)}",
                      f"<= {_fmt(tol, 6)} over 33 Taylor terms"))

    fixed = (ComplexRational(Fraction(1, 2), Fraction(1, 3)),
             ComplexRational(Fraction(-3, 5), Fraction(1, 7)),
             ComplexRational(Fraction(2, 9), Fraction(-5, 11)),
             ComplexRational(0, Fraction(9, 10)))
    phi = opuc.szego_forward(fixed)
    back, lower = opuc.szego_inverse(phi)
    ok = back == fixed and all(
        lower[k] == opuc.szego_forward(fixed[:k]) for k in range(len(fixed)))
    out.append(_check("opuc", "recursion-roundtrip", ok,
                      "coefficients and lower polynomials recovered" if ok
                      else "roundtrip mismatch",
                      "bit-exact forward/inverse agreement"))
    return out


# ---------------------------------------------------------------------------
# series: classical double-series references
# ---------------------------------------------------------------------------

def _series_checks(precision: int) -> list:
    out = []
    with mp.workprec(precision):
        tri, tri_tail = reference.isosceles_right_triangle_rho_series(
            100, 100, precision=precision)
        out.append(_check("series", "triangle-value",
                          abs(tri - mp.mpf("0.0260897")) <= mp.mpf("1e-6"),
                          tri, "0.0260897 +- 1e-6"))
        out.append(_check("series", "triangle-scaled-legs",
                          abs(4 * tri - mp.mpf("0.1043586")) <= mp.mpf("4e-6"),
                          4 * tri, "0.1043586 +- 4e-6"))

        rect, rect_tail = reference.rectangle_rho_series(
            2, Fraction(1, 2), precision=precision)
        out.append(_check("series", "rectangle-2-by-half",
                          abs(rect - mp.mpf("0.0702032")) <= mp.mpf("1e-6"),
                          rect, "0.0702032 +- 1e-6"))

        lo, hi = reference.rectangle_rho_bracket(2, Fraction(1, 2))
        ok = to_mpf(lo) - rect_tail <= rect <= to_mpf(hi)
        out.append(_check("series", "rectangle-bracket", ok,
                          f"{_fmt(lo, 8)} <= {_fmt(rect, 8)} <= {_fmt(hi, 8)}",
                          "partial sum inside the elementary bracket"))

        rect_fine, _ = reference.rectangle_rho_series(
            2, Fraction(1, 2), 170, 170, precision=precision)
        tri_fine, _ = reference.isosceles_right_triangle_rho_series(
            200, 200, precision=precision)
        honest = (abs(rect_fine - rect) <= rect_tail
                  and abs(tri_fine - tri) <= tri_tail)
        out.append(_check("series", "tail-honesty", honest,
                          f"rect gap {_fmt(abs(rect_fine - rect), 4)} "
                          f"(tail {_fmt(rect_tail, 4)}), tri gap "
                          f"{_fmt(abs(tri_fine - tri), 4)} (tail {_fmt(tri_tail, 4)})",
                          "doubling the caps moves less than the reported tail"))

        disk = reference.disk_rho(1, precision=precision)
        eps = mp.mpf(2) ** (16 - precision)
        ok = abs(disk - mp.pi / 2) <= eps \
            and abs(reference.disk_rho(3) - 81 * mp.pi / 2) <= 81 * eps
        out.append(_check("series", "disk-closed-form", ok,
                          disk, "pi/2 (and 81 pi/2 at radius 3)"))
    return out


# ---------------------------------------------------------------------------
# conformal: map routes vs closed forms
# ---------------------------------------------------------------------------

def _conformal_checks(precision: int) -> list:
    out = []
    with mp.workprec(precision):
        tol_rel = mp.mpf("1e-8")
        for a, label in ((Fraction(1, 2), "half"), (1, "one"), (2, "two")):
            oval = conformal.neumann_oval_family(a, precision=precision)
            est = conformal.rho_conformal(oval.psi_series(200),
                                          precision=precision)
            rel = abs(est.value - oval.rho_closed) / oval.rho_closed
            out.append(_check("conformal", f"oval-series-vs-closed-a-{label}",
                              rel <= tol_rel, f"relative gap {_fmt(rel, 6)}",
                              "<= 1e-8 at truncation 200"))

        oval_one = conformal.neumann_oval_family(1, precision=precision)
        gap = abs(oval_one.rho_closed - 7 * mp.pi / 2)
        out.append(_check("conformal", "oval-a-one-is-seven-halves-pi",
                          gap <= mp.pi * mp.mpf(2) ** (20 - precision),
                          oval_one.rho_closed, "7 pi / 2"))

        dent = conformal.dented_disk_family(Fraction(1, 5), Fraction(3, 2),
                                            precision=precision)
        est = conformal.rho_conformal(dent.psi_series(200), precision=precision)
        rel = abs(est.value - dent.rho_closed) / dent.rho_closed
        out.append(_check("conformal", "dent-series-vs-closed",
                          rel <= mp.mpf("1e-6"),
                          f"relative gap {_fmt(rel, 6)}", "<= 1e-6"))

        gaps = []
        for b in (10, 100, 1000):
            far = conformal.dented_disk_family(Fraction(1, 5), b,
                                               precision=precision)
            gaps.append(mp.pi / 2 - far.rho_closed)
        ok = gaps[0] > gaps[1] > gaps[2] > 0
        out.append(_check("conformal", "dent-flattens-to-disk", ok,
                          "pi/2 gaps " + ", ".join(_fmt(g, 4) for g in gaps),
                          "strictly decreasing toward 0 as b grows"))

        tol = mp.mpf(2) ** (-(precision // 2))
        _, stress = dent.stress_pair()
        res_dent = conformal.boundary_stress_residual(stress, dent.psi_point, 64)
        _, stress_oval = oval_one.stress_pair()
        res_oval = conformal.boundary_stress_residual(
            stress_oval, oval_one.psi_point, 64)
        ok = res_dent <= tol and res_oval <= tol
        out.append(_check("conformal", "boundary-stress-vanishes", ok,
                          f"dent {_fmt(res_dent, 4)}, oval {_fmt(res_oval, 4)}",
                          f"<= {_fmt(tol, 4)} on 64 boundary samples"))

        eq = conformal.equilateral_triangle_exact(precision)
        ok = (eq.report["rational_wall_points_exact_zero"]
              and eq.report["boundary_max_residual"] <= tol
              and eq.q == ComplexPolynomial([0, 0, 1]))
        out.append(_check("conformal", "equilateral-stress-wall", ok,
                          f"max wall residual "
                          f"{_fmt(eq.report['boundary_max_residual'], 4)}",
                          "0 at rational points, below tolerance elsewhere"))
    return out


# ---------------------------------------------------------------------------
# sandwich: house lower bounds vs moment upper bounds
# ---------------------------------------------------------------------------

def _house_rho(a, degree: int = 7):
    table = moments.moment_table(realize_polygon(RegionSpec.house(a)), degree)
    return bergman.rho_sequence(table, degree)


def _sandwich_checks(precision: int) -> list:
    out = []
    rho = _house_rho(Fraction(1, 2))
    rect_anchor = Fraction(702032, 10 ** 7)
    out.append(_check("sandwich", "house-peak-beats-rectangle",
                      rho[7] > rect_anchor,
                      f"rho7 = {_fmt(to_mpf(rho[7]), 12)}",
                      "> 0.0702032 (the rectangle it degenerates to)"))

    with mp.workprec(precision):
        plateau = (rho[5] == rho[6]
                   and abs(to_mpf(rho[5]) - mp.mpf("0.0703208")) <= mp.mpf("1e-5"))
        out.append(_check("sandwich", "house-even-degree-plateau", plateau,
                          f"rho5 = {_fmt(to_mpf(rho[5]), 12)}, rho6 - rho5 = "
                          f"{rho[6] - rho[5]}",
                          "rho5 == rho6 = 0.0703208 +- 1e-5"))

    violations = []
    smallest = None
    for k in range(32):
        a = Fraction(k, 62)
        upper = _house_rho(a)[7]
        lower = lowerbound.house_lower(a, precision=precision)
        gap = upper - lower.value_exact
        if gap < 0:
            violations.append(a)
        if smallest is None or gap < smallest[1]:
            smallest = (a, gap)
    out.append(_check("sandwich", "house-grid-32-points", not violations,
                      f"{len(violations)} violations; smallest gap "
                      f"{_fmt(to_mpf(smallest[1]), 6)} at a = {smallest[0]}",
                      "lower bound <= rho7 at all 32 grid points"))
    return out


# ---------------------------------------------------------------------------
# properties: structural invariants
# ---------------------------------------------------------------------------

def _builtin_tables(precision: int):
    """Degree-10 moment tables for one representative of every family."""
    polygonal = [
        RegionSpec.rectangle(2, Fraction(1, 2)),
        RegionSpec.house(Fraction(1, 3)),
        RegionSpec.right_triangle(Fraction(3, 2)),
        RegionSpec.polygon([(0, 0), (3, 0), (3, 1), (1, 2)]),
        RegionSpec.equilateral_triangle(),
        RegionSpec.unit_disk(),
    ]
    mapped = [
        RegionSpec.dented_disk(Fraction(1, 5), Fraction(3, 2)),
        RegionSpec.neumann_oval(1),
        RegionSpec.reciprocal_poly_map([8, 12, 6, 1], Fraction(11, 81)),
    ]
    for spec in polygonal:
        yield spec, moments.moment_table(spec, 10, precision)
    for spec in mapped:
        yield spec, conformal.moment_table_from_map(
            spec, 10, truncation=200, precision=precision)


def _property_checks(precision: int) -> list:
    out = []
    with mp.workprec(precision):
        worst_herm = mp.mpf(0)
        failed_pd = []
        for spec, table in _builtin_tables(precision):
            worst_herm = max(worst_herm, to_mpf(table.hermitian_residual()))
            try:
                basis = bergman.orthonormalize(table, 10)
            except TorsionError:
                failed_pd.append(str(spec))
                continue
            if any(not to_mpf(s) > 0 for s in basis.norms_sq):
                failed_pd.append(str(spec))
        # independent evaluations (not the mirrored storage): the identity
        # c_ij = conj(c_ji) must come out bit-exact on the rational pipeline
        house = realize_polygon(RegionSpec.house(Fraction(1, 3)))
        sym = all(moments.complex_moment(house, i, j)
                  == moments.complex_moment(house, j, i).conjugate()
                  for i in range(5) for j in range(5))
        sym = sym and all(
            moments.house_moment_closed(Fraction(1, 3), i, j)
            == moments.house_moment_closed(Fraction(1, 3), j, i).conjugate()
            for i in range(5) for j in range(5))
        out.append(_check("properties", "moment-hermiticity",
                          worst_herm == 0 and sym,
                          f"stored residual {_fmt(worst_herm, 4)}, "
                          "independent c_ij == conj(c_ji) "
                          + ("bit-exact" if sym else "violated"),
                          "0 across 9 families, degree 10"))
        out.append(_check("properties", "gram-positive-definite",
                          not failed_pd,
                          "all pivots positive" if not failed_pd
                          else "failed for " + ", ".join(failed_pd),
                          "positive pivots for every family, degree 10"))

        rho = _house_rho(Fraction(1, 3), degree=8)
        exact_ok = all(rho[n + 1] <= rho[n] for n in range(8)) and rho[8] > 0
        oval = conformal.neumann_oval_family(1, precision=precision)
        oval_table = conformal.moment_table_from_map(
            RegionSpec.neumann_oval(1), 12, truncation=200, precision=precision)
        oval_rho = bergman.rho_sequence(oval_table, 12)
        slack = oval_rho[0] * mp.mpf(2) ** (16 - precision)
        float_ok = all(oval_rho[n + 1] <= oval_rho[n] + slack for n in range(12))
        out.append(_check("properties", "rho-monotone-nonincreasing",
                          exact_ok and float_ok,
                          "house(1/3) exact and oval(1) to degree 12",
                          "each rho_{n+1} <= rho_n, all positive"))

        house = realize_polygon(RegionSpec.house(Fraction(1, 3)))
        area = house.signed_area()
        limit = to_mpf(area) ** 2 / (2 * mp.pi)
        rho7 = to_mpf(rho[7])
        out.append(_check("properties", "isoperimetric-upper-bound",
                          rho7 <= limit, rho7,
                          f"<= area^2/(2 pi) = {_fmt(limit, 8)}"))

        eq_table = moments.moment_table(
            RegionSpec.equilateral_triangle(), 8, precision)
        worst_coeff = mp.mpf(0)
        half_tol = mp.mpf(2) ** (-(precision // 2))
        for n in range(2, 9):
            qn = bergman.bergman_projection(eq_table, n)
            for k, c in enumerate(qn.coeffs):
                target = 1 if k == 2 else 0
                worst_coeff = max(worst_coeff, abs(to_mpc(c) - target))
        out.append(_check("properties", "equilateral-projection-is-z-squared",
                          worst_coeff <= half_tol,
                          f"max |Q_N - z^2| coefficient {_fmt(worst_coeff, 4)}",
                          f"<= {_fmt(half_tol, 4)} for N in 2..8"))

        eq = conformal.equilateral_triangle_exact(precision)
        gap = abs(to_mpf(eq.rho) - mp.sqrt(3) * 9 / 80)
        rho_moment = bergman.rho_sequence(eq_table, 8)[8]
        out.append(_check("properties", "equilateral-rho-value",
                          gap <= mp.mpf("1e-10")
                          and abs(to_mpf(rho_moment) - to_mpf(eq.rho)) <= mp.mpf("1e-10"),
                          f"{_fmt(to_mpf(eq.rho), 14)} (moment route "
                          f"{_fmt(to_mpf(rho_moment), 14)})",
                          "9 sqrt(3) / 80 within 1e-10"))

        probe = bergman.convergence_probe(
            RegionSpec.neumann_oval(1), 20, oval.rho_closed,
            precision=precision, truncation=200, fit_window=(5, 20))
        ok = probe.ratio is not None and probe.ratio < mp.mpf("0.9")
        out.append(_check("properties", "geometric-convergence-rate", ok,
                          f"fitted ratio {_fmt(probe.ratio, 6)}"
                          if probe.ratio is not None else "no fit",
                          "< 0.9 on the oval, degrees 5..20"))
    return out


# ---------------------------------------------------------------------------
# long sweeps
# ---------------------------------------------------------------------------

def _rectsweep_checks(precision: int) -> list:
    ratios = []
    with mp.workprec(precision):
        for i in range(20):
            a = 1 + Fraction(9 * i, 19)
            est = bergman.rho_upper(RegionSpec.rectangle(a, 1 / a), degree=12)
            series_value, _ = reference.rectangle_rho_series(
                a, 1 / a, precision=precision)
            ratios.append(to_mpf(est.value_exact) / series_value - 1)
        ok = all(0 < r < mp.mpf("0.005") for r in ratios)
        lo, hi = min(ratios), max(ratios)
    return [_check("rectsweep", "moment-within-half-percent", ok,
                   f"rho12/series - 1 in [{_fmt(lo, 6)}, {_fmt(hi, 6)}]",
                   "inside (0, 0.005) at all 20 aspect ratios")]


def _argmax_checks(precision: int) -> list:
    window_lo = Fraction(1408131, 10 ** 6)
    window_hi = Fraction(14203223, 10 ** 7)
    anchor = Fraction(1043586, 10 ** 7)
    values = []
    for k in range(501):
        a = 1 + Fraction(k, 500)
        table = moments.moment_table(RegionSpec.right_triangle(a), 10)
        values.append((a, bergman.rho_sequence(table, 10)[10]))
    best_a, best_v = max(values, key=lambda pair: pair[1])
    inside = window_lo <= best_a <= window_hi
    spill = [a for a, v in values
             if not window_lo <= a <= window_hi and v >= anchor]
    out = [_check("argmax", "maximum-near-isosceles", inside,
                  f"argmax at a = {best_a} "
                  f"(rho10 = {_fmt(to_mpf(best_v), 10)})",
                  "inside [1.408131, 1.4203223]")]
    out.append(_check("argmax", "rest-of-grid-below-isosceles-value",
                      not spill,
                      "no grid point outside the window reaches 0.1043586"
                      if not spill else f"{len(spill)} points spill over",
                      "rho10 < 0.1043586 off the window, step 0.002"))
    return out


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

_GROUPS = {
    "exact": _exact_checks,
    "opuc": _opuc_checks,
    "series": _series_checks,
    "conformal": _conformal_checks,
    "sandwich": _sandwich_checks,
    "properties": _property_checks,
    "rectsweep": _rectsweep_checks,
    "argmax": _argmax_checks,
}


def run_checks(only=None, full: bool = False,
               precision: int | None = None) -> tuple:
    """Execute the selected groups; returns (results, skipped_group_names)."""
    precision = precision or DEFAULT_PRECISION
    if only:
        unknown = [g for g in only if g not in _GROUPS]
        if unknown:
            raise PreconditionError(
                "unknown verify group(s): " + ", ".join(sorted(unknown)))
        selected = [g for g in (*GROUP_ORDER, *LONG_GROUP_ORDER) if g in set(only)]
        skipped = ()
    else:
        selected = list(GROUP_ORDER)
        skipped = () if full else LONG_GROUP_ORDER
        if full:
            selected += list(LONG_GROUP_ORDER)
    results = []
    for group in selected:
        results.extend(_GROUPS[group](precision))
    return results, skipped


def run(only=None, full: bool = False, precision: int | None = None,
        stream=None) -> int:
    stream = stream if stream is not None else sys.stdout
    results, skipped = run_checks(only=only, full=full, precision=precision)
    for result in results:
        print(result.line(), file=stream)
    if skipped:
        print("skipped long groups: " + ", ".join(skipped)
              + " (enable with --full)", file=stream)
    failed = sum(1 for r in results if not r.ok)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=stream)
    return 1 if failed else 0
