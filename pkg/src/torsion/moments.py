"""Area moments of polygons and parametric families.

Real moments I_mn = integral of x^m y^n over the region; complex moments
c_{i,j} = integral of z^i conj(z)^j.  Everything here is exact when the input
coordinates/parameters are exact rationals, and runs on mpmath floats
otherwise.  Closed forms cover the rectangle, the house (via terminating
Gauss hypergeometric sums), and the area-one right triangle.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, nstr

from .errors import (
    InconsistencyError,
    ParameterDomainError,
    PreconditionError,
    RegionSpecError,
    UnsupportedVariantError,
)
from .regions import PolygonRegion, RegionSpec, realize_polygon
from .scalars import (
    DEFAULT_PRECISION,
    ComplexRational,
    as_fraction,
    i_power,
    is_exact,
    to_mpc,
    to_mpf,
)

_comb = math.comb
_fact = math.factorial


def _simplex_factor(A: int, B: int, exact: bool):
    """integral of s^A t^B over the standard triangle {s,t>=0, s+t<=1}."""
    num = _fact(A) * _fact(B)
    den = _fact(A + B + 2)
    if exact:
        return Fraction(num, den)
    return mp.mpf(num) / den


def triangle_monomial_moment(v0, v1, v2, m: int, n: int):
    """integral of x^m y^n over the (signed) triangle v0 v1 v2.

    The sign follows the vertex orientation, so fan sums over arbitrary simple
    polygons come out right.  A degenerate (zero-area) triangle contributes 0
    and emits a warning.
    """
    x0, y0 = v0
    dx1, dy1 = v1[0] - x0, v1[1] - y0
    dx2, dy2 = v2[0] - x0, v2[1] - y0
    jac = dx1 * dy2 - dy1 * dx2
    if jac == 0:
        warnings.warn("degenerate triangle in moment computation", stacklevel=2)
        return jac
    exact = is_exact(jac) and is_exact(x0) and is_exact(y0)

    def powers(base, top):
        out = [base * 0 + 1]
        for _ in range(top):
            out.append(out[-1] * base)
        return out

    x0p, dx1p, dx2p = powers(x0, m), powers(dx1, m), powers(dx2, m)
    y0p, dy1p, dy2p = powers(y0, n), powers(dy1, n), powers(dy2, n)

    total = 0
    for p2 in range(m + 1):
        for p3 in range(m + 1 - p2):
            p1 = m - p2 - p3
            cm = _comb(m, p2 + p3) * _comb(p2 + p3, p2)
            xterm = cm * x0p[p1] * dx1p[p2] * dx2p[p3]
            for q2 in range(n + 1):
                for q3 in range(n + 1 - q2):
                    q1 = n - q2 - q3
                    cn = _comb(n, q2 + q3) * _comb(q2 + q3, q2)
                    total = total + (
                        xterm * cn * y0p[q1] * dy1p[q2] * dy2p[q3]
                        * _simplex_factor(p2 + q2, p3 + q3, exact))
    return jac * total


def polygon_real_moment(poly: PolygonRegion, m: int, n: int):
    """I_mn as the signed fan of triangle moments from the first vertex."""
    v = poly.vertices
    total = 0
    for i in range(1, len(v) - 1):
        total = total + triangle_monomial_moment(v[0], v[i], v[i + 1], m, n)
    return total


def polygon_real_moment_table(poly: PolygonRegion, max_total: int) -> dict:
    """All I_mn with m+n <= max_total, via edge (Green's theorem) integrals.

    I_mn = 1/(m+1) * sum over edges of integral x^{m+1} y^n dy.  Produces the
    same exact values as the triangle-fan route (property-tested) at a far
    lower cost for bulk tables.
    """
    table = {(m, n): 0 for m in range(max_total + 1)
             for n in range(max_total + 1 - m)}
    top = max_total + 1
    edges = list(poly.edges())
    if poly.exact:
        # Promote up front: integer-only edges would otherwise fall into
        # float division in the Beta-factor terms below.
        edges = [((Fraction(x0), Fraction(y0)), (Fraction(x1), Fraction(y1)))
                 for (x0, y0), (x1, y1) in edges]
    for (x0, y0), (x1, y1) in edges:
        dx, dy = x1 - x0, y1 - y0
        if dy == 0:
            continue  # the x^{m+1} y^n dy integrand vanishes on this edge
        x0p = [x0 * 0 + 1]
        dxp = [x0 * 0 + 1]
        y0p = [x0 * 0 + 1]
        dyp = [x0 * 0 + 1]
        for _ in range(top):
            x0p.append(x0p[-1] * x0)
            dxp.append(dxp[-1] * dx)
            y0p.append(y0p[-1] * y0)
            dyp.append(dyp[-1] * dy)
        for m in range(max_total + 1):
            for n in range(max_total + 1 - m):
                acc = 0
                for p in range(m + 2):
                    cp = _comb(m + 1, p) * x0p[m + 1 - p]
                    inner = 0
                    for q in range(n + 1):
                        inner = inner + (
                            _comb(n, q) * y0p[n - q] * dyp[q] * dxp[p]
                        ) / (p + q + 1)
                    acc = acc + cp * inner
                table[(m, n)] = table[(m, n)] + dy * acc / (m + 1)
    return table


def _complex_from_real(i: int, j: int, real_moment, exact: bool):
    """c_{i,j} from I-values via the binomial expansion of z^i conj(z)^j."""
    if exact:
        acc = ComplexRational(0)
    else:
        acc = mp.mpc(0)
        unit_powers = [mp.mpc(1), mp.mpc(0, 1), mp.mpc(-1), mp.mpc(0, -1)]
    for p in range(i + 1):
        for q in range(j + 1):
            coeff = _comb(i, p) * _comb(j, q) * (-1) ** (j - q)
            power = (i - p) + (j - q)
            value = real_moment(p + q, i + j - p - q)
            if exact:
                acc = acc + i_power(power) * (coeff * value)
            else:
                acc = acc + unit_powers[power % 4] * (coeff * to_mpf(value))
    return acc


def complex_moment(poly: PolygonRegion, i: int, j: int):
    """c_{i,j} of a polygon, expanded over polygon_real_moment values."""
    return _complex_from_real(
        i, j, lambda m, n: polygon_real_moment(poly, m, n), poly.exact)


def gauss_2F1_terminating(neg_n, b, c, x):
    """2F1(neg_n, b; c; x) for a nonpositive-integer first parameter.

    Evaluates the terminating series sum_{k<=K} (neg_n)_k (b)_k x^k / ((c)_k k!),
    exactly for exact inputs.
    """
    if isinstance(neg_n, Fraction):
        if neg_n.denominator != 1:
            raise PreconditionError("first parameter must be a nonpositive integer")
        neg_n = int(neg_n)
    if not isinstance(neg_n, int) or neg_n > 0:
        raise PreconditionError("first parameter must be a nonpositive integer")
    terms = -neg_n
    c_int = None
    if isinstance(c, int):
        c_int = c
    elif isinstance(c, Fraction) and c.denominator == 1:
        c_int = int(c)
    if c_int is not None and -(terms - 1) <= c_int <= 0:
        raise PreconditionError(
            "third parameter hits a nonpositive integer before the series terminates")
    term = x * 0 + 1
    total = term
    for k in range(terms):
        term = term * (neg_n + k) * (b + k) * x / ((c + k) * (k + 1))
        total = total + term
    return total


@lru_cache(maxsize=None)
def _gauss_2F1_exact_cached(neg_n: int, b: Fraction, c: Fraction, x: Fraction):
    return gauss_2F1_terminating(neg_n, b, c, x)


def house_moment_closed(a, n: int, m: int):
    """c_{n,m} of the house region via the terminating-hypergeometric sum."""
    exact = is_exact(a)
    # mpf refuses comparison against Fraction, so pick the bound to match
    if not (0 <= a <= (Fraction(1, 2) if exact else 0.5)):
        raise ParameterDomainError("house parameter must lie in [0, 1/2]")
    one = Fraction(1) if exact else mp.mpf(1)
    arg = (one - 2 * a) / (one - a)
    total = ComplexRational(0) if exact else mp.mpc(0)
    for j in range(n + 1):
        for k in range(m + 1):
            if (j + k) % 2:
                continue
            s = j + k
            d = m + n + 1 - s
            if exact:
                hyp = _gauss_2F1_exact_cached(
                    -d, Fraction(s + 1), Fraction(s + 2), as_fraction(arg))
            else:
                hyp = gauss_2F1_terminating(-d, s + 1, s + 2, arg)
            base = (2 * _comb(n, j) * _comb(m, k) * (-1) ** (m - k)
                    * (one - a) ** d * hyp) / ((s + 1) * d)
            if exact:
                total = total + i_power(n + m - s) * base
            else:
                total = total + mp.mpc(0, 1) ** ((n + m - s) % 4) * base
    return total


def right_triangle_moment_closed(a, n: int, m: int):
    """c_{n,m} of the area-one right triangle with legs a and 2/a."""
    if a <= 0:
        raise ParameterDomainError("right_triangle leg must be positive")
    exact = is_exact(a)
    if exact:
        # promote: an integer leg would otherwise hit float division below
        a = as_fraction(a)
    total = ComplexRational(0) if exact else mp.mpc(0)
    for j in range(n + 1):
        for k in range(m + 1):
            e = m + n - j - k
            base = (_comb(n, j) * _comb(m, k) * (-1) ** (m - k)
                    * 2 ** (1 + e) * a ** (2 * j + 2 * k - m - n))
            base = base / ((m + n + 2) * (e + 1))
            if exact:
                total = total + i_power(e) * base
            else:
                total = total + mp.mpc(0, 1) ** (e % 4) * base
    return total


def rectangle_real_moment(a, b, m: int, n: int):
    """I_mn of the centered a-by-b rectangle (odd orders vanish)."""
    if a <= 0 or b <= 0:
        raise ParameterDomainError("rectangle sides must be positive")
    if is_exact(a) and is_exact(b):
        # promote: integer sides would otherwise hit float true-division
        a, b = as_fraction(a), as_fraction(b)
    if m % 2 or n % 2:
        return a * 0
    return a ** (m + 1) * b ** (n + 1) / (2 ** (m + n) * (m + 1) * (n + 1))


def rectangle_moment_closed(a, b, i: int, j: int):
    return _complex_from_real(
        i, j, lambda m, n: rectangle_real_moment(a, b, m, n),
        is_exact(a) and is_exact(b))


class MomentTable:
    """Complex moments c[i][j] for 0 <= i,j <= degree+1, Hermitian by build."""

    __slots__ = ("degree", "entries", "exact", "precision", "label", "tail")

    def __init__(self, degree, entries, exact, precision=None, label="", tail=0):
        self.degree = degree
        self.entries = entries
        self.exact = exact
        self.precision = precision
        self.label = label
        self.tail = tail

    @classmethod
    def build(cls, degree, fill, exact, precision=None, label="", tail=0):
        """Fill the lower wedge i >= j from ``fill(i, j)`` and mirror the rest."""
        size = degree + 2
        entries = [[None] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1):
                value = fill(i, j)
                if i == j and not exact:
                    # c_nn = integral of |z|^(2n) is real; drop rounding noise
                    value = mp.mpc(to_mpc(value).real, 0)
                entries[i][j] = value
                if i != j:
                    entries[j][i] = value.conjugate()
        return cls(degree, entries, exact, precision, label, tail)

    def c(self, i: int, j: int):
        return self.entries[i][j]

    def gram(self, n: int):
        """Rows of the (n+1)x(n+1) Gram matrix (c[j][k])."""
        if n > self.degree + 1:
            raise PreconditionError(
                f"table holds moments to index {self.degree + 1}, gram({n}) requested")
        return [[self.entries[j][k] for k in range(n + 1)] for j in range(n + 1)]

    def hermitian_residual(self):
        """max |c[i][j] - conj(c[j][i])|; exact zero for exact tables."""
        worst = 0
        for i in range(self.degree + 2):
            for j in range(self.degree + 2):
                diff = self.entries[i][j] - self.entries[j][i].conjugate()
                mag = abs(to_mpc(diff)) if not self.exact else (
                    abs(diff.real) + abs(diff.imag))
                if mag > worst:
                    worst = mag
        return worst

    def to_json_dict(self) -> dict:
        def encode(value):
            if self.exact:
                return [str(as_fraction(value.real)), str(as_fraction(value.imag))]
            digits = max(17, int((self.precision or DEFAULT_PRECISION) * 0.302) + 2)
            z = to_mpc(value)
            return [nstr(z.real, digits), nstr(z.imag, digits)]

        return {
            "schema": "moment-table/1",
            "degree": self.degree,
            "exact": self.exact,
            "precision": self.precision,
            "label": self.label,
            "entries": [[encode(v) for v in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MomentTable":
        if data.get("schema") != "moment-table/1":
            raise RegionSpecError("not a moment-table/1 document")
        exact = bool(data["exact"])
        precision = data.get("precision")

        def decode(pair):
            if exact:
                return ComplexRational(Fraction(pair[0]), Fraction(pair[1]))
            with mp.workprec(precision or DEFAULT_PRECISION):
                return mp.mpc(mp.mpf(pair[0]), mp.mpf(pair[1]))

        entries = [[decode(v) for v in row] for row in data["entries"]]
        table = cls(int(data["degree"]), entries, exact, precision,
                    data.get("label", ""))
        if table.hermitian_residual() != 0 and exact:
            raise InconsistencyError("imported exact table is not Hermitian")
        return table


def moment_table_from_polygon(poly: PolygonRegion, degree: int,
                              precision: int | None = None) -> MomentTable:
    """Moment table of a polygon via the bulk edge-integral route."""
    prec = precision or poly.precision
    if poly.exact and precision is None:
        reals = polygon_real_moment_table(poly, 2 * degree + 2)
        fill = lambda i, j: _complex_from_real(i, j, lambda m, n: reals[(m, n)], True)
        return MomentTable.build(degree, fill, True, label="polygon")
    with mp.workprec(prec or DEFAULT_PRECISION):
        mp_poly = PolygonRegion([(to_mpf(x), to_mpf(y)) for x, y in poly.vertices],
                                precision=prec, validate=False)
        reals = polygon_real_moment_table(mp_poly, 2 * degree + 2)
        fill = lambda i, j: _complex_from_real(i, j, lambda m, n: reals[(m, n)], False)
        return MomentTable.build(degree, fill, False,
                                 precision=prec or DEFAULT_PRECISION, label="polygon")


def moment_table(spec, degree: int, precision: int | None = None) -> MomentTable:
    """Moment table for a polygonal family or the unit disk.

    Map-based families (dented disk, Neumann oval, reciprocal-polynomial map)
    are served by the conformal module, which integrates over the disk.
    """
    if isinstance(spec, PolygonRegion):
        return moment_table_from_polygon(spec, degree, precision)
    if not isinstance(spec, RegionSpec):
        raise RegionSpecError("moment_table expects a RegionSpec or PolygonRegion")

    fam = spec.family
    if fam == "unit_disk":
        prec = precision or DEFAULT_PRECISION
        with mp.workprec(prec):
            pi = mp.pi

            def fill(i, j):
                return mp.mpc(pi / (i + 1)) if i == j else mp.mpc(0)

            return MomentTable.build(degree, fill, False, precision=prec,
                                     label="unit_disk")
    if fam == "rectangle":
        a, b = spec.get("a"), spec.get("b")
        exact = is_exact(a) and is_exact(b) and precision is None
        if exact:
            return MomentTable.build(
                degree, lambda i, j: rectangle_moment_closed(a, b, i, j), True,
                label=str(spec))
        prec = precision or DEFAULT_PRECISION
        with mp.workprec(prec):
            am, bm = to_mpf(a), to_mpf(b)
            return MomentTable.build(
                degree, lambda i, j: rectangle_moment_closed(am, bm, i, j), False,
                precision=prec, label=str(spec))
    if fam == "house":
        a = spec.get("a")
        exact = is_exact(a) and precision is None
        if exact:
            return MomentTable.build(
                degree, lambda i, j: house_moment_closed(a, i, j), True,
                label=str(spec))
        prec = precision or DEFAULT_PRECISION
        with mp.workprec(prec):
            am = to_mpf(a)
            return MomentTable.build(
                degree, lambda i, j: house_moment_closed(am, i, j), False,
                precision=prec, label=str(spec))
    if fam == "right_triangle":
        a = spec.get("a")
        exact = is_exact(a) and precision is None
        if exact:
            return MomentTable.build(
                degree, lambda i, j: right_triangle_moment_closed(a, i, j), True,
                label=str(spec))
        prec = precision or DEFAULT_PRECISION
        with mp.workprec(prec):
            am = to_mpf(a)
            return MomentTable.build(
                degree, lambda i, j: right_triangle_moment_closed(am, i, j), False,
                precision=prec, label=str(spec))
    if fam in ("polygon", "equilateral_triangle"):
        return moment_table_from_polygon(realize_polygon(spec, precision), degree,
                                         precision)
    raise UnsupportedVariantError(
        f"moment tables for {fam!r} come from the conformal module")
