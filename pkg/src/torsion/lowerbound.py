"""Rayleigh-quotient lower bounds on torsional rigidity.

Any continuously differentiable trial function u vanishing on the boundary
gives the lower bound

    rho(Omega) >= 4 (integral of u)^2 / (integral of |grad u|^2),

and the supremum over all such u is rho itself.  This module evaluates the
quotient for polynomial (and continuous piecewise-polynomial) trials over
polygonal regions.  Both integrals are polynomials integrated over polygons,
so they are computed *exactly* via the Green-edge moment table -- a lower
bound contaminated by quadrature error would not be a bound.

A continuous piecewise trial with a gradient kink along an interior segment
is admissible: it can be approximated uniformly, together with its Dirichlet
energy, by smooth functions vanishing on the boundary, so the quotient it
produces is still a valid lower bound.

The built-in trials target the house pentagon (vertices (-1,0), (1,0),
(1,a), (0,1-a), (-1,a)): two global polynomials and one piecewise trial
split along the symmetry axis x = 0, each assembled from factors vanishing
on the base, the walls and the roof edges.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp

from .errors import (
    DegenerateTrialError,
    ParameterDomainError,
    PreconditionError,
)
from .estimates import RigidityEstimate
from .moments import polygon_real_moment_table
from .regions import PolygonRegion
from .scalars import DEFAULT_PRECISION, is_exact, to_mpf

__all__ = [
    "Polynomial2D",
    "PiecewisePolynomial2D",
    "integrate_over_polygon",
    "rayleigh_lower",
    "HouseTrials",
    "house_trials",
    "house_lower",
]


def _mul2(u, v):
    """Product of two real scalars, dropping to mpf on mixed exactness."""
    if is_exact(u) and is_exact(v):
        return u * v
    return to_mpf(u) * to_mpf(v)


def _add2(u, v):
    if is_exact(u) and is_exact(v):
        return u + v
    return to_mpf(u) + to_mpf(v)


class Polynomial2D:
    """A real bivariate polynomial, stored sparsely as {(m, n): coeff}.

    Coefficients may be ints/Fractions (exact) or mpmath floats; mixed
    arithmetic degrades to mpf.  Instances are immutable value objects.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=None):
        coeffs = {}
        for (m, n), c in dict(coefficients or {}).items():
            if not (isinstance(m, int) and isinstance(n, int)) or m < 0 or n < 0:
                raise PreconditionError("monomial exponents must be nonnegative ints")
            if c == 0:
                continue
            coeffs[(m, n)] = c
        self.coefficients = coeffs

    @classmethod
    def constant(cls, c) -> "Polynomial2D":
        return cls({(0, 0): c})

    @classmethod
    def variables(cls) -> tuple["Polynomial2D", "Polynomial2D"]:
        """The coordinate polynomials (x, y), the usual building blocks."""
        return cls({(1, 0): 1}), cls({(0, 1): 1})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coefficients.values())

    @property
    def total_degree(self) -> int:
        if not self.coefficients:
            return 0
        return max(m + n for m, n in self.coefficients)

    # -- ring operations -------------------------------------------------------

    def _combine(self, other, sign):
        if not isinstance(other, Polynomial2D):
            if not isinstance(other, (int, Fraction)) and is_exact(other):
                other = Fraction(other)
            other = Polynomial2D.constant(other)
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            cur = _add2(out.get(key, 0), _mul2(sign, c))
            if cur == 0:
                out.pop(key, None)
            else:
                out[key] = cur
        return Polynomial2D(out)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return Polynomial2D({k: -c for k, c in self.coefficients.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial2D):
            return Polynomial2D(
                {k: _mul2(c, other) for k, c in self.coefficients.items()})
        out = {}
        for (m1, n1), c1 in self.coefficients.items():
            for (m2, n2), c2 in other.coefficients.items():
                key = (m1 + m2, n1 + n2)
                out[key] = _add2(out.get(key, 0), _mul2(c1, c2))
        return Polynomial2D(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("polynomial powers must be nonnegative ints")
        out = Polynomial2D.constant(1)
        for _ in range(exponent):
            out = out * self
        return out

    def diff_x(self) -> "Polynomial2D":
        return Polynomial2D({(m - 1, n): m * c
                             for (m, n), c in self.coefficients.items() if m})

    def diff_y(self) -> "Polynomial2D":
        return Polynomial2D({(m, n - 1): n * c
                             for (m, n), c in self.coefficients.items() if n})

    def evaluate(self, x, y):
        if not self.coefficients:
            return 0
        exact = self.is_exact and is_exact(x) and is_exact(y)
        if not exact:
            x, y = to_mpf(x), to_mpf(y)
        mx = max(m for m, _ in self.coefficients)
        my = max(n for _, n in self.coefficients)
        xp, yp = [x * 0 + 1], [x * 0 + 1]
        for _ in range(mx):
            xp.append(xp[-1] * x)
        for _ in range(my):
            yp.append(yp[-1] * y)
        terms = [_mul2(c, xp[m] * yp[n]) for (m, n), c in self.coefficients.items()]
        if exact:
            return sum(terms)
        return mp.fsum(terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial2D):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __repr__(self):
        if self.is_zero:
            return "Polynomial2D({})"
        monos = sorted(self.coefficients)
        inner = ", ".join(f"({m},{n}): {self.coefficients[m, n]}" for m, n in monos)
        return f"Polynomial2D({{{inner}}})"


def integrate_over_polygon(poly: Polynomial2D, cell: PolygonRegion,
                           table: dict | None = None):
    """Exact integral of a polynomial over a polygon via its moment table."""
    if poly.is_zero:
        return 0
    if table is None:
        table = polygon_real_moment_table(cell, poly.total_degree)
    if poly.is_exact and cell.exact:
        return sum(c * table[key] for key, c in poly.coefficients.items())
    return mp.fsum(to_mpf(c) * to_mpf(table[key])
                   for key, c in poly.coefficients.items())


def _polygon_contains(cell: PolygonRegion, x, y) -> bool:
    """Boundary-inclusive point-in-polygon test (exact for exact data).

    Inexact data gets a small precision-derived margin on the boundary test,
    so points constructed *on* an edge in rounded arithmetic still count as
    contained instead of falling to the fragile ray-parity side.
    """
    exact = cell.exact and is_exact(x) and is_exact(y)
    if exact:
        verts = list(cell.vertices)
        eps = 0
    else:
        x, y = to_mpf(x), to_mpf(y)
        verts = [(to_mpf(vx), to_mpf(vy)) for vx, vy in cell.vertices]
        eps = mp.mpf(2) ** (16 - mp.prec)
    n = len(verts)
    inside = False
    for i in range(n):
        (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % n]
        dx, dy = x1 - x0, y1 - y0
        cross = dx * (y - y0) - dy * (x - x0)
        slack = eps * (abs(dx) + abs(dy) + abs(x - x0) + abs(y - y0))
        if (abs(cross) <= slack
                and min(x0, x1) - slack <= x <= max(x0, x1) + slack
                and min(y0, y1) - slack <= y <= max(y0, y1) + slack):
            return True
        if (y0 > y) != (y1 > y):
            # crossing of the horizontal ray towards +infinity
            if x0 + (y - y0) * dx / dy > x:
                inside = not inside
    return inside


def _edge_points(v0, v1, samples: int):
    """Points on the closed segment v0--v1 at equally spaced parameters."""
    exact = all(is_exact(c) for c in (*v0, *v1))
    x0, y0 = v0
    x1, y1 = v1
    if not exact:
        x0, y0, x1, y1 = (to_mpf(c) for c in (x0, y0, x1, y1))
    for k in range(samples + 2):
        t = Fraction(k, samples + 1) if exact else mp.mpf(k) / (samples + 1)
        yield x0 + t * (x1 - x0), y0 + t * (y1 - y0)


class PiecewisePolynomial2D:
    """A polynomial on each cell of a polygonal partition, continuous overall.

    ``pieces`` is a sequence of ``(PolygonRegion, Polynomial2D)`` pairs whose
    cells are trusted to have disjoint interiors; the union-area identity is
    enforced by :func:`rayleigh_lower` against its region argument.  Cells
    sharing a full edge (matched by endpoints) have their polynomials compared
    on sampled points of that edge at construction time; a mismatch beyond
    ``continuity_tol`` (exact zero for exact data) is rejected, since a
    discontinuous "trial" yields no bound at all.  Partial edge overlaps are
    not detected.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces, continuity_tol=None, samples: int = 8):
        checked = []
        for cell, poly in pieces:
            if not isinstance(cell, PolygonRegion) or not isinstance(poly, Polynomial2D):
                raise PreconditionError(
                    "pieces must pair a PolygonRegion with a Polynomial2D")
            checked.append((cell, poly))
        if not checked:
            raise PreconditionError("piecewise polynomial needs at least one piece")
        self.pieces = tuple(checked)
        residual = self.continuity_residual(samples)
        if continuity_tol is None:
            continuity_tol = 0 if self.is_exact else mp.mpf(2) ** -40
        if residual > continuity_tol:
            raise PreconditionError(
                f"pieces disagree on a shared edge (residual {residual})")

    @property
    def is_exact(self) -> bool:
        return all(cell.exact and poly.is_exact for cell, poly in self.pieces)

    @property
    def total_degree(self) -> int:
        return max(poly.total_degree for _, poly in self.pieces)

    @property
    def is_zero(self) -> bool:
        return all(poly.is_zero for _, poly in self.pieces)

    def continuity_residual(self, samples: int = 8):
        """Largest |p_i - p_j| over sampled points of edges shared by cells."""
        worst = 0
        cells = [cell for cell, _ in self.pieces]
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                for e0, e1 in cells[i].edges():
                    for f0, f1 in cells[j].edges():
                        if not ((e0 == f0 and e1 == f1) or (e0 == f1 and e1 == f0)):
                            continue
                        pi, pj = self.pieces[i][1], self.pieces[j][1]
                        for x, y in _edge_points(e0, e1, samples):
                            gap = abs(_add2(pi.evaluate(x, y),
                                            _mul2(-1, pj.evaluate(x, y))))
                            if gap > worst:
                                worst = gap
        return worst

    def evaluate(self, x, y):
        """Value at (x, y); the first cell containing the point decides."""
        for cell, poly in self.pieces:
            if _polygon_contains(cell, x, y):
                return poly.evaluate(x, y)
        raise PreconditionError(f"point ({x}, {y}) lies outside every cell")

    def __repr__(self):
        return f"PiecewisePolynomial2D(<{len(self.pieces)} pieces>)"


def rayleigh_lower(u, region: PolygonRegion, precision: int | None = None,
                   boundary_samples: int = 8,
                   tolerance=None) -> RigidityEstimate:
    """Lower bound 4 (int u)^2 / int |grad u|^2 for a trial on a polygon.

    ``u`` may be a plain :class:`Polynomial2D` (treated as a single piece on
    the whole region) or a :class:`PiecewisePolynomial2D` whose cells tile
    the region; the tiling is checked through the exact area identity.  The
    vanishing of u on the boundary is checked on sampled edge points; a
    residual above ``tolerance`` does not invalidate the arithmetic but is
    recorded under ``flags["boundary_residual"]``, because the quotient is
    only a true bound for admissible trials.
    """
    if isinstance(u, Polynomial2D):
        u = PiecewisePolynomial2D([(region, u)])
    if not isinstance(u, PiecewisePolynomial2D):
        raise PreconditionError("trial must be a (piecewise) Polynomial2D")
    if not isinstance(region, PolygonRegion):
        raise PreconditionError("region must be a PolygonRegion")
    prec = precision or DEFAULT_PRECISION
    exact = u.is_exact and region.exact
    with mp.workprec(prec):
        covered = 0
        for cell, _ in u.pieces:
            covered = _add2(covered, cell.signed_area())
        gap = abs(_add2(covered, _mul2(-1, region.signed_area())))
        area_tol = 0 if exact else mp.mpf(2) ** (8 - prec)
        if gap > area_tol:
            raise PreconditionError(
                f"cells do not tile the region (area mismatch {gap})")

        if u.is_zero:
            raise DegenerateTrialError("trial function is identically zero")
        mass = 0
        energy = 0
        for cell, poly in u.pieces:
            gx, gy = poly.diff_x(), poly.diff_y()
            grad2 = gx * gx + gy * gy
            table = polygon_real_moment_table(
                cell, max(poly.total_degree, grad2.total_degree))
            mass = _add2(mass, integrate_over_polygon(poly, cell, table))
            energy = _add2(energy, integrate_over_polygon(grad2, cell, table))
        if energy == 0 or energy < 0:
            raise DegenerateTrialError(
                "trial function has no Dirichlet energy; quotient undefined")

        residual = 0
        for v0, v1 in region.edges():
            for x, y in _edge_points(v0, v1, boundary_samples):
                mag = abs(u.evaluate(x, y))
                if mag > residual:
                    residual = mag
        tol = tolerance if tolerance is not None else mp.mpf(2) ** -(prec // 2)
        residual, tol = to_mpf(residual), to_mpf(tol)
        flags = {}
        if residual > tol:
            warnings.warn(
                "trial does not vanish on the sampled boundary "
                f"(residual {mp.nstr(to_mpf(residual), 6)}); "
                "the quotient is a bound only for admissible trials",
                stacklevel=2)
            flags["boundary_residual"] = to_mpf(residual)

        quotient = None
        if exact:
            quotient = 4 * Fraction(mass) ** 2 / Fraction(energy)
            value = to_mpf(quotient)
        else:
            value = 4 * to_mpf(mass) ** 2 / to_mpf(energy)
        return RigidityEstimate(
            value=value, bound="lower", method="rayleigh",
            order=u.total_degree, precision=prec,
            value_exact=quotient, flags=flags)


class HouseTrials(NamedTuple):
    u1: PiecewisePolynomial2D
    u2: PiecewisePolynomial2D
    u3: PiecewisePolynomial2D


def _dedup_polygon(raw, precision=None) -> PolygonRegion:
    verts = []
    for pt in raw:
        if not verts or pt != verts[-1]:
            verts.append(pt)
    while len(verts) > 1 and verts[0] == verts[-1]:
        verts.pop()
    return PolygonRegion(verts, precision=precision)


def house_trials(a, precision: int | None = None) -> HouseTrials:
    """The three built-in trial functions for the house with parameter a.

    With q(x) = (1-a) - (1-2a) x the right roof edge is y = q(x) for x in
    [0, 1] and the left one is its mirror y = q(-x).  The trials are

        u1 = y (2-y) (1-x^8) (y^2 - q(x)^2) (y^2 - q(-x)^2)
        u2 = y (1-x^4) (y^2 - q(x)^2) (y^2 - q(-x)^2)
        u3 = y (1-y) (1-x^4) (y^2 - q(-x)^2)   on x <= 0,
             y (1-y) (1-x^4) (y^2 - q(x)^2)    on x >= 0,

    each vanishing on the base (factor y), on the walls (the 1-x^{4,8}
    factors) and on both roof edges -- u1 and u2 through the full symmetric
    roof product, u3 through the single factor matching its own side's roof
    line, split along the symmetry axis where the two branches agree.
    """
    exact = is_exact(a)
    if exact:
        a = Fraction(a)
        half = Fraction(1, 2)
    else:
        a = to_mpf(a)
        half = 0.5
    if not (0 <= a <= half):
        raise ParameterDomainError("house parameter must lie in [0, 1/2]")

    x, y = Polynomial2D.variables()
    q_right = (1 - a) - (1 - 2 * a) * x
    q_left = (1 - a) + (1 - 2 * a) * x
    roof = (y * y - q_right * q_right) * (y * y - q_left * q_left)

    u1_poly = y * (2 - y) * (1 - x ** 8) * roof
    u2_poly = y * (1 - x ** 4) * roof
    u3_left = y * (1 - y) * (1 - x ** 4) * (y * y - q_left * q_left)
    u3_right = y * (1 - y) * (1 - x ** 4) * (y * y - q_right * q_right)

    zero = a * 0
    house = _dedup_polygon(
        [(-1 + zero, zero), (1 + zero, zero), (1 + zero, a),
         (zero, 1 - a), (-1 + zero, a)], precision=precision)
    left = _dedup_polygon(
        [(-1 + zero, zero), (zero, zero), (zero, 1 - a), (-1 + zero, a)],
        precision=precision)
    right = _dedup_polygon(
        [(zero, zero), (1 + zero, zero), (1 + zero, a), (zero, 1 - a)],
        precision=precision)

    return HouseTrials(
        u1=PiecewisePolynomial2D([(house, u1_poly)]),
        u2=PiecewisePolynomial2D([(house, u2_poly)]),
        u3=PiecewisePolynomial2D([(left, u3_left), (right, u3_right)]),
    )


def house_lower(a, precision: int | None = None,
                boundary_samples: int = 8,
                trial: str | None = None) -> RigidityEstimate:
    """Best of the three built-in house trials, tagged with the winner.

    Passing ``trial`` ("u1", "u2" or "u3") skips the contest and scores that
    single trial instead.
    """
    trials = house_trials(a, precision=precision)
    region = trials.u1.pieces[0][0]
    if trial is not None:
        if trial not in HouseTrials._fields:
            raise PreconditionError(
                f"unknown trial preset {trial!r}; choose from u1, u2, u3")
        est = rayleigh_lower(getattr(trials, trial), region,
                             precision=precision,
                             boundary_samples=boundary_samples)
        est.flags["trial"] = trial
        return est
    best = None
    best_name = None
    for name, candidate in zip(HouseTrials._fields, trials):
        est = rayleigh_lower(candidate, region, precision=precision,
                             boundary_samples=boundary_samples)
        if best is None or est.value > best.value:
            best, best_name = est, name
    best.flags["trial"] = best_name
    return best
