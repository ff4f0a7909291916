"""Region descriptions: explicit polygons and named parametric families.

A :class:`RegionSpec` tags a region (explicit polygon, rectangle, house,
right triangle, equilateral triangle, unit disk, dented disk, Neumann oval,
or reciprocal-polynomial map).  The polygonal variants realize to a validated
counter-clockwise :class:`PolygonRegion`; the map-based variants are consumed
by the conformal module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import (
    DegenerateRegionError,
    InconsistencyError,
    ParameterDomainError,
    RegionSpecError,
    UnsupportedVariantError,
)
from .scalars import DEFAULT_PRECISION, as_fraction, is_exact, to_mpf

POLYGONAL_FAMILIES = (
    "polygon",
    "rectangle",
    "house",
    "right_triangle",
    "equilateral_triangle",
)
MAP_FAMILIES = ("unit_disk", "dented_disk", "neumann_oval", "reciprocal_poly_map")


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _on_segment(p, q, r) -> bool:
    """Collinear r lies within the closed box spanned by segment pq."""
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def _segments_touch(a, b, c, d) -> bool:
    """True when closed segments ab and cd share at least one point."""
    o1 = _sign(_cross(a, b, c))
    o2 = _sign(_cross(a, b, d))
    o3 = _sign(_cross(c, d, a))
    o4 = _sign(_cross(c, d, b))
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


class PolygonRegion:
    """A simple, counter-clockwise polygon (first vertex not repeated).

    Coordinates are exact rationals or mpmath floats; ``exact`` records which,
    ``precision`` the working precision used to create inexact coordinates.
    """

    __slots__ = ("vertices", "exact", "precision")

    def __init__(self, vertices, precision=None, validate=True):
        verts = [(v[0], v[1]) for v in vertices]
        self.vertices = tuple(verts)
        self.exact = all(is_exact(x) and is_exact(y) for x, y in verts)
        self.precision = None if self.exact else (precision or DEFAULT_PRECISION)
        if validate:
            self._validate()

    def _validate(self):
        v = self.vertices
        n = len(v)
        if n < 3:
            raise DegenerateRegionError(f"polygon needs >= 3 vertices, got {n}")
        if v[0] == v[-1]:
            raise DegenerateRegionError(
                "first vertex repeated at the end; supply an open vertex list")
        for i in range(n):
            if v[i] == v[(i + 1) % n]:
                raise DegenerateRegionError(f"consecutive equal vertices at index {i}")
        if self.signed_area() <= 0:
            raise DegenerateRegionError(
                "vertices are clockwise or collinear; expected positive signed area")
        # Reject spikes: a vertex where the boundary exactly backtracks.
        for i in range(n):
            a, b, c = v[i - 1], v[i], v[(i + 1) % n]
            cr = _cross(a, b, c)
            if cr == 0:
                dot = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1])
                if dot <= 0:
                    raise DegenerateRegionError(f"boundary backtracks at vertex {i}")
        # Pairwise edge test: non-adjacent edges may not touch at all.
        edges = [(v[i], v[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_touch(*edges[i], *edges[j]):
                    raise DegenerateRegionError(
                        f"boundary self-intersects: edges {i} and {j} touch")

    # -- geometry -------------------------------------------------------------

    def signed_area(self):
        v = self.vertices
        acc = 0
        for i in range(len(v)):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % len(v)]
            acc = acc + (x0 * y1 - x1 * y0)
        return acc / 2

    def edges(self):
        v = self.vertices
        for i in range(len(v)):
            yield v[i], v[(i + 1) % len(v)]

    def translated(self, dx, dy) -> "PolygonRegion":
        return PolygonRegion([(x + dx, y + dy) for x, y in self.vertices],
                             precision=self.precision, validate=False)

    def scaled(self, r) -> "PolygonRegion":
        if r <= 0:
            raise DegenerateRegionError("scale factor must be positive")
        return PolygonRegion([(x * r, y * r) for x, y in self.vertices],
                             precision=self.precision, validate=False)

    def rotated(self, cos_t, sin_t) -> "PolygonRegion":
        """Rotate by the angle whose cosine/sine are given (caller supplies both)."""
        return PolygonRegion(
            [(x * cos_t - y * sin_t, x * sin_t + y * cos_t) for x, y in self.vertices],
            precision=self.precision, validate=False)

    def __eq__(self, other):
        if not isinstance(other, PolygonRegion):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"PolygonRegion({list(self.vertices)!r})"


def area_and_centroid(poly: PolygonRegion):
    """Shoelace area and centroid; exact for exact coordinates."""
    a2 = 0
    cx = 0
    cy = 0
    for (x0, y0), (x1, y1) in poly.edges():
        w = x0 * y1 - x1 * y0
        a2 = a2 + w
        cx = cx + (x0 + x1) * w
        cy = cy + (y0 + y1) * w
    if a2 == 0:
        raise DegenerateRegionError("zero-area polygon")
    area = a2 / 2
    return area, (cx / (3 * a2), cy / (3 * a2))


def translate_to_zero_centroid(poly: PolygonRegion) -> PolygonRegion:
    _, (cx, cy) = area_and_centroid(poly)
    return poly.translated(-cx, -cy)


def rotate_to_zero_I21(poly: PolygonRegion, precision: int | None = None):
    """Rotate so the mixed third moment I_21 vanishes.

    Uses bisection on [0, pi]: I_21 is continuous in the angle and flips sign
    under rotation by pi, so a root always exists.  Requires the centroid to
    be at the origin already.  Returns ``(rotated_polygon, angle)``.
    """
    from . import moments  # deferred: moments imports nothing from here at runtime

    prec = precision or poly.precision or DEFAULT_PRECISION
    with mp.workprec(prec):
        area, (cx, cy) = area_and_centroid(poly)
        scale = mp.power(to_mpf(area), mp.mpf(5) / 2)
        tol = scale * mp.mpf(2) ** (-(prec // 2))
        if abs(to_mpf(cx)) > tol or abs(to_mpf(cy)) > tol:
            raise DegenerateRegionError("rotate_to_zero_I21 requires a centered polygon")

        mp_poly = PolygonRegion([(to_mpf(x), to_mpf(y)) for x, y in poly.vertices],
                                precision=prec, validate=False)

        def i21(theta):
            rotated = mp_poly.rotated(mp.cos(theta), mp.sin(theta))
            return moments.polygon_real_moment(rotated, 2, 1)

        lo, hi = mp.mpf(0), mp.pi
        f_lo = i21(lo)
        if abs(f_lo) <= tol:
            return poly, mp.mpf(0)
        f_hi = i21(hi)
        if _sign(f_lo) == _sign(f_hi):
            raise InconsistencyError(
                "no sign change of I_21 over [0, pi]; this contradicts the "
                "rotation-by-pi antisymmetry")
        for _ in range(prec + 16):
            mid = (lo + hi) / 2
            f_mid = i21(mid)
            if abs(f_mid) <= tol:
                return mp_poly.rotated(mp.cos(mid), mp.sin(mid)), mid
            if _sign(f_mid) == _sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        mid = (lo + hi) / 2
        return mp_poly.rotated(mp.cos(mid), mp.sin(mid)), mid


# -- parametric specs ---------------------------------------------------------


def _as_param(value):
    """Exact values stay exact; floats/mpf are kept as mp floats."""
    if isinstance(value, (int, str, Fraction)):
        return as_fraction(value)
    if is_exact(value):
        return value
    return mp.mpf(value)


@dataclass(frozen=True)
class RegionSpec:
    """Tagged region description; construct via the family classmethods."""

    family: str
    params: tuple = ()

    def get(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def is_polygonal(self) -> bool:
        return self.family in POLYGONAL_FAMILIES

    # -- constructors ---------------------------------------------------------

    @classmethod
    def polygon(cls, vertices) -> "RegionSpec":
        verts = tuple((_as_param(x), _as_param(y)) for x, y in vertices)
        return cls("polygon", (("vertices", verts),))

    @classmethod
    def rectangle(cls, a, b) -> "RegionSpec":
        a, b = _as_param(a), _as_param(b)
        if a <= 0 or b <= 0:
            raise ParameterDomainError("rectangle sides must be positive")
        return cls("rectangle", (("a", a), ("b", b)))

    @classmethod
    def house(cls, a) -> "RegionSpec":
        a = _as_param(a)
        # mpf refuses comparison against Fraction, so match the bound's type
        if not (0 <= a <= (Fraction(1, 2) if is_exact(a) else 0.5)):
            raise ParameterDomainError("house parameter must lie in [0, 1/2]")
        return cls("house", (("a", a),))

    @classmethod
    def right_triangle(cls, a) -> "RegionSpec":
        a = _as_param(a)
        if a <= 0:
            raise ParameterDomainError("right_triangle leg must be positive")
        return cls("right_triangle", (("a", a),))

    @classmethod
    def equilateral_triangle(cls) -> "RegionSpec":
        return cls("equilateral_triangle")

    @classmethod
    def unit_disk(cls) -> "RegionSpec":
        return cls("unit_disk")

    @classmethod
    def dented_disk(cls, a, b) -> "RegionSpec":
        a, b = _as_param(a), _as_param(b)
        return cls("dented_disk", (("a", a), ("b", b)))

    @classmethod
    def neumann_oval(cls, a) -> "RegionSpec":
        a = _as_param(a)
        if a <= 0:
            raise ParameterDomainError("neumann_oval parameter must be positive")
        return cls("neumann_oval", (("a", a),))

    @classmethod
    def reciprocal_poly_map(cls, coefficients, scale_sq=1) -> "RegionSpec":
        from .scalars import ComplexRational
        coeffs = []
        for c in coefficients:
            if isinstance(c, (list, tuple)):
                coeffs.append(ComplexRational(_as_param(c[0]), _as_param(c[1])))
            elif isinstance(c, ComplexRational):
                coeffs.append(c)
            else:
                coeffs.append(ComplexRational(_as_param(c)))
        scale_sq = _as_param(scale_sq)
        if scale_sq <= 0:
            raise ParameterDomainError("scale_sq must be positive")
        return cls("reciprocal_poly_map",
                   (("coefficients", tuple(coeffs)), ("scale_sq", scale_sq)))

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.family == "polygon":
            return {"polygon": [[str(x), str(y)] for x, y in self.get("vertices")]}
        out = {"family": self.family}
        for key, value in self.params:
            if key == "coefficients":
                out[key] = [[str(c.real), str(c.imag)] for c in value]
            else:
                out[key] = str(value)
        return out

    def __str__(self):
        if self.family == "polygon":
            return f"polygon[{len(self.get('vertices'))} vertices]"
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})" if inner else self.family


def parse_region_spec(data) -> RegionSpec:
    """Build a RegionSpec from the JSON wire format.

    Accepts ``{"polygon": [["-1","0"], ...]}`` or ``{"family": "house",
    "a": "1/4"}``; rational strings keep exactness.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise RegionSpecError(f"invalid JSON region spec: {exc}") from exc
    if not isinstance(data, dict):
        raise RegionSpecError("region spec must be a JSON object")
    if "polygon" in data:
        try:
            return RegionSpec.polygon(data["polygon"])
        except (TypeError, ValueError, IndexError) as exc:
            raise RegionSpecError(f"malformed polygon spec: {exc}") from exc
    family = data.get("family")
    if family is None:
        raise RegionSpecError("region spec needs a 'family' or 'polygon' key")
    args = {k: v for k, v in data.items() if k != "family"}
    builders = {
        "rectangle": lambda: RegionSpec.rectangle(args["a"], args["b"]),
        "house": lambda: RegionSpec.house(args["a"]),
        "right_triangle": lambda: RegionSpec.right_triangle(args["a"]),
        "equilateral_triangle": RegionSpec.equilateral_triangle,
        "unit_disk": RegionSpec.unit_disk,
        "dented_disk": lambda: RegionSpec.dented_disk(args["a"], args["b"]),
        "neumann_oval": lambda: RegionSpec.neumann_oval(args["a"]),
        "reciprocal_poly_map": lambda: RegionSpec.reciprocal_poly_map(
            args["coefficients"], args.get("scale_sq", 1)),
    }
    try:
        builder = builders[family]
    except KeyError:
        raise RegionSpecError(f"unknown region family {family!r}") from None
    try:
        return builder()
    except KeyError as exc:
        raise RegionSpecError(f"family {family!r} is missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise RegionSpecError(f"malformed parameters for {family!r}: {exc}") from exc


def realize_polygon(spec: RegionSpec, precision: int | None = None) -> PolygonRegion:
    """Realize a polygonal spec as a validated counter-clockwise polygon."""
    if not isinstance(spec, RegionSpec):
        raise RegionSpecError("realize_polygon expects a RegionSpec")
    fam = spec.family
    if fam == "polygon":
        return PolygonRegion(spec.get("vertices"), precision=precision)
    if fam == "rectangle":
        a, b = spec.get("a"), spec.get("b")
        if a <= 0 or b <= 0:
            raise DegenerateRegionError("rectangle with nonpositive side")
        ha, hb = a / 2, b / 2
        return PolygonRegion([(-ha, -hb), (ha, -hb), (ha, hb), (-ha, hb)],
                             precision=precision)
    if fam == "house":
        a = spec.get("a")
        if not (0 <= a <= (Fraction(1, 2) if is_exact(a) else 0.5)):
            raise ParameterDomainError("house parameter must lie in [0, 1/2]")
        raw = [(-1, 0), (1, 0), (1, a), (0, 1 - a), (-1, a)]
        verts = []
        for pt in raw:
            if not verts or pt != verts[-1]:
                verts.append(pt)
        while len(verts) > 1 and verts[0] == verts[-1]:
            verts.pop()
        return PolygonRegion(verts, precision=precision)
    if fam == "right_triangle":
        a = spec.get("a")
        if a <= 0:
            raise DegenerateRegionError("right_triangle with nonpositive leg")
        return PolygonRegion([(0 * a, 0 * a), (a, 0 * a), (a, 2 / a)],
                             precision=precision)
    if fam == "equilateral_triangle":
        prec = precision or DEFAULT_PRECISION
        with mp.workprec(prec):
            s = mp.sqrt(3) / 2
            half = mp.mpf(1) / 2
            return PolygonRegion([(mp.mpf(1), mp.mpf(0)), (-half, s), (-half, -s)],
                                 precision=prec)
    if fam in MAP_FAMILIES:
        raise UnsupportedVariantError(
            f"{fam} is not a polygonal family; use the conformal module")
    raise RegionSpecError(f"unknown region family {fam!r}")
