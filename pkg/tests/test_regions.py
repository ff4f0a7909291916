"""Region specs, polygon validation, and the JSON wire format."""

from fractions import Fraction

import pytest

from torsion.errors import (
    DegenerateRegionError,
    ParameterDomainError,
    RegionSpecError,
)
from torsion.regions import (
    PolygonRegion,
    RegionSpec,
    area_and_centroid,
    parse_region_spec,
    realize_polygon,
)


def test_polygon_rejects_clockwise_input():
    with pytest.raises(DegenerateRegionError):
        PolygonRegion([(0, 0), (0, 1), (1, 1), (1, 0)])


def test_polygon_rejects_self_intersection():
    with pytest.raises(DegenerateRegionError):
        PolygonRegion([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_polygon_rejects_repeated_vertex():
    with pytest.raises(DegenerateRegionError):
        PolygonRegion([(0, 0), (1, 0), (1, 0), (0, 1)])


def test_polygon_tolerates_collinear_mid_edge_vertex():
    poly = PolygonRegion([(0, 0), (1, 0), (2, 0), (1, 1)])
    assert poly.signed_area() == 1


def test_area_and_centroid_exact():
    poly = PolygonRegion([(0, 0), (2, 0), (2, 1), (0, 1)])
    area, (cx, cy) = area_and_centroid(poly)
    assert area == 2
    assert (cx, cy) == (1, Fraction(1, 2))


@pytest.mark.parametrize("family, kwargs", [
    ("rectangle", {"a": 2, "b": Fraction(1, 2)}),
    ("house", {"a": Fraction(1, 4)}),
    ("right_triangle", {"a": Fraction(3, 2)}),
    ("dented_disk", {"a": Fraction(1, 5), "b": Fraction(3, 2)}),
    ("neumann_oval", {"a": 1}),
])
def test_spec_json_roundtrip(family, kwargs):
    spec = getattr(RegionSpec, family)(**kwargs)
    again = parse_region_spec(spec.to_json_dict())
    assert again == spec


def test_polygon_spec_json_roundtrip():
    spec = RegionSpec.polygon([("-1/3", "-1/3"), ("2/3", "-1/3"),
                               ("-1/3", "2/3")])
    again = parse_region_spec(spec.to_json_dict())
    assert again == spec
    assert spec.get("vertices")[0] == (Fraction(-1, 3), Fraction(-1, 3))


def test_parse_rejects_unknown_family():
    with pytest.raises(RegionSpecError):
        parse_region_spec({"family": "heptagon", "a": 1})


def test_parse_rejects_missing_parameter():
    with pytest.raises(RegionSpecError):
        parse_region_spec({"family": "rectangle", "a": 2})


def test_parse_rejects_bad_json_text():
    with pytest.raises(RegionSpecError):
        parse_region_spec("{not json")


def test_house_parameter_domain():
    with pytest.raises(ParameterDomainError):
        RegionSpec.house(Fraction(3, 4))
    with pytest.raises(ParameterDomainError):
        RegionSpec.house(-1)
    # both endpoints are admissible (square and full gable)
    RegionSpec.house(0)
    RegionSpec.house(Fraction(1, 2))


def test_house_parameter_domain_accepts_floats():
    RegionSpec.house(0.25)
    with pytest.raises(ParameterDomainError):
        RegionSpec.house(0.75)


def test_realize_house_has_unit_area_across_family():
    # walls of height a, gable apex at 1-a: the area stays 1 for every a
    for a in (0, Fraction(1, 8), Fraction(1, 3), Fraction(1, 2)):
        poly = realize_polygon(RegionSpec.house(a))
        assert poly.signed_area() == 1


def test_realize_house_endpoints_degenerate_cleanly():
    # a = 0 collapses the walls: an isosceles triangle of base 2, height 1
    tri = realize_polygon(RegionSpec.house(0))
    assert tri.vertices == ((-1, 0), (1, 0), (0, 1))
    # a = 1/2 flattens the gable onto the 2 x 1/2 rectangle
    rect = realize_polygon(RegionSpec.house(Fraction(1, 2)))
    assert all(y in (0, Fraction(1, 2)) for _, y in rect.vertices)


def test_realize_right_triangle_unit_area():
    poly = realize_polygon(RegionSpec.right_triangle(Fraction(3, 2)))
    assert poly.signed_area() == 1


def test_transforms_compose_exactly():
    tri = PolygonRegion([(0, 0), (1, 0), (0, 1)])
    moved = tri.translated(Fraction(1, 3), -2)
    assert moved.signed_area() == tri.signed_area()
    scaled = tri.scaled(3)
    assert scaled.signed_area() == 9 * tri.signed_area()
    # rotation by a rational point on the circle (3-4-5)
    rot = tri.rotated(Fraction(3, 5), Fraction(4, 5))
    assert rot.signed_area() == tri.signed_area()


def test_spec_str_is_compact():
    assert str(RegionSpec.house(Fraction(1, 4))) == "house(a=1/4)"
    assert str(RegionSpec.unit_disk()) == "unit_disk"
