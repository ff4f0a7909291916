"""Torsional rigidity of planar regions.

The rigidity rho(Omega) is computed three independent ways:

* moment-method upper bounds rho_N from exact area moments
  (:func:`rho_upper`, :mod:`torsion.moments`, :mod:`torsion.bergman`);
* exact evaluation through a conformal map of the disk
  (:mod:`torsion.conformal`), with the circle-recursion machinery for
  reciprocal-polynomial maps in :mod:`torsion.opuc`;
* variational (Rayleigh quotient) lower bounds from piecewise-polynomial
  trial functions (:mod:`torsion.lowerbound`).

Classical series and closed forms live in :mod:`torsion.reference`, a
cross-method check suite in :mod:`torsion.verify`, and the command line in
:mod:`torsion.cli` (installed as ``torsion``).
"""

from .bergman import (
    bergman_projection,
    convergence_probe,
    orthonormalize,
    rho1_closed,
    rho2_closed,
    rho_sequence,
    rho_upper,
    rho_via_determinants,
)
from .conformal import (
    dented_disk_family,
    equilateral_triangle_exact,
    herglotz_series,
    map_series_for,
    moment_table_from_map,
    neumann_oval_family,
    rho_conformal,
    rho_conformal_region,
)
from .errors import (
    DegenerateRegionError,
    DegenerateTrialError,
    InconsistencyError,
    InvalidCoefficientError,
    InvalidMapError,
    NormalizationError,
    NotOrthogonalPolynomialError,
    ParameterDomainError,
    PrecisionExhaustedError,
    PreconditionError,
    RegionSpecError,
    TorsionError,
    UnsupportedVariantError,
)
from .estimates import RigidityEstimate
from .lowerbound import house_lower, house_trials, rayleigh_lower
from .moments import MomentTable, complex_moment, moment_table
from .opuc import (
    herglotz_from_reciprocal_poly,
    reciprocal_poly_measure,
    second_kind,
    szego_forward,
    szego_inverse,
)
from .reference import (
    disk_rho,
    isosceles_right_triangle_rho_series,
    rectangle_rho_bracket,
    rectangle_rho_series,
)
from .regions import (
    PolygonRegion,
    RegionSpec,
    parse_region_spec,
    realize_polygon,
)
from .scalars import ComplexRational

__version__ = "0.1.0"

__all__ = [
    "ComplexRational",
    "DegenerateRegionError",
    "DegenerateTrialError",
    "InconsistencyError",
    "InvalidCoefficientError",
    "InvalidMapError",
    "MomentTable",
    "NormalizationError",
    "NotOrthogonalPolynomialError",
    "ParameterDomainError",
    "PolygonRegion",
    "PrecisionExhaustedError",
    "PreconditionError",
    "RegionSpec",
    "RegionSpecError",
    "RigidityEstimate",
    "TorsionError",
    "UnsupportedVariantError",
    "bergman_projection",
    "complex_moment",
    "convergence_probe",
    "dented_disk_family",
    "disk_rho",
    "equilateral_triangle_exact",
    "herglotz_from_reciprocal_poly",
    "herglotz_series",
    "house_lower",
    "house_trials",
    "isosceles_right_triangle_rho_series",
    "map_series_for",
    "moment_table",
    "moment_table_from_map",
    "neumann_oval_family",
    "orthonormalize",
    "parse_region_spec",
    "rayleigh_lower",
    "realize_polygon",
    "reciprocal_poly_measure",
    "rectangle_rho_bracket",
    "rectangle_rho_series",
    "rho1_closed",
    "rho2_closed",
    "rho_conformal",
    "rho_conformal_region",
    "rho_sequence",
    "rho_upper",
    "rho_via_determinants",
    "second_kind",
    "szego_forward",
    "szego_inverse",
]
