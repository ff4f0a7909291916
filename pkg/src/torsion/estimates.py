"""Result container shared by all rigidity computations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, nstr

from .scalars import to_mpf

#: How a value relates to the true torsional rigidity of the region.
BOUND_KINDS = ("upper", "lower", "exact")


def _as_mpf(value):
    """Like to_mpf, but never re-rounds a value that is already an mpf.

    Serialization must not depend on the ambient working precision.
    """
    if isinstance(value, mp.mpf):
        return value
    with mp.workprec(max(mp.prec, 64)):
        return to_mpf(value)


@dataclass
class RigidityEstimate:
    """One computed rigidity value together with its pedigree.

    ``value`` is always set (mpf or float).  ``value_exact`` is a Fraction
    cofactor when the computation ran in exact arithmetic — for polygon moment
    bounds it *is* the value; for closed forms with a transcendental factor
    (pi, sqrt(3)) it is the rational cofactor and ``value`` carries the
    product.  ``tail`` bounds the truncation error of series-based methods
    (0 for finite computations).
    """

    value: object
    bound: str
    method: str
    order: int | None = None
    precision: int | None = None
    value_exact: Fraction | None = None
    tail: object = 0
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound not in BOUND_KINDS:
            raise ValueError(f"bound must be one of {BOUND_KINDS}")

    def interval(self):
        """(low, high) enclosure implied by ``bound`` and ``tail``."""
        v = to_mpf(self.value)
        t = to_mpf(self.tail)
        if self.bound == "upper":
            return (v - t if t else mp.mpf("-inf"), v + t)
        if self.bound == "lower":
            return (v - t, v + t if t else mp.mpf("+inf"))
        return (v - t, v + t)

    def to_json_dict(self) -> dict:
        d = {
            "value": nstr(_as_mpf(self.value), 17),
            "bound": self.bound,
            "method": self.method,
        }
        if self.order is not None:
            d["order"] = self.order
        if self.precision is not None:
            d["precision"] = self.precision
        if self.value_exact is not None:
            d["value_exact"] = str(self.value_exact)
        d["tail"] = nstr(_as_mpf(self.tail), 8) if self.tail else "0"
        if self.flags:
            d["flags"] = {k: (str(v) if not isinstance(v, (bool, int)) else v)
                          for k, v in self.flags.items()}
        return d
