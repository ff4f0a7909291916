"""Command-line front end.

Three subcommands:

``estimate``
    One region, one or more methods, a table (CSV) or report (JSON) of
    rigidity estimates on stdout or ``--out``.

``sweep``
    A one-parameter family evaluated over an inclusive rational grid,
    emitted in grid order as versioned CSV (or its JSON mirror).  A failing
    grid point is recorded as an error row and the sweep continues; the
    process exit code is the first failure's code.

``verify``
    The built-in cross-method check suite (see :mod:`torsion.verify`).

Exit codes: 0 success, 2 malformed region/usage, 3 precision exhausted,
4 parameters outside a family's admissible domain, 1 anything else.  Output
is deterministic: identical invocations at fixed precision produce
byte-identical bytes, and a sweep row equals the single ``estimate`` call
with the same flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from fractions import Fraction

from mpmath import mp

from . import bergman, conformal, lowerbound, reference, verify
from .errors import (
    DegenerateRegionError,
    DegenerateTrialError,
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
from .regions import RegionSpec, parse_region_spec
from .scalars import DEFAULT_PRECISION, as_fraction, to_mpf
from .verify import GROUP_ORDER, LONG_GROUP_ORDER

SWEEP_SCHEMA = "torsion-sweep-1"
ESTIMATE_SCHEMA = "torsion-estimate-1"

DEFAULT_DEGREE = 10
DEFAULT_TRUNCATION = 200

#: CSV column order; the JSON mirror uses the same keys per row.
CSV_COLUMNS = ("param", "method", "degree", "value", "bound_direction",
               "tail", "precision")

METHODS = ("moment", "conformal", "lower", "series")
LOWER_PRESETS = ("best", "u1", "u2", "u3")

_SPEC_ERRORS = (RegionSpecError, UnsupportedVariantError)
_PARAMETER_ERRORS = (
    ParameterDomainError,
    DegenerateRegionError,
    InvalidMapError,
    DegenerateTrialError,
    InvalidCoefficientError,
    NormalizationError,
    NotOrthogonalPolynomialError,
    PreconditionError,
)


class UsageError(Exception):
    """Bad command-line input that argparse cannot catch itself."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the documented process exit code."""
    if isinstance(exc, (UsageError, *_SPEC_ERRORS)):
        return 2
    if isinstance(exc, PrecisionExhaustedError):
        return 3
    if isinstance(exc, _PARAMETER_ERRORS):
        return 4
    return 1


# ---------------------------------------------------------------------------
# Argument plumbing.
# ---------------------------------------------------------------------------

def _parse_methods(text: str):
    """``"moment:12,series"`` -> ``[("moment", "12"), ("series", None)]``."""
    methods = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        base, _, order = token.partition(":")
        if base not in METHODS:
            raise UsageError(f"unknown method {base!r}; choose from "
                             + ", ".join(METHODS))
        methods.append((base, order or None))
    if not methods:
        raise UsageError("--method needs at least one method")
    return methods


def _order_int(base: str, order: str | None, default: int) -> int:
    if order is None:
        return default
    try:
        value = int(order)
    except ValueError:
        raise UsageError(
            f"order in {base}:{order} must be an integer") from None
    if value < 0:
        raise UsageError(f"order in {base}:{order} must be nonnegative")
    return value


def _parse_grid(text: str):
    """Inclusive rational grid ``START:STOP:COUNT``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--grid must be START:STOP:COUNT")
    try:
        start = as_fraction(parts[0])
        stop = as_fraction(parts[1])
        count = int(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    if count < 1:
        raise UsageError("grid COUNT must be at least 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + step * i for i in range(count)]


def _region_from_args(args) -> RegionSpec:
    if args.spec and args.family:
        raise UsageError("give either --spec or --family, not both")
    if args.spec:
        if args.spec == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.spec, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise RegionSpecError(
                    f"cannot read region spec {args.spec}: {exc}") from exc
        return parse_region_spec(text)
    if not args.family:
        raise UsageError("a region is required: --spec FILE or --family NAME")
    data = {"family": args.family}
    for key in ("a", "b"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return parse_region_spec(data)


def _sweep_spec(family: str, a: Fraction, fixed_b) -> RegionSpec:
    data = {"family": family, "a": a}
    if family == "rectangle":
        # Default to the unit-area rectangle a x 1/a.
        data["b"] = fixed_b if fixed_b is not None else 1 / a
    elif fixed_b is not None:
        data["b"] = fixed_b
    return parse_region_spec(data)


@contextmanager
def _open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


# ---------------------------------------------------------------------------
# Method dispatch.
# ---------------------------------------------------------------------------

def _series_estimate(spec: RegionSpec, order: str | None,
                     precision: int | None) -> RigidityEstimate:
    prec = precision or DEFAULT_PRECISION
    if spec.family == "rectangle":
        cap = _order_int("series", order, 85)
        value, tail = reference.rectangle_rho_series(
            spec.get("a"), spec.get("b"), J=cap, K=cap, precision=prec)
        return RigidityEstimate(value=value, bound="lower", method="series",
                                order=cap, precision=prec, tail=tail)
    if spec.family == "unit_disk":
        return RigidityEstimate(
            value=reference.disk_rho(1, precision=prec), bound="exact",
            method="closed", precision=prec,
            value_exact=Fraction(1, 2),
            flags={"transcendental_factor": "pi"})
    if spec.family == "equilateral_triangle":
        with mp.workprec(prec):
            value = 9 * mp.sqrt(3) / 80
        return RigidityEstimate(
            value=value, bound="exact", method="closed", precision=prec,
            value_exact=Fraction(9, 80),
            flags={"transcendental_factor": "sqrt(3)"})
    if spec.family == "dented_disk":
        fam = conformal.dented_disk_family(spec.get("a"), spec.get("b"),
                                           precision=precision)
        return fam.closed_estimate()
    if spec.family == "neumann_oval":
        fam = conformal.neumann_oval_family(spec.get("a"),
                                            precision=precision)
        return fam.closed_estimate()
    raise UnsupportedVariantError(
        f"no series/closed reference for {spec.family!r} regions")


def _run_method(spec: RegionSpec, base: str, order: str | None,
                args) -> RigidityEstimate:
    precision = args.precision
    if base == "moment":
        degree = _order_int(base, order, args.degree)
        return bergman.rho_upper(spec, degree=degree, precision=precision,
                                 truncation=args.truncation)
    if base == "conformal":
        truncation = _order_int(base, order, args.truncation)
        return conformal.rho_conformal_region(spec, truncation=truncation,
                                              precision=precision)
    if base == "lower":
        preset = order or "best"
        if preset not in LOWER_PRESETS:
            raise UsageError(f"unknown lower-bound preset {preset!r}; "
                             "choose from " + ", ".join(LOWER_PRESETS))
        if spec.family != "house":
            raise UnsupportedVariantError(
                "built-in lower-bound trials exist only for the house family")
        return lowerbound.house_lower(
            spec.get("a"), precision=precision,
            trial=None if preset == "best" else preset)
    return _series_estimate(spec, order, precision)


# ---------------------------------------------------------------------------
# Row formatting.
# ---------------------------------------------------------------------------

def _row(param: str, base: str, est: RigidityEstimate,
         precision: int | None) -> dict:
    with mp.workprec(max(precision or DEFAULT_PRECISION, est.precision or 0)):
        value = mp.nstr(to_mpf(est.value), 17)
        tail = mp.nstr(to_mpf(est.tail), 17) if est.tail else "0"
    return {
        "param": param,
        "method": base,
        "degree": "" if est.order is None else str(est.order),
        "value": value,
        "bound_direction": est.bound,
        "tail": tail,
        "precision": "" if est.precision is None else str(est.precision),
    }


def _error_row(param: str, base: str, exc: BaseException) -> dict:
    return {
        "param": param,
        "method": base,
        "degree": "",
        "value": "",
        "bound_direction": f"error:{exit_code_for(exc)}",
        "tail": "",
        "precision": "",
    }


def _free_parameter(spec: RegionSpec) -> str:
    for key, value in spec.params:
        if key == "a":
            return str(value)
    return ""


def _emit_csv(rows, out) -> None:
    out.write(f"# schema: {SWEEP_SCHEMA}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([row[column] for column in CSV_COLUMNS])


def _emit_json(payload, out) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_estimate(args) -> int:
    methods = _parse_methods(args.method)
    spec = _region_from_args(args)
    results = [(base, _run_method(spec, base, order, args))
               for base, order in methods]
    param = _free_parameter(spec)
    with _open_out(args.out) as out:
        if args.format == "json":
            payload = {
                "schema": ESTIMATE_SCHEMA,
                "region": spec.to_json_dict(),
                "estimates": [dict(est.to_json_dict(), requested=base)
                              for base, est in results],
            }
            _emit_json(payload, out)
        else:
            rows = [_row(param, base, est, args.precision)
                    for base, est in results]
            _emit_csv(rows, out)
    return 0


def _cmd_sweep(args) -> int:
    methods = _parse_methods(args.method)
    grid = _parse_grid(args.grid)
    if args.family in ("unit_disk", "equilateral_triangle", "polygon"):
        raise UsageError(
            f"family {args.family!r} has no free parameter to sweep")
    rows = []
    first_error = 0

    def record_failure(param, base, exc):
        nonlocal first_error
        code = exit_code_for(exc)
        if first_error == 0:
            first_error = code
        print(f"torsion: sweep a={param} method {base}: {exc}",
              file=sys.stderr)
        rows.append(_error_row(param, base, exc))

    for a in grid:
        param = str(a)
        try:
            spec = _sweep_spec(args.family, a, args.b)
        except TorsionError as exc:
            for base, _ in methods:
                record_failure(param, base, exc)
            continue
        for base, order in methods:
            try:
                est = _run_method(spec, base, order, args)
            except TorsionError as exc:
                record_failure(param, base, exc)
            else:
                rows.append(_row(param, base, est, args.precision))

    with _open_out(args.out) as out:
        if args.format == "json":
            _emit_json({"schema": SWEEP_SCHEMA, "family": args.family,
                        "rows": rows}, out)
        else:
            _emit_csv(rows, out)
    return first_error


def _cmd_verify(args) -> int:
    return verify.run(only=args.only, full=args.full,
                      precision=args.precision)


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------

def _add_region_flags(parser) -> None:
    parser.add_argument("--spec", metavar="FILE",
                        help="JSON region spec file ('-' for stdin)")
    parser.add_argument("--family", metavar="NAME",
                        help="built-in family name (rectangle, house, "
                             "right_triangle, equilateral_triangle, "
                             "unit_disk, dented_disk, neumann_oval); "
                             "list-valued families go through --spec")
    parser.add_argument("--a", metavar="VALUE",
                        help="family parameter a (rational string, e.g. 1/2)")
    parser.add_argument("--b", metavar="VALUE",
                        help="family parameter b")


def _add_compute_flags(parser) -> None:
    parser.add_argument("--method", default="moment", metavar="LIST",
                        help="comma list of METHOD[:ORDER]; methods: moment "
                             "(ORDER = degree), conformal (ORDER = "
                             "truncation), lower (ORDER = best|u1|u2|u3), "
                             "series (ORDER = summation cap) "
                             "[default: moment]")
    parser.add_argument("--degree", type=int, default=DEFAULT_DEGREE,
                        help="moment-method degree N [default: %(default)s]")
    parser.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION,
                        help="conformal series truncation "
                             "[default: %(default)s]")
    parser.add_argument("--precision", type=int, default=None,
                        help="working precision in bits for numeric routes "
                             f"[default: {DEFAULT_PRECISION}]; when omitted, "
                             "exact regions keep the moment method in exact "
                             "rational arithmetic")


def _add_output_flags(parser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format [default: %(default)s]")
    parser.add_argument("--out", metavar="FILE",
                        help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsion",
        description="Torsional rigidity of planar regions: moment-method "
                    "upper bounds, conformal-map evaluation, variational "
                    "lower bounds, and series references.")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser(
        "estimate", help="estimate one region's rigidity",
        description="Run one or more methods on a single region and emit "
                    "the estimates.")
    _add_region_flags(est)
    _add_compute_flags(est)
    _add_output_flags(est)

    sweep = sub.add_parser(
        "sweep", help="sweep a one-parameter family over a grid",
        description="Evaluate methods over an inclusive rational grid of "
                    "the family parameter a; rows are emitted in grid "
                    "order.  For rectangles, --b fixes the second side "
                    "(default: 1/a, the unit-area family).")
    sweep.add_argument("--family", required=True, metavar="NAME",
                       help="swept family (rectangle, house, right_triangle, "
                            "dented_disk, neumann_oval)")
    sweep.add_argument("--grid", required=True, metavar="START:STOP:COUNT",
                       help="inclusive rational grid for the parameter a")
    sweep.add_argument("--b", metavar="VALUE",
                       help="fixed second parameter where the family takes "
                            "one")
    _add_compute_flags(sweep)
    _add_output_flags(sweep)

    ver = sub.add_parser(
        "verify", help="run the built-in check suite",
        description="Cross-method verification: prints one PASS/FAIL line "
                    "per check and exits nonzero on any failure.")
    ver.add_argument("--only", action="append", metavar="GROUP",
                     choices=GROUP_ORDER + LONG_GROUP_ORDER,
                     help="restrict to a check group (repeatable); groups: "
                          + ", ".join(GROUP_ORDER + LONG_GROUP_ORDER))
    ver.add_argument("--full", action="store_true",
                     help="include the long sweep groups ("
                          + ", ".join(LONG_GROUP_ORDER) + ")")
    ver.add_argument("--precision", type=int, default=None,
                     help=f"working precision in bits "
                          f"[default: {DEFAULT_PRECISION}]")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"estimate": _cmd_estimate, "sweep": _cmd_sweep,
                "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except (UsageError, TorsionError) as exc:
        print(f"torsion: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"torsion: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
