"""Disk-route rigidity: Fourier data of a conformal map, and closed-form families.

Everything here lives on the unit disk.  A region enters as the Taylor series
of a conformal bijection ``psi: D -> Omega``; the boundary data
``|psi(e^{i theta})|^2`` has Fourier coefficients ``h_j``, whose analytic
completion ``F(z) = h_0 + 2 sum_{j>=1} h_j z^j`` packages them into a single
holomorphic function, and torsional rigidity drops out as a difference of two
disk norms::

    rho(Omega) = ||psi psi'||^2 - ||F'||^2 .

Composing with the inverse map phi gives the stress function
``nu = Re F(phi) - |z|^2/2`` and the projection ``Q = F'(phi) phi'``.

Two families ship with closed forms for every ingredient: the dented disk
``psi(z) = z + a/(z - b)`` and Neumann's oval.  The equilateral triangle gets
its exact polynomial projection ``Q(z) = z^2``.  Moment tables for map-based
regions are also built here, by integrating ``psi^i conj(psi)^j |psi'|^2``
over the disk — the polygon edge formulas never see these regions.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp

from .errors import (
    InconsistencyError,
    InvalidMapError,
    ParameterDomainError,
    PreconditionError,
    UnsupportedVariantError,
)
from .estimates import RigidityEstimate
from .moments import MomentTable, complex_moment
from .poly import ComplexPolynomial, RationalFunction
from .regions import RegionSpec, realize_polygon
from .scalars import (
    DEFAULT_PRECISION,
    ComplexRational,
    abs2,
    as_fraction,
    is_exact,
    to_mpc,
    to_mpf,
)

#: Default truncation order for map Taylor series.
DEFAULT_TRUNCATION = 200
MAX_TRUNCATION = 12800

#: Trailing coefficients used for the geometric decay fit.
_DECAY_WINDOW = 20

#: Sample count for the boundary-injectivity grid of the dented disk.
_INJECTIVITY_GRID = 4096


# ---------------------------------------------------------------------------
# Taylor series on the disk
# ---------------------------------------------------------------------------

class TaylorSeries:
    """Truncated expansion ``sum_k a_k z^k`` convergent on ``|z| < radius``.

    ``radius`` is the declared radius of validity (>= 1 for a map of the
    closed disk).  ``exact_polynomial`` marks series whose tail is known to be
    identically zero (e.g. psi(z) = z), so truncation bounds vanish instead of
    being estimated.
    """

    __slots__ = ("coefficients", "radius", "exact_polynomial")

    def __init__(self, coefficients, radius=1, exact_polynomial=False,
                 check_decay=True):
        coeffs = tuple(to_mpc(c) for c in coefficients)
        if not coeffs:
            raise PreconditionError("a Taylor series needs coefficients")
        self.coefficients = coeffs
        self.radius = to_mpf(radius) if radius != mp.inf else mp.inf
        self.exact_polynomial = bool(exact_polynomial)
        if check_decay and not self.exact_polynomial and self.radius > 1 \
                and len(coeffs) > _DECAY_WINDOW:
            _, ratio = self.decay()
            if ratio and mp.isfinite(self.radius) \
                    and ratio > (1 + 1 / self.radius) / 2:
                warnings.warn(
                    "coefficient decay is weaker than the declared radius "
                    f"suggests (measured ratio {mp.nstr(ratio, 6)}, "
                    f"radius {mp.nstr(self.radius, 6)})")

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __repr__(self):
        return (f"TaylorSeries(order={self.truncation}, "
                f"radius={mp.nstr(to_mpf(self.radius), 6)})")

    def coefficient(self, k: int):
        return self.coefficients[k] if k < len(self.coefficients) else mp.mpc(0)

    def derivative(self) -> "TaylorSeries":
        c = self.coefficients
        out = [k * c[k] for k in range(1, len(c))] or [mp.mpc(0)]
        return TaylorSeries(out, self.radius, self.exact_polynomial,
                            check_decay=False)

    def multiply(self, other: "TaylorSeries", truncation=None) -> "TaylorSeries":
        """Cauchy product, truncated at ``truncation`` (default: full)."""
        n1, n2 = len(self.coefficients), len(other.coefficients)
        full = n1 + n2 - 2
        cap = full if truncation is None else max(0, min(truncation, full))
        out = [mp.mpc(0)] * (cap + 1)
        for i, a in enumerate(self.coefficients):
            if a == 0 or i > cap:
                continue
            for j in range(min(cap - i, n2 - 1) + 1):
                out[i + j] += a * other.coefficients[j]
        exact = self.exact_polynomial and other.exact_polynomial and cap == full
        return TaylorSeries(out, min(self.radius, other.radius), exact,
                            check_decay=False)

    def evaluate(self, z):
        z = to_mpc(z)
        acc = mp.mpc(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def decay(self):
        """Geometric envelope fit ``|a_k| <= C r^k`` from trailing coefficients.

        Least squares on ``log |a_k|`` over the nonzero entries of the last
        window, with C bumped so the envelope covers every windowed point.
        Returns ``(0, 0)`` when the tail is identically zero.
        """
        if self.exact_polynomial:
            return (mp.mpf(0), mp.mpf(0))
        n = len(self.coefficients)
        window = _DECAY_WINDOW
        pts = []
        while len(pts) < 2 and window <= 4 * n:
            lo = max(0, n - window)
            pts = [(k, abs(self.coefficients[k])) for k in range(lo, n)
                   if self.coefficients[k] != 0]
            window *= 2
        if not pts:
            return (mp.mpf(0), mp.mpf(0))
        if len(pts) == 1:
            k, mag = pts[0]
            r = 1 / self.radius if self.radius > 1 else mp.mpf(1)
            return (mag / r ** k if r > 0 else mag, r)
        ks = [mp.mpf(k) for k, _ in pts]
        ys = [mp.log(mag) for _, mag in pts]
        kbar = mp.fsum(ks) / len(ks)
        ybar = mp.fsum(ys) / len(ys)
        var = mp.fsum((k - kbar) ** 2 for k in ks)
        slope = mp.fsum((k - kbar) * (y - ybar) for k, y in zip(ks, ys)) / var
        r = mp.exp(slope)
        scale = mp.exp(ybar - slope * kbar)
        bump = max(mag / (scale * r ** k) for k, mag in pts)
        return (scale * bump, r)


def disk_l2_normsq(series: TaylorSeries):
    """``int_D |sum b_k z^k|^2 dA = pi sum |b_k|^2/(k+1)``, truncated."""
    return mp.pi * mp.fsum(
        abs2(c) / (k + 1) for k, c in enumerate(series.coefficients))


def disk_l2_norm_tail(series: TaylorSeries):
    """Bound on the norm contribution of the dropped coefficients."""
    big, r = series.decay()
    if big == 0:
        return mp.mpf(0)
    if r >= 1:
        return mp.inf
    m = series.truncation
    return mp.pi * big ** 2 * r ** (2 * (m + 1)) / ((m + 2) * (1 - r ** 2))


# ---------------------------------------------------------------------------
# Boundary Fourier data and the Herglotz function F
# ---------------------------------------------------------------------------

def fourier_h(psi: TaylorSeries, j: int):
    """Fourier coefficient ``h_j`` of ``|psi|^2/2`` on the unit circle.

    With ``psi = sum a_n z^n`` this is ``(1/2) sum_n a_{n+j} conj(a_n)``,
    truncated at the series order.
    """
    if j < 0:
        raise PreconditionError("fourier index must be nonnegative")
    c = psi.coefficients
    if j >= len(c):
        return mp.mpc(0)
    if j == 0:
        return mp.mpf("0.5") * mp.fsum(abs2(a) for a in c)
    return mp.mpf("0.5") * mp.fsum(
        c[n + j] * c[n].conjugate() for n in range(len(c) - j))


class HerglotzSeries:
    """``F(z) = h_0 + 2 sum_{j>=1} h_j z^j`` with ``Re F >= 0`` on the disk.

    ``h_error`` bounds the truncation error of each stored h_j and
    ``envelope = (B, r)`` bounds the dropped coefficients, ``|h_j| <= B r^j``
    for ``j`` beyond the stored order; both feed the reported tail of
    ``||F'||^2``.
    """

    __slots__ = ("h", "h_error", "envelope", "positivity_ok")

    def __init__(self, h, h_error=0, envelope=(0, 0), check_positivity=True):
        head = to_mpc(h[0])
        if abs(head.imag) > (abs(head.real) + 1) * mp.mpf(2) ** (20 - mp.prec):
            raise InvalidMapError("h_0 must be real: it is the mean of |psi|^2")
        h0 = head.real
        if h0 <= 0:
            raise InvalidMapError(
                "mean of |psi|^2 on the circle must be positive")
        self.h = (h0,) + tuple(to_mpc(v) for v in h[1:])
        self.h_error = to_mpf(h_error)
        self.envelope = (to_mpf(envelope[0]), to_mpf(envelope[1]))
        self.positivity_ok = True
        if check_positivity:
            self._check_positivity()

    @property
    def truncation(self) -> int:
        return len(self.h) - 1

    def f_coefficients(self):
        """Taylor coefficients of F: ``(h_0, 2 h_1, 2 h_2, ...)``."""
        return (self.h[0],) + tuple(2 * v for v in self.h[1:])

    def f_series(self) -> TaylorSeries:
        return TaylorSeries(self.f_coefficients(), radius=1, check_decay=False)

    def evaluate(self, z):
        z = to_mpc(z)
        acc = mp.mpc(0)
        for c in reversed(self.f_coefficients()):
            acc = acc * z + c
        return acc

    def evaluate_derivative(self, z):
        z = to_mpc(z)
        acc = mp.mpc(0)
        coeffs = self.f_coefficients()
        for k in range(len(coeffs) - 1, 0, -1):
            acc = acc * z + k * coeffs[k]
        return acc

    def _check_positivity(self):
        tol = 64 * self.h_error + self.h[0] * mp.mpf(2) ** (-(mp.prec // 2))
        worst = mp.mpf(0)
        for radius in ("0.35", "0.65", "0.9"):
            r = mp.mpf(radius)
            for k in range(16):
                z = r * mp.expj(2 * mp.pi * k / 16)
                worst = min(worst, self.evaluate(z).real)
        if worst < -tol:
            self.positivity_ok = False
            warnings.warn(
                "Re F dips below zero on the sample grid "
                f"({mp.nstr(worst, 6)}); boundary data is not of positive type")

    def fprime_normsq(self):
        """``||F'||^2 = 4 pi sum_{k>=1} k |h_k|^2`` with its tail bound."""
        value = 4 * mp.pi * mp.fsum(
            k * abs2(self.h[k]) for k in range(1, len(self.h)))
        big, r = self.envelope
        m = self.truncation
        if big == 0:
            drop = mp.mpf(0)
        elif r >= 1 or not mp.isfinite(big):
            drop = mp.inf
        else:
            x = r ** 2
            drop = 4 * mp.pi * big ** 2 * x ** (m + 1) \
                * ((m + 1) * (1 - x) + x) / (1 - x) ** 2
        err = self.h_error
        pert = mp.mpf(0)
        if err > 0:
            lin = mp.fsum(k * abs(self.h[k]) for k in range(1, len(self.h)))
            pert = 8 * mp.pi * err * lin \
                + 4 * mp.pi * err ** 2 * (m * (m + 1) / 2)
        return (value, drop + pert)


def herglotz_series(psi: TaylorSeries, check_positivity=True) -> HerglotzSeries:
    """Assemble F from the map series, with truncation-error bookkeeping."""
    c = psi.coefficients
    m = psi.truncation
    h = [fourier_h(psi, 0)]
    for j in range(1, m + 1):
        h.append(mp.mpf("0.5") * mp.fsum(
            c[n + j] * c[n].conjugate() for n in range(m - j + 1)))
    big, r = psi.decay()
    if big == 0:
        err, env = mp.mpf(0), (mp.mpf(0), mp.mpf(0))
    elif r < 1:
        # each stored h_j misses sum_{n > m-j} a_{n+j} conj(a_n)
        err = big ** 2 * r ** (m + 2) / (2 * (1 - r ** 2))
        env = (big ** 2 / (2 * (1 - r ** 2)), r)
    else:
        err, env = mp.inf, (mp.inf, r)
    return HerglotzSeries(h, err, env, check_positivity=check_positivity)


# ---------------------------------------------------------------------------
# Rigidity from the disk integrals
# ---------------------------------------------------------------------------

def rho_conformal(psi: TaylorSeries, precision: int | None = None
                  ) -> RigidityEstimate:
    """``rho = ||psi psi'||^2 - ||F'||^2`` for a univalent map series.

    Univalence is the caller's responsibility (the built-in families carry
    their own validity checks).  The result is exact modulo truncation, with
    the combined series tail reported on the estimate.
    """
    prec = precision or DEFAULT_PRECISION
    with mp.workprec(prec):
        # the z^m coefficient of psi psi' needs a_{m+1}, which the truncated
        # series lacks, so cap the product one order lower
        cap = None if psi.exact_polynomial else max(0, psi.truncation - 1)
        pp = psi.multiply(psi.derivative(), truncation=cap)
        map_norm = disk_l2_normsq(pp)
        map_tail = disk_l2_norm_tail(pp)
        herglotz = herglotz_series(psi)
        f_norm, f_tail = herglotz.fprime_normsq()
        rho = map_norm - f_norm
        tail = map_tail + f_tail
        if mp.isfinite(tail) and rho < -tail:
            raise InconsistencyError(
                "norm difference is negative beyond its truncation tail "
                f"({mp.nstr(rho, 8)} with tail {mp.nstr(tail, 8)}); "
                "the map series is not a conformal bijection of the disk")
        return RigidityEstimate(
            value=rho, bound="exact", method="conformal",
            order=psi.truncation, precision=prec, tail=tail)


def stress_and_projection(f, phi, phi_prime):
    """Evaluation closures ``Q = F'(phi) phi'`` and ``nu = Re F(phi) - |z|^2/2``.

    ``f`` may be a :class:`HerglotzSeries` or a :class:`RationalFunction`;
    ``phi`` and ``phi_prime`` evaluate the inverse map and its derivative on
    the region.  The stress function vanishes on the boundary wall — use
    :func:`boundary_stress_residual` as the self-check.
    """
    if isinstance(f, (HerglotzSeries, RationalFunction)):
        f_eval, fp_eval = f.evaluate, f.evaluate_derivative
    else:
        raise PreconditionError(
            "expected a HerglotzSeries or RationalFunction for F")

    def projection(z):
        return to_mpc(fp_eval(phi(z))) * to_mpc(phi_prime(z))

    def stress(z):
        z = to_mpc(z)
        value = to_mpc(f_eval(phi(z)))
        return value.real - (z.real ** 2 + z.imag ** 2) / 2

    return projection, stress


def boundary_stress_residual(stress, psi_point, samples: int = 64):
    """``max |nu|`` over ``psi(e^{i theta})`` samples of the boundary."""
    worst = mp.mpf(0)
    for k in range(samples):
        w = mp.expj(2 * mp.pi * k / samples)
        worst = max(worst, abs(stress(psi_point(w))))
    return worst


# ---------------------------------------------------------------------------
# Dented disk: psi(z) = z + a/(z - b)
# ---------------------------------------------------------------------------

class DentedDiskValidity(NamedTuple):
    """Which of the three admissibility conditions hold for (a, b)."""

    #: a != 0 and |b| > 1 (pole off the closed disk, genuine dent)
    nondegenerate: bool
    #: |b - sqrt(a)| > 1 and |b + sqrt(a)| > 1 (psi' zero-free on the disk)
    derivative_nonvanishing: bool
    #: |b + a/(e^{it} - b)| > 1 for all t (boundary circle maps injectively)
    boundary_injective: bool

    @property
    def ok(self) -> bool:
        return all(self)

    def failed(self):
        return tuple(name for name, good in zip(self._fields, self) if not good)


class DentedDisk:
    """The map ``psi(z) = z + a/(z - b)``: a disk dented near ``b/|b|``.

    All Fourier data is closed-form:

        h_0 = (1 - 2 a/b^2 + a^2/(b^2-1)) / 2
        h_1 = (-a/b - a/b^3 + a^2/(b (b^2-1))) / 2
        h_j = H / b^j             (j >= 2),   2H = a^2/(b^2-1) - a/b^2

    so ``F = h_0 + 2 h_1 z + 2H z^2/(b(b-z))`` is rational, and the rigidity
    reduces to one geometric series, summed here to working precision.  The
    inverse map is the root of a quadratic, picked inside the disk.
    """

    __slots__ = ("a", "b", "a_exact", "b_exact", "precision", "validity",
                 "h0", "h1", "H", "rho_closed", "rho_closed_tail", "F_closed",
                 "_psi")

    def __init__(self, a, b, precision: int | None = None,
                 require_valid: bool = True):
        self.precision = precision or DEFAULT_PRECISION
        self.a_exact = as_fraction(a) if is_exact(a) else None
        self.b_exact = as_fraction(b) if is_exact(b) else None
        with mp.workprec(self.precision):
            self.a = to_mpf(self.a_exact if self.a_exact is not None else a)
            self.b = to_mpf(self.b_exact if self.b_exact is not None else b)
            self.validity = self._check_validity()
            if require_valid and not self.validity.ok:
                raise ParameterDomainError(
                    f"dented disk (a={a}, b={b}) fails: "
                    + ", ".join(self.validity.failed()))
            self._psi = None
            if abs(self.b) > 1:
                self._closed_forms()
            else:
                self.h0 = self.h1 = self.H = None
                self.rho_closed = self.rho_closed_tail = self.F_closed = None

    # -- admissibility -------------------------------------------------------

    def _check_validity(self) -> DentedDiskValidity:
        if self.a_exact is not None and self.b_exact is not None:
            aq, bq = self.a_exact, self.b_exact
            cond1 = aq != 0 and abs(bq) > 1
            if aq > 0:
                cond2 = (abs(bq) - 1) ** 2 > aq or aq > (abs(bq) + 1) ** 2
            else:
                cond2 = bq * bq + abs(aq) > 1
        else:
            av, bv = self.a, self.b
            cond1 = av != 0 and abs(bv) > 1
            if av > 0:
                cond2 = (abs(bv) - 1) ** 2 > av or av > (abs(bv) + 1) ** 2
            else:
                cond2 = bv * bv + abs(av) > 1
        cond3 = cond1 and self._boundary_injective()
        return DentedDiskValidity(bool(cond1), bool(cond2), bool(cond3))

    def _boundary_injective(self) -> bool:
        """Grid check of |b + a/(e^{it} - b)| > 1 with a Lipschitz margin.

        The left side moves at most |a|/(|b|-1)^2 per unit of t, so a grid
        minimum clearing 1 by half a step times that rate decides the strict
        inequality on the whole circle.
        """
        av, bv = self.a, self.b
        if abs(bv) <= 1:
            return False
        lipschitz = abs(av) / (abs(bv) - 1) ** 2
        margin = lipschitz * mp.pi / _INJECTIVITY_GRID
        lowest = mp.inf
        for k in range(_INJECTIVITY_GRID):
            w = mp.expj(2 * mp.pi * k / _INJECTIVITY_GRID)
            lowest = min(lowest, abs(bv + av / (w - bv)))
            if lowest - margin <= 1:
                return False
        return lowest - margin > 1

    # -- closed forms ----------------------------------------------------------

    def _closed_forms(self):
        a, b = self.a, self.b
        self.h0 = (1 - 2 * a / b ** 2 + a ** 2 / (b ** 2 - 1)) / 2
        self.h1 = (-a / b - a / b ** 3 + a ** 2 / (b * (b ** 2 - 1))) / 2
        self.H = (a ** 2 / (b ** 2 - 1) - a / b ** 2) / 2
        if self.a_exact is not None and self.b_exact is not None:
            aq, bq = self.a_exact, self.b_exact
            h0q = (1 - 2 * aq / bq ** 2 + aq * aq / (bq * bq - 1)) / 2
            h1q = (-aq / bq - aq / bq ** 3 + aq * aq / (bq * (bq * bq - 1))) / 2
            hq = (aq * aq / (bq * bq - 1) - aq / bq ** 2) / 2
            num = ComplexPolynomial([h0q * bq ** 2,
                                     2 * h1q * bq ** 2 - h0q * bq,
                                     2 * hq - 2 * h1q * bq])
            den = ComplexPolynomial([bq ** 2, -bq])
        else:
            num = ComplexPolynomial([self.h0 * b ** 2,
                                     2 * self.h1 * b ** 2 - self.h0 * b,
                                     2 * self.H - 2 * self.h1 * b])
            den = ComplexPolynomial([b ** 2, -b])
        self.F_closed = RationalFunction(num, den)
        self.rho_closed, self.rho_closed_tail = self._rho_closed()

    def _rho_closed(self):
        """pi [ |c_0|^2 + |c_1|^2/2 + S - |2 h_1|^2 - |2H|^2 (2-b^{-2})/(b^2-1)^2 ]

        where ``c_0, c_1`` are the first coefficients of ``psi psi'`` and
        ``S = (1/4) sum_{j>=2} (j+1) (a^2/b^{2j+2}) ((j+2) a/b^2 - 2)^2`` is
        the geometric series carrying the rest of the map norm.
        """
        a, b = self.a, self.b
        c0 = (a / b) * (a / b ** 2 - 1)
        c1 = 1 + (a / b ** 2) * (3 * a / b ** 2 - 2)
        base = c0 ** 2 + c1 ** 2 / 2 - (2 * self.h1) ** 2 \
            - (2 * self.H) ** 2 * (2 - b ** -2) / (b ** 2 - 1) ** 2
        eps = mp.mpf(2) ** (-(mp.prec + 20))
        total = mp.mpf(0)
        term = prev = mp.mpf(0)
        j = 2
        while True:
            term = (j + 1) * (a ** 2 / b ** (2 * j + 2)) \
                * ((j + 2) * a / b ** 2 - 2) ** 2 / 4
            total += term
            scale = abs(base) + total + 1
            if term < eps * scale or j > 500_000:
                break
            prev = term
            j += 1
        if j > 500_000:
            warnings.warn("dented-disk series is converging very slowly; "
                          "the reported tail is correspondingly large")
        ratio = term / prev if prev > 0 else 1 / b ** 2
        ratio = min(max(ratio, 1 / b ** 2), mp.mpf("0.999999"))
        tail = mp.pi * term * ratio / (1 - ratio)
        return mp.pi * (base + total), tail

    def closed_estimate(self) -> RigidityEstimate:
        return RigidityEstimate(
            value=self.rho_closed, bound="exact", method="closed",
            precision=self.precision, tail=self.rho_closed_tail,
            flags={"region": f"dented_disk(a={self.a_exact or self.a}, "
                             f"b={self.b_exact or self.b})"})

    # -- map data --------------------------------------------------------------

    @property
    def psi(self) -> TaylorSeries:
        if self._psi is None:
            self._psi = self.psi_series()
        return self._psi

    def psi_series(self, truncation: int | None = None) -> TaylorSeries:
        """``psi = z + a/(z-b) = -a/b + (1 - a/b^2) z - sum_{k>=2} (a/b^{k+1}) z^k``."""
        if abs(self.b) <= 1:
            raise ParameterDomainError(
                "the pole b lies on or inside the closed disk; "
                "no Taylor expansion of the map is valid there")
        m = truncation or DEFAULT_TRUNCATION
        with mp.workprec(self.precision):
            a, b = self.a, self.b
            coeffs = [-a / b, 1 - a / b ** 2]
            coeffs += [-a / b ** (k + 1) for k in range(2, m + 1)]
            return TaylorSeries(coeffs, radius=abs(b))

    def psi_point(self, w):
        w = to_mpc(w)
        return w + self.a / (w - self.b)

    def phi(self, z):
        """Inverse map: the root of ``w^2 - (b+z) w + (a + b z)`` inside the disk."""
        z = to_mpc(z)
        a, b = self.a, self.b
        s = mp.sqrt((z - b) ** 2 - 4 * a)
        r1 = (b + z - s) / 2
        r2 = (b + z + s) / 2
        big = r1 if abs(r1) >= abs(r2) else r2
        if big == 0:
            return big
        small = (a + b * z) / big
        return small if abs(small) <= abs(big) else big

    def phi_prime(self, z):
        w = self.phi(z)
        return 1 / (1 - self.a / (w - self.b) ** 2)

    def stress_pair(self):
        """(Q, nu) evaluation closures from the closed rational F."""
        return stress_and_projection(self.F_closed, self.phi, self.phi_prime)


def dented_disk_family(a, b, precision: int | None = None,
                       require_valid: bool = True) -> DentedDisk:
    """Build the dented-disk data for parameters (a, b).

    Returns the family object carrying ``psi`` (Taylor series), ``validity``
    (the three admissibility flags), ``rho_closed`` and ``F_closed``.  With
    ``require_valid`` (the default), inadmissible parameters raise a
    parameter-domain error naming the failed conditions.
    """
    return DentedDisk(a, b, precision=precision, require_valid=require_valid)


# ---------------------------------------------------------------------------
# Neumann's oval
# ---------------------------------------------------------------------------

class NeumannOval:
    """Boundary ``(x^2+y^2)^2 = a^2 (x^2+y^2) + 4 x^2``, via ``psi`` on the disk.

    With ``R = (a + sqrt(a^2+4))/2`` (so ``R - 1/R = a``), the map is

        psi(z) = (R^4 - 1) z / (R (R^2 - z^2)),

    odd Taylor coefficients ``(R^4-1)/R^{2n+3}``, and everything downstream is
    closed-form: ``F = (R^4-1)/(2R^2) + z psi(z)/R`` and
    ``rho = pi (R^4 + R^{-4})/2 = pi (a^4/2 + 2a^2 + 1)``.

    The exact parameter range where psi is univalent is not pinned down here;
    the family is exposed for every ``a > 0``, with the agreement between the
    series route and the closed form serving as the practical guard.
    """

    __slots__ = ("a", "a_exact", "R", "precision", "rho_closed",
                 "rho_cofactor", "F_closed", "_psi")

    def __init__(self, a, precision: int | None = None):
        self.precision = precision or DEFAULT_PRECISION
        self.a_exact = as_fraction(a) if is_exact(a) else None
        with mp.workprec(self.precision):
            self.a = to_mpf(self.a_exact if self.a_exact is not None else a)
            if not self.a > 0:
                raise ParameterDomainError(
                    "the oval needs a > 0 (a = R - 1/R with R > 1)")
            self.R = (self.a + mp.sqrt(self.a ** 2 + 4)) / 2
            if self.a_exact is not None:
                aq = self.a_exact
                self.rho_cofactor = aq ** 4 / 2 + 2 * aq ** 2 + 1
            else:
                self.rho_cofactor = None
            self.rho_closed = mp.pi * (self.a ** 4 / 2 + 2 * self.a ** 2 + 1)
            r2, r4 = self.R ** 2, self.R ** 4
            self.F_closed = RationalFunction(
                ComplexPolynomial([(r4 - 1) * r2 / 2, 0, (r4 - 1) / 2]),
                ComplexPolynomial([r4, 0, -r2]))
            self._psi = None

    def closed_estimate(self) -> RigidityEstimate:
        cofactor = Fraction(self.rho_cofactor) if self.rho_cofactor else None
        return RigidityEstimate(
            value=self.rho_closed, bound="exact", method="closed",
            precision=self.precision, value_exact=cofactor,
            flags={"region": f"neumann_oval(a={self.a_exact or self.a})",
                   "transcendental_factor": "pi"})

    @property
    def psi(self) -> TaylorSeries:
        if self._psi is None:
            self._psi = self.psi_series()
        return self._psi

    def psi_series(self, truncation: int | None = None) -> TaylorSeries:
        m = truncation or DEFAULT_TRUNCATION
        with mp.workprec(self.precision):
            scale = self.R ** 4 - 1
            coeffs = [mp.mpf(0)] * (m + 1)
            n = 0
            while 2 * n + 1 <= m:
                coeffs[2 * n + 1] = scale / self.R ** (2 * n + 3)
                n += 1
            return TaylorSeries(coeffs, radius=self.R)

    def psi_point(self, w):
        w = to_mpc(w)
        return (self.R ** 4 - 1) * w / (self.R * (self.R ** 2 - w ** 2))

    def psi_prime_point(self, w):
        w = to_mpc(w)
        return (self.R ** 4 - 1) * (self.R ** 2 + w ** 2) \
            / (self.R * (self.R ** 2 - w ** 2) ** 2)

    def phi(self, z):
        """Inverse map in the subtraction-free form ``2 R^3 z / (R^4 - 1 + S)``.

        ``S = sqrt((R^4-1)^2 + 4 R^4 z^2)`` stays in the right half plane on
        the oval, so the principal branch is the right one and z = 0 needs no
        special-casing.
        """
        z = to_mpc(z)
        r4 = self.R ** 4
        s = mp.sqrt((r4 - 1) ** 2 + 4 * r4 * z ** 2)
        return 2 * self.R ** 3 * z / (r4 - 1 + s)

    def phi_prime(self, z):
        return 1 / self.psi_prime_point(self.phi(z))

    def projection_point(self, z):
        """Closed-form ``Q(z) = (phi(z) + z phi'(z)) / R``."""
        z = to_mpc(z)
        return (self.phi(z) + z * self.phi_prime(z)) / self.R

    def stress_point(self, z):
        """Closed-form ``nu(z) = (R^4-1)/(2R^2) + Re[z phi(z)]/R - |z|^2/2``."""
        z = to_mpc(z)
        head = (self.R ** 4 - 1) / (2 * self.R ** 2)
        return head + (z * self.phi(z)).real / self.R \
            - (z.real ** 2 + z.imag ** 2) / 2

    def stress_pair(self):
        return stress_and_projection(self.F_closed, self.phi, self.phi_prime)


def neumann_oval_family(a, precision: int | None = None) -> NeumannOval:
    """Neumann's oval with half-parameter ``a > 0``; see :class:`NeumannOval`."""
    return NeumannOval(a, precision=precision)


# ---------------------------------------------------------------------------
# Reciprocal-polynomial maps psi = sqrt(2)/p
# ---------------------------------------------------------------------------

def reciprocal_map_series(coefficients, scale_sq=1,
                          truncation: int | None = None,
                          precision: int | None = None) -> TaylorSeries:
    """Taylor series of ``psi = sqrt(2)/(sqrt(scale_sq) q)`` on the disk.

    ``q`` must be zero-free on the closed disk (checked exactly through the
    reflection-coefficient recursion when the coefficients are exact), which
    puts the true radius of convergence strictly beyond 1; the declared radius
    is read off the measured coefficient decay.
    """
    from .opuc import reciprocal_poly_measure

    q = coefficients if isinstance(coefficients, ComplexPolynomial) \
        else ComplexPolynomial(list(coefficients))
    reciprocal_poly_measure(q, scale_sq)  # raises InvalidMapError when unfit
    prec = precision or DEFAULT_PRECISION
    m = truncation or DEFAULT_TRUNCATION
    with mp.workprec(prec):
        q_mp = ComplexPolynomial([to_mpc(c) for c in q.coeffs])
        inv = RationalFunction(ComplexPolynomial([1]), q_mp).taylor(m + 1)
        scale = mp.sqrt(2 / to_mpf(scale_sq))
        probe = TaylorSeries([scale * c for c in inv], radius=1,
                             check_decay=False)
        _, ratio = probe.decay()
        radius = 1 / ratio if 0 < ratio < 1 else mp.mpf(1)
        return TaylorSeries(probe.coefficients, radius=radius)


# ---------------------------------------------------------------------------
# Equilateral triangle: the projection is the exact polynomial z^2
# ---------------------------------------------------------------------------

class EquilateralProjection(NamedTuple):
    q: ComplexPolynomial
    rho: object
    report: dict


def _triangle_wall_residual(x: Fraction, y: Fraction) -> Fraction:
    """``2 Re[z^3/3 + 1/6] - |z|^2`` at a rational point, exactly."""
    z = ComplexRational(Fraction(x), Fraction(y))
    cube = z * z * z
    return 2 * Fraction(cube.real) / 3 + Fraction(1, 3) - Fraction(abs2(z))


def equilateral_triangle_exact(precision: int | None = None
                               ) -> EquilateralProjection:
    """Exact projection data for the triangle with vertices 1, w, w^2 (w^3=1).

    The projection of ``zbar`` is the polynomial ``z^2`` — entire, no
    boundary singularities — and the stress function
    ``nu = Re[z^3/3 + 1/6] - |z|^2/2`` vanishes on the whole wall.  On the
    edge ``x = -1/2`` that vanishing is a rational identity, checked here in
    exact arithmetic; the rest of the wall is sampled in floating point.
    ``rho = (9/80) sqrt(3)``, cross-checked against polygon moments as
    ``c_{1,1} - c_{2,2}``.
    """
    prec = precision or DEFAULT_PRECISION
    q = ComplexPolynomial([0, 0, 1])
    half = Fraction(1, 2)
    wall_points = [Fraction(0), Fraction(1, 5), Fraction(-1, 5),
                   Fraction(2, 5), Fraction(-2, 5), half, -half,
                   Fraction(5, 8), Fraction(-5, 8), Fraction(6, 7),
                   Fraction(-6, 7)]
    exact_zero = all(_triangle_wall_residual(-half, y) == 0
                     for y in wall_points)
    exact_zero = exact_zero and _triangle_wall_residual(Fraction(1), 0) == 0

    with mp.workprec(prec):
        rho = mp.sqrt(3) * 9 / 80
        poly = realize_polygon(RegionSpec.equilateral_triangle(), prec)
        c11 = to_mpc(complex_moment(poly, 1, 1))
        c22 = to_mpc(complex_moment(poly, 2, 2))
        moment_residual = abs(c11 - c22 - rho)
        if moment_residual > rho * mp.mpf(2) ** (32 - prec):
            raise InconsistencyError(
                "polygon moments disagree with the closed rigidity "
                f"of the equilateral triangle by {mp.nstr(moment_residual, 6)}")

        def u(z):
            return 2 * (z ** 3).real / 3 + mp.mpf(1) / 3 \
                - (z.real ** 2 + z.imag ** 2)

        omega = mp.expj(2 * mp.pi / 3)
        top = mp.sqrt(3) / 2
        vertex_worst = max(abs(u(omega ** k)) for k in range(3))
        worst = mp.mpf(0)
        for k in range(22):
            y = -top + 2 * top * k / 21
            base = mp.mpc(mp.mpf(-1) / 2, y)
            for m in range(3):
                worst = max(worst, abs(u(base * omega ** m)))

    report = {
        "rational_wall_points_exact_zero": exact_zero,
        "vertex_max_residual": vertex_worst,
        "boundary_max_residual": worst,
        "boundary_samples": 66,
        "moment_residual": moment_residual,
        "rho_cofactor_of_sqrt3": Fraction(9, 80),
    }
    return EquilateralProjection(q, rho, report)


# ---------------------------------------------------------------------------
# Region-spec plumbing: series, rigidity, and moment tables for map families
# ---------------------------------------------------------------------------

def map_series_for(spec: RegionSpec, truncation: int | None = None,
                   precision: int | None = None) -> TaylorSeries:
    """Taylor series of the disk map for a map-family region spec."""
    if not isinstance(spec, RegionSpec):
        raise PreconditionError("map_series_for expects a RegionSpec")
    if spec.family == "unit_disk":
        return TaylorSeries([0, 1], radius=mp.inf, exact_polynomial=True)
    if spec.family == "dented_disk":
        fam = DentedDisk(spec.get("a"), spec.get("b"), precision=precision)
        return fam.psi_series(truncation)
    if spec.family == "neumann_oval":
        return NeumannOval(spec.get("a"),
                           precision=precision).psi_series(truncation)
    if spec.family == "reciprocal_poly_map":
        return reciprocal_map_series(
            ComplexPolynomial(list(spec.get("coefficients"))),
            spec.get("scale_sq"), truncation, precision)
    raise UnsupportedVariantError(
        f"no conformal map is constructed for {spec.family!r} regions; "
        "use the moment route")


def rho_conformal_region(spec: RegionSpec, truncation: int | None = None,
                         precision: int | None = None,
                         tolerance=None) -> RigidityEstimate:
    """Disk-route rigidity for a map-family spec, doubling the truncation
    until the reported tail drops below the tolerance (relative, default
    2^(-prec/2))."""
    prec = precision or DEFAULT_PRECISION
    m = truncation or DEFAULT_TRUNCATION
    with mp.workprec(prec):
        tol = to_mpf(tolerance) if tolerance is not None \
            else mp.mpf(2) ** (-(prec // 2))
        while True:
            psi = map_series_for(spec, m, prec)
            estimate = rho_conformal(psi, prec)
            allowance = tol * (abs(to_mpf(estimate.value)) + 1)
            if to_mpf(estimate.tail) <= allowance:
                break
            if m >= MAX_TRUNCATION:
                warnings.warn(
                    f"series tail {mp.nstr(to_mpf(estimate.tail), 6)} still "
                    f"above tolerance at truncation {m}; reporting as is")
                break
            m *= 2
        estimate.flags["region"] = str(spec)
        return estimate


def moment_table_from_map(spec: RegionSpec, degree: int,
                          truncation: int | None = None,
                          precision: int | None = None) -> MomentTable:
    """Moment table ``c_{i,j} = int psi^i conj(psi)^j |psi'|^2 dA`` on the disk.

    The integrands ``u_i = psi^i psi'`` are built by repeated truncated
    products, and monomial orthogonality turns each entry into a weighted
    coefficient sum ``pi sum_k u_i[k] conj(u_j[k])/(k+1)``.  The worst
    geometric truncation tail over all pairs is recorded on the table.
    """
    prec = precision or DEFAULT_PRECISION
    m = truncation or DEFAULT_TRUNCATION
    with mp.workprec(prec):
        psi = map_series_for(spec, m, prec)
        u = [psi.derivative() if psi.exact_polynomial
             else TaylorSeries(psi.derivative().coefficients[:m],
                               psi.radius, check_decay=False)]
        for _ in range(degree + 1):
            u.append(u[-1].multiply(psi, truncation=u[0].truncation))

        def fill(i, j):
            left, right = u[i].coefficients, u[j].coefficients
            n = min(len(left), len(right))
            return mp.pi * mp.fsum(
                left[k] * right[k].conjugate() / (k + 1) for k in range(n))

        decays = [series.decay() for series in u]
        tail = mp.mpf(0)
        for i in range(len(u)):
            for j in range(i + 1):
                big_i, r_i = decays[i]
                big_j, r_j = decays[j]
                if big_i == 0 or big_j == 0:
                    continue
                r = r_i * r_j
                if r >= 1:
                    tail = mp.inf
                    break
                order = min(u[i].truncation, u[j].truncation)
                tail = max(tail, mp.pi * big_i * big_j * r ** (order + 1)
                           / ((order + 2) * (1 - r)))
        if not mp.isfinite(tail):
            warnings.warn("map series coefficients do not decay; "
                          "moment-table tail bound is infinite")
        return MomentTable.build(degree, fill, exact=False, precision=prec,
                                 label=f"map:{spec}", tail=tail)
