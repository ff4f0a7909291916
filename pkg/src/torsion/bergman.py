"""Torsional rigidity upper bounds from moment matrices.

The squared distance from conj(z) to the analytic polynomials of degree at
most N (in the area-integral inner product) is

    rho_N = c_{1,1} - sum_{n=0}^{N} |<conj(z), p_n>|^2

with p_n the orthonormal polynomials of the region.  The sequence rho_N is
nonincreasing and every term is an upper bound for the rigidity rho.

Orthogonalization runs as an LDL* factorization of the moment Gram matrix, so
exact rational moment tables give exact rational bounds: no square roots are
ever taken, because only |d_n|^2 = |<conj(z), P_n>|^2 / ||P_n||^2 is needed.
A determinant-based route and closed forms for degrees 1 and 2 serve as
independent cross-checks of the factorization pipeline.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp

from .errors import (
    DegenerateRegionError,
    InconsistencyError,
    PrecisionExhaustedError,
    PreconditionError,
)
from .estimates import RigidityEstimate
from .moments import MomentTable, _complex_from_real, moment_table
from .poly import ComplexPolynomial
from .regions import MAP_FAMILIES, RegionSpec
from .scalars import DEFAULT_PRECISION, abs2, is_exact, real_part, to_mpc, to_mpf

MAX_PRECISION = 4096


def ldl_decompose(gram, exact: bool):
    """G = L D L* for a Hermitian positive-definite matrix given as rows.

    Returns (L, D) with L unit lower triangular and D a list of positive
    diagonal entries.  An exact Gram matrix that fails positivity is a logic
    error; in floating point a collapsed pivot signals that the working
    precision cannot resolve the factorization.
    """
    n = len(gram)
    L = [[0] * n for _ in range(n)]
    D = [None] * n
    for j in range(n):
        acc = real_part(gram[j][j])
        for k in range(j):
            acc = acc - abs2(L[j][k]) * D[k]
        if exact:
            if acc <= 0:
                raise InconsistencyError(
                    f"exact Gram matrix is not positive definite at index {j}")
        else:
            floor = abs(real_part(gram[j][j])) * mp.mpf(2) ** (16 - mp.prec)
            if acc <= 0 or acc < floor:
                raise PrecisionExhaustedError(
                    f"orthogonalization pivot {j} lost to cancellation at "
                    f"{mp.prec}-bit precision", degree=j)
        D[j] = acc
        L[j][j] = 1
        for i in range(j + 1, n):
            s = gram[i][j]
            for k in range(j):
                s = s - L[i][k] * D[k] * L[j][k].conjugate()
            L[i][j] = s / D[j]
    return L, D


def _unit_lower_inverse(L):
    """Inverse of a unit lower triangular matrix; rows are monic coefficients."""
    n = len(L)
    inv = [[0] * (i + 1) for i in range(n)]
    for i in range(n):
        inv[i][i] = 1
        for k in range(i - 1, -1, -1):
            s = 0
            for j in range(k, i):
                s = s + L[i][j] * inv[j][k]
            inv[i][k] = -s
    return inv


class OrthonormalBasis:
    """Monic P_0..P_N (exact when the table is) plus their squared norms.

    Orthonormal versions p_n = P_n/||P_n|| involve square roots, so they are
    materialized on demand as floating-point polynomials at the current
    working precision.
    """

    __slots__ = ("degree", "monic_coeffs", "norms_sq", "exact", "precision")

    def __init__(self, degree, monic_coeffs, norms_sq, exact, precision=None):
        self.degree = degree
        self.monic_coeffs = monic_coeffs
        self.norms_sq = norms_sq
        self.exact = exact
        self.precision = precision

    @classmethod
    def from_table(cls, table: MomentTable, degree: int | None = None):
        if degree is None:
            degree = table.degree
        if degree > table.degree:
            raise PreconditionError(
                f"table only supports orthogonalization to degree {table.degree}")
        L, D = ldl_decompose(table.gram(degree), table.exact)
        return cls(degree, _unit_lower_inverse(L), D, table.exact, table.precision)

    def monic(self, n: int) -> ComplexPolynomial:
        return ComplexPolynomial(self.monic_coeffs[n])

    def norm_squared(self, n: int):
        return self.norms_sq[n]

    def orthonormal(self, n: int) -> ComplexPolynomial:
        scale = 1 / mp.sqrt(to_mpf(self.norms_sq[n]))
        return ComplexPolynomial([to_mpc(c) * scale for c in self.monic_coeffs[n]])

    def inner_product(self, table: MomentTable, m: int, n: int):
        """<P_m, P_n> evaluated through the moment table."""
        acc = 0
        for k, a in enumerate(self.monic_coeffs[m]):
            for l, b in enumerate(self.monic_coeffs[n]):
                acc = acc + a * b.conjugate() * table.c(k, l)
        return acc

    def gram_residual_sq(self, table: MomentTable):
        """max over m,n of |<p_m,p_n> - delta_mn|²; exact zero for exact tables."""
        worst = 0
        for m in range(self.degree + 1):
            for n in range(m + 1):
                val = self.inner_product(table, m, n)
                if m == n:
                    val = val - self.norms_sq[n]
                rel = abs2(val) / (self.norms_sq[m] * self.norms_sq[n])
                if rel > worst:
                    worst = rel
        return worst


def orthonormalize(table: MomentTable, degree: int | None = None) -> OrthonormalBasis:
    return OrthonormalBasis.from_table(table, degree)


class ProjectionResult:
    """Projection of conj(z) onto polynomials of degree <= N.

    Carries the pairings t_n = <conj(z), P_n> and squared norms exactly; the
    orthonormal-coefficient magnitudes |d_n| = |t_n|/||P_n|| and the partial
    sums rho_0 >= rho_1 >= ... >= rho_N follow from them without square roots
    (|d_n|^2 = |t_n|^2 / ||P_n||^2).
    """

    __slots__ = ("degree", "pairings", "norms_sq", "d_sq", "rho_list", "q", "exact")

    def __init__(self, degree, pairings, norms_sq, d_sq, rho_list, q, exact):
        self.degree = degree
        self.pairings = pairings
        self.norms_sq = norms_sq
        self.d_sq = d_sq
        self.rho_list = rho_list
        self.q = q
        self.exact = exact

    @property
    def rho(self):
        return self.rho_list[-1]

    def d(self, n: int):
        """The orthonormal pairing d_n = <conj(z), p_n> at working precision."""
        t = self.pairings[n]
        return mp.mpc(to_mpf(t.real), to_mpf(t.imag)) / mp.sqrt(to_mpf(self.norms_sq[n]))

    def to_json_dict(self) -> dict:
        return {
            "schema": "zbar-projection/1",
            "degree": self.degree,
            "rho": str(self.rho) if self.exact else mp.nstr(to_mpf(self.rho), 25),
            "q_coefficients": [
                [str(c.real), str(c.imag)] if self.exact
                else [mp.nstr(mp.mpc(c).real, 25), mp.nstr(mp.mpc(c).imag, 25)]
                for c in self.q.coeffs
            ],
            "d_magnitudes": [mp.nstr(mp.sqrt(to_mpf(s)), 17) for s in self.d_sq],
        }


def project_zbar(table: MomentTable, basis: OrthonormalBasis | None = None,
                 degree: int | None = None) -> ProjectionResult:
    """Project conj(z) onto polynomials of degree <= N through the table.

    <conj(z), P_n> = conj(sum_k a_{n,k} c_{k+1,0}) because pairing a monomial
    z^k against conj(z) integrates conj(z)^{k+1}.
    """
    if basis is None:
        basis = OrthonormalBasis.from_table(table, degree)
    pairings, d_sq = [], []
    for n in range(basis.degree + 1):
        s = 0
        for k, a in enumerate(basis.monic_coeffs[n]):
            s = s + a * table.c(k + 1, 0)
        t = s.conjugate()
        pairings.append(t)
        d_sq.append(abs2(t) / basis.norms_sq[n])
    rho_list = []
    acc = real_part(table.c(1, 1))
    for g in d_sq:
        acc = acc - g
        rho_list.append(acc)
    coeffs = [0] * (basis.degree + 1)
    for n in range(basis.degree + 1):
        weight = pairings[n] / basis.norms_sq[n]
        for k, a in enumerate(basis.monic_coeffs[n]):
            coeffs[k] = coeffs[k] + weight * a
    return ProjectionResult(basis.degree, pairings, basis.norms_sq, d_sq,
                            rho_list, ComplexPolynomial(coeffs), table.exact)


def rho_sequence(table: MomentTable, degree: int | None = None):
    """[rho_0, ..., rho_degree]; exact Fractions for exact tables."""
    return project_zbar(table, degree=degree).rho_list


def bergman_projection(table: MomentTable, degree: int | None = None) -> ComplexPolynomial:
    """Best degree-N polynomial approximation Q_N to conj(z)."""
    return project_zbar(table, degree=degree).q


# ---------------------------------------------------------------------------
# Determinant route (cross-check only; exponentially costly in the degree).
# ---------------------------------------------------------------------------

def _det(rows, exact: bool):
    """Determinant by Gaussian elimination with modulus pivoting."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs2(m[r][col]))
        if m[pivot][col] == 0:
            return m[pivot][col]
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [m[r][k] - f * m[col][k] for k in range(n)]
    det = m[0][0]
    for i in range(1, n):
        det = det * m[i][i]
    return sign * det


def moment_determinant(table: MomentTable, n: int):
    """sigma_n: determinant of the order-n moment matrix (sigma_0 = 1)."""
    return _det([[table.c(s, t) for s in range(n)] for t in range(n)], table.exact)


def zbar_pairing_determinant(table: MomentTable, n: int):
    """The determinant representing <conj(z), R_n> (R_n the determinant poly)."""
    rows = [[table.c(t, s) for s in range(n + 1)] for t in range(n)]
    rows.append([table.c(0, s + 1) for s in range(n + 1)])
    return _det(rows, table.exact)


def leading_pairing_determinant(table: MomentTable, n: int):
    """The determinant representing <w^n, R_n>."""
    return _det([[table.c(t, s) for s in range(n + 1)] for t in range(n + 1)],
                table.exact)


def monic_via_determinant(table: MomentTable, n: int) -> ComplexPolynomial:
    """Monic orthogonal P_n by cofactor expansion of the determinant form.

    The degree-n determinant polynomial has rows of moments and a final row
    of monomials; dividing by sigma_n makes it monic.
    """
    if n > table.degree + 1:
        raise PreconditionError(f"table too small for determinant route at {n}")
    sigma = moment_determinant(table, n)
    if sigma == 0:
        raise PrecisionExhaustedError(
            f"singular order-{n} moment determinant", degree=n)
    coeffs = []
    sign = (-1) ** n
    for s in range(n + 1):
        cols = [s2 for s2 in range(n + 1) if s2 != s]
        minor = _det([[table.c(s2, t) for s2 in cols] for t in range(n)],
                     table.exact)
        coeffs.append(sign * minor / sigma)
        sign = -sign
    return ComplexPolynomial(coeffs)


def rho_via_determinants(table: MomentTable, degree: int | None = None):
    """The rho sequence through moment determinants.

    Each gap term is |<conj(z), R_n>|^2 / (sigma_n <w^n, R_n>); independent of
    the factorization route, but exponentially costly — keep the degree small.
    """
    if degree is None:
        degree = table.degree
    if degree > table.degree:
        raise PreconditionError(
            f"table only supports determinants to degree {table.degree}")
    out = []
    acc = real_part(table.c(1, 1))
    for n in range(degree + 1):
        numerator = zbar_pairing_determinant(table, n)
        denom = real_part(moment_determinant(table, n)
                          * leading_pairing_determinant(table, n))
        acc = acc - abs2(numerator) / denom
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Closed forms for degrees 1 and 2.
# ---------------------------------------------------------------------------

def rho1_closed(i20, i02, i11):
    """Degree-1 bound for a centroid-at-origin region.

    Returns (rho_1, alpha) where alpha·z is the projection of conj(z) onto
    polynomials of degree <= 1:

        rho_1 = 4 (I20·I02 - I11²) / (I20 + I02),     alpha = c_{0,2}/c_{1,1}.
    """
    polar = i20 + i02
    if polar == 0:
        raise DegenerateRegionError("zero polar moment of inertia")
    rho = 4 * (i20 * i02 - i11 * i11) / polar
    alpha = _complex_pair(i20 - i02, -2 * i11) / polar
    return rho, alpha


def _complex_pair(re, im):
    from .scalars import ComplexRational

    if is_exact(re) and is_exact(im):
        return ComplexRational(re, im)
    return mp.mpc(to_mpf(re), to_mpf(im))


def rho2_closed(real_moments, tolerance=None):
    """Degree-2 bound from real moments I_mn (m+n <= 4), two ways at once.

    Requires centroid at the origin and I_21 = 0 (reachable by rotation).
    Evaluates both the I-moment form and the c-moment form of the bound and
    insists they agree, guarding against transcription slips in either.
    """
    I = dict(real_moments)

    def g(m, n):
        return I[(m, n)]

    exact = all(is_exact(v) for v in I.values())
    if tolerance is None:
        scale = abs(g(0, 0)) + abs(g(2, 0)) + abs(g(0, 2))
        tolerance = 0 if exact else scale * mp.mpf(2) ** (-(mp.prec // 2))
    for key in ((1, 0), (0, 1), (2, 1)):
        if abs(g(*key)) > tolerance:
            raise PreconditionError(
                f"moment I{key[0]}{key[1]} must vanish (centroid/rotation "
                "normalization) before the degree-2 closed form applies")

    i00 = g(0, 0)
    i20, i02, i11 = g(2, 0), g(0, 2), g(1, 1)
    i30, i12, i03 = g(3, 0), g(1, 2), g(0, 3)
    i40, i22, i04 = g(4, 0), g(2, 2), g(0, 4)
    polar = i20 + i02
    if polar == 0:
        raise DegenerateRegionError("zero polar moment of inertia")

    first = (i20 * i02 - i11 * i11) / polar
    num = (i02 * (i30 - i12) - 2 * i20 * i12 + i11 * i03) ** 2 \
        + (i20 * i03 + i11 * (i30 + i12)) ** 2
    den_inner = i00 * (i40 + 2 * i22 + i04
                       - ((i12 + i30) ** 2 + i03 ** 2) / polar) \
        - (i20 - i02) ** 2 - 4 * i11 * i11
    if den_inner == 0:
        raise DegenerateRegionError("degenerate degree-2 moment system")
    rho_i_form = 4 * (first - i00 * num / (polar ** 2 * den_inner))

    def c(i, j):
        return _complex_from_real(i, j, lambda m, n: g(m, n), exact)

    c00 = real_part(c(0, 0))
    c11 = real_part(c(1, 1))
    c22 = real_part(c(2, 2))
    c02, c20, c21, c12, c03 = c(0, 2), c(2, 0), c(2, 1), c(1, 2), c(0, 3)
    norm2 = c00 * c11 * c22 - c00 * abs2(c21) - c11 * abs2(c20)
    if norm2 == 0:
        raise DegenerateRegionError("degenerate degree-2 moment system")
    rho_c_form = c11 - abs2(c02) / c11 \
        - (c00 * c11 / norm2) * abs2(c03 - c12 * c02 / c11)

    diff = rho_i_form - rho_c_form
    if exact:
        if diff != 0:
            raise InconsistencyError(
                "the two degree-2 closed forms disagree on exact input")
    elif abs(diff) > (abs(rho_c_form) + 1) * mp.mpf(2) ** (-(mp.prec // 2)):
        raise InconsistencyError(
            "the two degree-2 closed forms disagree beyond tolerance")
    return rho_c_form


# ---------------------------------------------------------------------------
# Estimates and convergence.
# ---------------------------------------------------------------------------

def _table_for(region, degree: int, precision: int | None,
               truncation: int | None = None) -> MomentTable:
    if isinstance(region, MomentTable):
        if region.degree < degree:
            raise PreconditionError(
                f"supplied table stops at degree {region.degree}, need {degree}")
        return region
    if isinstance(region, RegionSpec) and region.family in MAP_FAMILIES \
            and region.family != "unit_disk":
        from . import conformal

        return conformal.moment_table_from_map(
            region, degree, truncation=truncation, precision=precision)
    return moment_table(region, degree, precision)


def rho_upper(region, degree: int = 10, precision: int | None = None,
              truncation: int | None = None,
              max_precision: int = MAX_PRECISION) -> RigidityEstimate:
    """Moment-method upper bound rho_N for a region.

    ``region`` may be a RegionSpec, a PolygonRegion, or a prebuilt
    MomentTable.  Floating-point orthogonalizations that collapse retry on a
    doubling precision ladder up to ``max_precision``.
    """
    requested = precision
    prec = precision or DEFAULT_PRECISION
    while True:
        table = _table_for(region, degree, requested, truncation)
        try:
            with mp.workprec(prec):
                rho = rho_sequence(table, degree)[degree]
            break
        except PrecisionExhaustedError:
            if isinstance(region, MomentTable) or prec >= max_precision:
                raise
            prec *= 2
            requested = prec
    exact = isinstance(rho, Fraction)
    with mp.workprec(prec):
        value = to_mpf(rho)
    return RigidityEstimate(
        value=value,
        bound="upper",
        method="moment",
        order=degree,
        precision=None if exact else prec,
        value_exact=rho if exact else None,
        tail=table.tail,
        flags={"label": table.label} if table.label else {},
    )


class ConvergenceProbe:
    """Gap sequence rho_n - rho_true and its fitted geometric ratio."""

    __slots__ = ("gaps", "ratio", "fit_window", "dropped")

    def __init__(self, gaps, ratio, fit_window, dropped):
        self.gaps = gaps
        self.ratio = ratio
        self.fit_window = fit_window
        self.dropped = dropped


def convergence_probe(region, n_max: int, rho_true,
                      precision: int | None = None,
                      truncation: int | None = None,
                      fit_window: tuple | None = None) -> ConvergenceProbe:
    """Measure how fast rho_n approaches a trusted reference value.

    Fits log(rho_n - rho_true) against n by least squares over ``fit_window``
    (default: the final third of the range) and reports exp(slope) as the
    geometric ratio.  Gaps at or below the precision floor are dropped from
    the fit; an empty fit yields ratio None.
    """
    prec = precision or DEFAULT_PRECISION
    table = _table_for(region, n_max, precision, truncation)
    with mp.workprec(prec):
        rho_list = rho_sequence(table, n_max)
        gaps = [(n, to_mpf(r) - to_mpf(rho_true)) for n, r in enumerate(rho_list)]
        if fit_window is None:
            fit_window = (n_max - max(1, n_max // 3), n_max)
        floor = (abs(to_mpf(rho_true)) + 1) * mp.mpf(2) ** (16 - prec)
        if table.tail:
            floor = max(floor, 4 * to_mpf(table.tail))
        points = [(n, mp.log(g)) for n, g in gaps
                  if fit_window[0] <= n <= fit_window[1] and g > floor]
        dropped = (fit_window[1] - fit_window[0] + 1) - len(points)
        if len(points) < 2:
            return ConvergenceProbe(gaps, None, fit_window, dropped)
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        k = len(points)
        xbar = mp.fsum(xs) / k
        ybar = mp.fsum(ys) / k
        slope = mp.fsum((x - xbar) * (y - ybar) for x, y in points) \
            / mp.fsum((x - xbar) ** 2 for x in xs)
        return ConvergenceProbe(gaps, mp.exp(slope), fit_window, dropped)
