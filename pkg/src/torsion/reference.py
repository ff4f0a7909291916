"""Independent reference values for the rigidity of classical shapes.

The rectangle and the isosceles right triangle admit classical double-series
expansions of the torsional rigidity; truncating them gives trusted values to
check the moment pipeline against, provided the truncation error is under
control.  Every series value returned here is therefore paired with a rigorous
tail bound obtained by closed-form comparison sums (integral comparison for
the cap indices, exact odd zeta-type constants for the free ones), so that
``value - tail`` is a certified under-estimate.

Also included: the elementary two-sided rectangle bracket coming from the
degree-1 moment bound combined with the classical lower bound, and the exact
disk value pi r^4 / 2.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp

from .errors import ParameterDomainError, PreconditionError
from .scalars import DEFAULT_PRECISION, is_exact, to_mpf

__all__ = [
    "rectangle_rho_series",
    "rectangle_rho_bracket",
    "isosceles_right_triangle_rho_series",
    "disk_rho",
]


def _check_cap(name: str, value, minimum: int):
    if not isinstance(value, int) or isinstance(value, bool):
        raise PreconditionError(f"truncation cap {name} must be an integer")
    if value < minimum:
        raise PreconditionError(f"truncation cap {name} must be >= {minimum}")


def rectangle_rho_series(a, b, J: int = 85, K: int = 85, precision: int | None = None):
    """Truncated rigidity series of the a-by-b rectangle, with tail bound.

    rho = (256 a^3 b^3 / pi^6) * sum_{j,k>=0}
              1 / [ (2j+1)^2 (2k+1)^2 ((2j+1)^2 a^2 + (2k+1)^2 b^2) ]

    summed over ``j <= J`` and ``k <= K``.  Every term is positive, so the
    partial sum is itself a lower bound.  Dropping the bracketed lattice
    factor against ``(2j+1)^2 a^2`` (resp. ``b^2``) and comparing with the
    integral of (2j+1)^{-4} gives the tail bound

        (256 a^3 b^3 / pi^6) * (pi^2/8)
            * [ 1/(6 a^2 (2J+1)^3) + 1/(6 b^2 (2K+1)^3) ],

    where pi^2/8 is the full sum of (2k+1)^{-2}.  Returns ``(value, tail)``
    as mpmath floats at the working precision.
    """
    if a <= 0 or b <= 0:
        raise ParameterDomainError("rectangle sides must be positive")
    _check_cap("J", J, 0)
    _check_cap("K", K, 0)
    prec = precision or DEFAULT_PRECISION
    with mp.workprec(prec):
        am, bm = to_mpf(a), to_mpf(b)
        a2, b2 = am * am, bm * bm
        ja = [a2 * ((2 * j + 1) ** 2) for j in range(J + 1)]
        kb = [b2 * ((2 * k + 1) ** 2) for k in range(K + 1)]
        rows = []
        for j in range(J + 1):
            cj = (2 * j + 1) ** 2
            aj = ja[j]
            rows.append(mp.fsum(
                1 / (cj * ((2 * k + 1) ** 2) * (aj + kb[k]))
                for k in range(K + 1)))
        front = 256 * (am * bm) ** 3 / mp.pi ** 6
        value = front * mp.fsum(rows)
        tail = front * (mp.pi ** 2 / 8) * (
            1 / (6 * a2 * (2 * J + 1) ** 3) + 1 / (6 * b2 * (2 * K + 1) ** 3))
        return value, tail


def rectangle_rho_bracket(a, b):
    """Elementary two-sided bound a^3b^3/(4(a^2+b^2)) <= rho <= .../3.

    The lower constant is classical, the upper one is the degree-1 moment
    bound; their ratio tends to 3/4 as the aspect ratio degenerates.  Exact
    inputs give exact ``Fraction`` endpoints.
    """
    if a <= 0 or b <= 0:
        raise ParameterDomainError("rectangle sides must be positive")
    if is_exact(a) and is_exact(b):
        a, b = Fraction(a), Fraction(b)
    core = (a * b) ** 3 / (a * a + b * b)
    return core / 4, core / 3


def isosceles_right_triangle_rho_series(M: int = 100, N: int = 100,
                                        precision: int | None = None):
    """Truncated rigidity series of the right triangle with unit legs.

    rho = (2^10 / pi^6) * sum_{m,n>=1}
              m^2 / [ (2n-1)^2 (4m^2-(2n-1)^2) (16m^4-(2n-1)^4) ]

    summed over ``m <= M``, ``n <= N``.  With q = 2n-1 the denominator
    factors as q^2 (4m^2-q^2)^2 (4m^2+q^2), so every term is positive (q is
    odd, hence never equals 2m) and the partial sums increase with the caps.

    Tail bound, valid for all caps >= 1: splitting 4m^2 - q^2 = (2m-q)(2m+q)
    and bounding each inner sum by the full odd series pi^2/8 gives
    sum_n term(m, n) <= 17 pi^2 / (2048 m^4) for fixed m, and
    sum_m term(m, n) <= 3 pi^2 / (64 q^4) for fixed q = 2n-1; integral
    comparison of the remaining single sums then yields

        tail <= 17/(6 pi^4 M^3) + 8/(pi^4 (2N-1)^3).

    Returns ``(value, tail)`` as mpmath floats.
    """
    _check_cap("M", M, 1)
    _check_cap("N", N, 1)
    prec = precision or DEFAULT_PRECISION
    with mp.workprec(prec):
        rows = []
        for m in range(1, M + 1):
            m2 = m * m
            four_m2 = 4 * m2
            terms = []
            for n in range(1, N + 1):
                q = 2 * n - 1
                q2 = q * q
                d = four_m2 - q2
                terms.append(mp.mpf(m2) / (q2 * d * d * (four_m2 + q2)))
            rows.append(mp.fsum(terms))
        value = (mp.mpf(2) ** 10 / mp.pi ** 6) * mp.fsum(rows)
        tail = (mp.mpf(17) / 6 / mp.mpf(M) ** 3
                + 8 / mp.mpf(2 * N - 1) ** 3) / mp.pi ** 4
        return value, tail


def disk_rho(r=1, precision: int | None = None):
    """Rigidity pi r^4 / 2 of the disk of radius r (the scaling-law anchor)."""
    if r <= 0:
        raise ParameterDomainError("disk radius must be positive")
    prec = precision or DEFAULT_PRECISION
    with mp.workprec(prec):
        return mp.pi * to_mpf(r) ** 4 / 2
