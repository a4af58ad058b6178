"""Complex special functions: log-gamma, Gauss 2F1 and Jacobi polynomials.

Everything here works on plain Python ``complex`` scalars (``jacobi_poly``
also accepts numpy arrays for ``x``).  The kernel is self-contained so the
closed-form physics can be checked against independent oracles in the tests.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergence, ParameterError, PoleError

# Lanczos approximation, g = 7, nine coefficients (relative error ~1e-15).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

POLE_TOL = 1e-12
SERIES_MAX_TERMS = 100_000
SERIES_RTOL = 1e-16
SWITCH_RADIUS = 0.5
DEGENERATE_TOL = 1e-8
C_PERTURBATION = 1e-6


def _near_pole(z: complex) -> bool:
    if abs(z.imag) > POLE_TOL or z.real > POLE_TOL:
        return False
    return abs(z.real - round(z.real)) <= POLE_TOL


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1.0
    acc = complex(_LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _log_sin_pi(z: complex) -> complex:
    """Principal log of sin(pi z), overflow-safe for large |Im z|."""
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (e^{-i pi z} - e^{i pi z}) / 2i, one exponential dominates
    if z.imag > 0:
        w = -1j * math.pi * z + cmath.log((1.0 - cmath.exp(2j * math.pi * z)) * 0.5j)
    else:
        w = 1j * math.pi * z + cmath.log((1.0 - cmath.exp(-2j * math.pi * z)) / 2j)
    # bring the imaginary part back to (-pi, pi]
    im = math.remainder(w.imag, 2.0 * math.pi)
    if im <= -math.pi:
        im += 2.0 * math.pi
    return complex(w.real, im)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    The imaginary part is the continuous ``arg Gamma(z)`` obtained by
    continuation from the positive real axis (the same branch as
    ``scipy.special.loggamma``), not reduced modulo 2 pi.

    Raises
    ------
    PoleError
        If ``z`` lies within 1e-12 of 0, -1, -2, ...
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParameterError(f"non-finite argument {z!r}")
    if _near_pole(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    if z.real >= 0.5:
        return _lanczos(z)
    if z.imag == 0.0:
        # on the negative real axis: shift up, limit taken from above
        n = math.ceil(0.5 - z.real)
        acc = _lanczos(z + n)
        for k in range(n):
            acc -= cmath.log(z + k)
        return acc
    # reflection, with the 2 pi i m correction that restores the principal branch
    m = math.floor(0.5 * z.real + 0.25)
    sign = 1.0 if z.imag > 0 else -1.0
    return _LOG_PI - _log_sin_pi(z) - _lanczos(1.0 - z) + 2j * math.pi * sign * m


def gamma_arg(z) -> float:
    """Continuous argument of Gamma(z), i.e. ``log_gamma(z).imag``."""
    return log_gamma(z).imag


def gamma(z) -> complex:
    return cmath.exp(log_gamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z); exactly zero at the poles of Gamma."""
    z = complex(z)
    if _near_pole(z):
        return 0j
    return cmath.exp(-log_gamma(z))


@dataclass(frozen=True)
class Hyp2f1Result:
    """2F1 value plus how it was obtained.

    ``c_shift`` is non-zero when the connection formula hit its degenerate
    case (c - a - b near an integer) and the value was obtained by averaging
    evaluations at c +/- c_shift.
    """

    value: complex
    method: str
    terms: int
    c_shift: float = 0.0


def _series(a: complex, b: complex, c: complex, z: complex) -> tuple[complex, int]:
    total = 1.0 + 0j
    term = 1.0 + 0j
    small = 0
    for n in range(SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0:
            return total, n + 1
        if abs(term) <= SERIES_RTOL * abs(total):
            small += 1
            # two consecutive negligible terms guards against a stray near-zero factor
            if small >= 2:
                return total, n + 1
        else:
            small = 0
    raise NonConvergence(
        f"2F1 series did not converge in {SERIES_MAX_TERMS} terms (z={z!r})"
    )


def _near_integer(w: complex, tol: float) -> bool:
    return abs(w.imag) <= tol and abs(w.real - round(w.real)) <= tol


def _connection(a: complex, b: complex, c: complex, w: complex, log_w: complex | None = None) -> tuple[complex, int]:
    """2F1(a, b; c; 1 - w) through the standard z -> 1 - z connection formula.

    ``log_w`` lets callers pass w in log form when w itself underflows.
    """
    s = c - a - b
    f1, n1 = _series(a, b, 1.0 - s, w) if w != 0 else (1.0 + 0j, 0)
    coef1 = cmath.exp(log_gamma(c) + log_gamma(s)) * rgamma(c - a) * rgamma(c - b)
    if w == 0 and log_w is None:
        return coef1 * f1, n1
    f2, n2 = _series(c - a, c - b, 1.0 + s, w) if w != 0 else (1.0 + 0j, 0)
    coef2 = cmath.exp(log_gamma(c) + log_gamma(-s)) * rgamma(a) * rgamma(b)
    lw = cmath.log(w) if log_w is None else log_w
    return coef1 * f1 + cmath.exp(s * lw) * coef2 * f2, n1 + n2


def _connection_checked(a: complex, b: complex, c: complex, w: complex,
                        log_w: complex | None = None) -> Hyp2f1Result:
    s = c - a - b
    if w == 0 and log_w is None and s.real <= 0:
        raise DomainError("2F1 diverges at z = 1 unless Re(c - a - b) > 0")
    if _near_integer(s, DEGENERATE_TOL):
        eps = C_PERTURBATION
        up, n1 = _connection(a, b, c + eps, w, log_w)
        dn, n2 = _connection(a, b, c - eps, w, log_w)
        return Hyp2f1Result(0.5 * (up + dn), "connection", n1 + n2, eps)
    val, n = _connection(a, b, c, w, log_w)
    return Hyp2f1Result(val, "connection", n)


def hyp2f1_detailed(a, b, c, z, *, _allow_pfaff: bool = True) -> Hyp2f1Result:
    """Gauss hypergeometric function with evaluation metadata.

    |z| <= 0.5 uses the defining series.  Elsewhere the argument is mapped to
    whichever of 1 - z (connection formula) or z/(z-1) (Pfaff) has the smaller
    modulus, falling back to the plain series if neither helps.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _near_pole(c):
        raise ParameterError(f"c = {c!r} is a non-positive integer")
    if z == 0:
        return Hyp2f1Result(1.0 + 0j, "trivial", 0)
    if a == 0 or b == 0:
        return Hyp2f1Result(1.0 + 0j, "trivial", 0)
    if abs(z) > 1.0 + 1e-15:
        raise DomainError(f"|z| = {abs(z)!r} > 1 is outside the supported domain")
    if abs(z) <= SWITCH_RADIUS:
        val, n = _series(a, b, c, z)
        return Hyp2f1Result(val, "series", n)
    # pick the transformation with the smallest series argument
    m_conn = abs(1.0 - z)
    m_pfaff = abs(z / (z - 1.0)) if _allow_pfaff and m_conn > 0 else math.inf
    if m_conn <= min(abs(z), m_pfaff):
        return _connection_checked(a, b, c, 1.0 - z)
    if m_pfaff >= abs(z):
        val, n = _series(a, b, c, z)
        return Hyp2f1Result(val, "series", n)
    w = z / (z - 1.0)
    inner = hyp2f1_detailed(a, c - b, c, w, _allow_pfaff=False)
    return Hyp2f1Result(
        (1.0 - z) ** (-a) * inner.value, "pfaff+" + inner.method, inner.terms, inner.c_shift
    )


def hyp2f1(a, b, c, z) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z) for |z| <= 1."""
    return hyp2f1_detailed(a, b, c, z).value


def hyp2f1_complement(a, b, c, w, log_w=None) -> complex:
    """2F1(a, b; c; 1 - w) with w passed directly.

    Keeps full relative accuracy in w when 1 - w rounds to 1 in floating point.
    Passing ``log_w`` (with w = exp(log_w), possibly underflowed to 0) keeps
    the w^(c-a-b) branch term when Re(c - a - b) = 0.
    """
    a, b, c, w = complex(a), complex(b), complex(c), complex(w)
    if log_w is not None:
        log_w = complex(log_w)
        w = cmath.exp(log_w) if log_w.real > -745.0 else 0j
    if _near_pole(c):
        raise ParameterError(f"c = {c!r} is a non-positive integer")
    if abs(w) <= SWITCH_RADIUS and abs(1.0 - w) <= 1.0 + 1e-15:
        return _connection_checked(a, b, c, w, log_w).value
    return hyp2f1(a, b, c, 1.0 - w)


def hyp2f1_connection_rhs(a, b, c, z) -> complex:
    """Right-hand side of the z -> 1 - z connection formula, summed directly.

    Exposed for consistency checks; no switching logic is applied.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    return _connection(a, b, c, 1.0 - z)[0]


def jacobi_poly(n: int, mu: float, nu: float, x):
    """Jacobi polynomial P_n^(mu, nu)(x) by the three-term recurrence.

    ``x`` may be a scalar or an array; the result has the same shape.
    """
    if n < 0 or int(n) != n:
        raise ParameterError(f"degree must be a non-negative integer, got {n!r}")
    if mu <= -1 or nu <= -1:
        raise ParameterError(f"need mu, nu > -1, got mu={mu!r}, nu={nu!r}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = (mu + 1.0) + (mu + nu + 2.0) * (x - 1.0) / 2.0
    s = mu + nu
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + s) * (2.0 * k + s - 2.0)
        a2 = (2.0 * k + s - 1.0) * ((2.0 * k + s) * (2.0 * k + s - 2.0) * x + mu * mu - nu * nu)
        a3 = 2.0 * (k + mu - 1.0) * (k + nu - 1.0) * (2.0 * k + s)
        p_prev, p = p, (a2 * p - a3 * p_prev) / a1
    return p if p.ndim else float(p)
