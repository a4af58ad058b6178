"""Numerical reference solutions that share no factorization code with ``bound``.

Bound levels: three-point finite differences of the effective equation on the
natural coordinate x = r - r_s (r_s = ln(q)/(2 alpha)), Dirichlet ends, lowest
eigenvalues by LAPACK's Sturm-sequence bisection, Richardson-extrapolated
over two resolutions.  The energy is then iterated to self-consistency.

Phase shifts: outward ODE integration from the regular Frobenius start at
the singular point and matching to the free asymptote at two radii.

Only ``omega_coeffs`` is imported from ``bound``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .bound import OmegaCoefficients, QuantumNumbers, omega_coeffs
from .errors import BelowThreshold, GridError, MatchError, NonConvergence, ParameterError
from .potential import MassParams, PotentialParams, continuum_edges, singular_point

LEVEL_COUNT = 8
TAIL_FLAG = 1e-8


@dataclass(frozen=True)
class RadialGrid:
    """Uniform interior grid on [r_min, r_max], both measured from the singular point."""

    r_min: float
    r_max: float
    points: int = 20000

    @classmethod
    def default(cls, p: PotentialParams, points: int = 20000) -> "RadialGrid":
        return cls(1e-6 / p.alpha, 14.0 / p.alpha, points)

    def validate(self, p: PotentialParams) -> None:
        if not self.r_min > 0:
            raise GridError("r_min must be positive (it is measured from the singular point)")
        if not self.r_max > self.r_min:
            raise GridError("r_max must exceed r_min")
        if self.points < 2000:
            raise GridError(f"need at least 2000 points, got {self.points}")
        if math.exp(-2.0 * p.alpha * self.r_max) >= 1e-12:
            raise GridError("r_max too small: exp(-2 alpha r_max) must be below 1e-12")

    def nodes(self, points: int | None = None) -> np.ndarray:
        n = self.points if points is None else points
        return np.linspace(self.r_min, self.r_max, n + 2)[1:-1]


def _potential_x(x, om: OmegaCoefficients, p: PotentialParams):
    t = np.exp(-2.0 * p.alpha * x)
    return (om.omega1 / p.q**2 * t * t + om.omega2 / p.q * t + om.omega3) / np.expm1(-2.0 * p.alpha * x) ** 2


def inverse_square_strength(om: OmegaCoefficients, p: PotentialParams) -> float:
    """c in V ~ c/x^2 near the singular point; c < -1/4 means fall to the centre."""
    return (om.omega1 / p.q**2 + om.omega2 / p.q + om.omega3) / (4.0 * p.alpha**2)


def _tridiagonal(vx: np.ndarray, h: float):
    return 2.0 / h**2 + vx, np.full(len(vx) - 1, -1.0 / h**2)


def _levels_on(x: np.ndarray, vx: np.ndarray, count: int) -> np.ndarray:
    d, e = _tridiagonal(vx, x[1] - x[0])
    return eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, count - 1))


def levels_for_potential(vfun, grid: RadialGrid, count: int = LEVEL_COUNT, richardson: bool = True) -> np.ndarray:
    """Lowest eigenvalues of -u'' + v(x) u on the grid, optionally Richardson-extrapolated."""
    x1 = grid.nodes()
    l1 = _levels_on(x1, vfun(x1), count)
    if not richardson:
        return l1
    x2 = grid.nodes(2 * grid.points + 1)
    l2 = _levels_on(x2, vfun(x2), count)
    return (4.0 * l2 - l1) / 3.0


def levels_for_coefficients(
    om: OmegaCoefficients,
    p: PotentialParams,
    grid: RadialGrid | None = None,
    count: int = LEVEL_COUNT,
    richardson: bool = True,
) -> np.ndarray:
    grid = grid or RadialGrid.default(p)
    grid.validate(p)
    if inverse_square_strength(om, p) < -0.25:
        raise ParameterError("effective potential falls to the centre; no lower-bounded spectrum")
    return levels_for_potential(lambda x: _potential_x(x, om, p), grid, count, richardson)


def effective_levels(
    E_param: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    grid: RadialGrid | None = None,
    count: int = LEVEL_COUNT,
    richardson: bool = True,
    convention: str = "derived",
) -> list[float]:
    """Lowest ``count`` eigenvalues Et of the effective equation with coefficients frozen at E_param."""
    om = omega_coeffs(E_param, qn, p, m, convention)
    return [float(v) for v in levels_for_coefficients(om, p, grid, count, richardson)]


def _mismatch(E, qn, p, m, grid, richardson, convention):
    try:
        lv = effective_levels(E, qn, p, m, grid, qn.n + 1, richardson, convention)
    except ParameterError:
        return math.nan
    return lv[qn.n] - (E * E - m.m0 * m.m0)


def oracle_bound_energies(
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    grid: RadialGrid | None = None,
    scan_points: int = 60,
    window: tuple[float, float] | None = None,
    xtol: float = 1e-10,
    convention: str = "derived",
) -> list[float]:
    """Energies E where the n-th numerical level equals E^2 - m0^2.

    The gap is scanned with single-resolution levels; each sign change is
    then refined with Richardson-extrapolated levels.
    """
    if qn.n >= LEVEL_COUNT:
        raise ParameterError(f"oracle resolves only the lowest {LEVEL_COUNT} levels")
    grid = grid or RadialGrid.default(p)
    grid.validate(p)
    if window is None:
        upper, lower = continuum_edges(p, m)
        pad = 1e-3 * (upper - lower)
        window = (lower + pad, upper - pad)
    es = np.linspace(window[0], window[1], scan_points)
    hs = np.array([_mismatch(E, qn, p, m, grid, False, convention) for E in es])
    h = lambda E: _mismatch(E, qn, p, m, grid, True, convention)  # noqa: E731
    out = []
    for a, b, ha, hb in zip(es[:-1], es[1:], hs[:-1], hs[1:]):
        if not (math.isfinite(ha) and math.isfinite(hb)) or ha * hb > 0:
            continue
        fa, fb = h(a), h(b)
        if not (math.isfinite(fa) and math.isfinite(fb)):
            continue
        if fa * fb > 0:
            # extrapolation moved the crossing out of this cell; widen by one cell
            step = b - a
            a2, b2 = max(window[0], a - step), min(window[1], b + step)
            fa, fb, a, b = h(a2), h(b2), a2, b2
            if fa * fb > 0:
                continue
        try:
            out.append(float(brentq(h, a, b, xtol=xtol, rtol=1e-14, maxiter=100)))
        except RuntimeError as exc:
            raise NonConvergence(f"self-consistency iteration failed on [{a}, {b}]") from exc
    return sorted(out)


def oracle_eigenvector(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    grid: RadialGrid | None = None,
    convention: str = "derived",
) -> tuple[np.ndarray, np.ndarray]:
    """(r, u) for the n-th eigenvector at frozen E; u is L2-normalized with u > 0 near the start."""
    grid = grid or RadialGrid.default(p)
    grid.validate(p)
    om = omega_coeffs(E, qn, p, m, convention)
    x = grid.nodes()
    d, e = _tridiagonal(_potential_x(x, om, p), x[1] - x[0])
    _, vec = eigh_tridiagonal(d, e, select="i", select_range=(qn.n, qn.n))
    u = vec[:, 0] / math.sqrt(x[1] - x[0])
    first = u[np.argmax(np.abs(u) > 1e-6 * np.abs(u).max())]
    if first < 0:
        u = -u
    return x + singular_point(p), u


def node_count(u: np.ndarray, floor: float = 1e-10) -> int:
    """Sign changes of u, ignoring values below floor * max|u|."""
    s = np.sign(u[np.abs(u) > floor * np.abs(u).max()])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def tail_ratio(u: np.ndarray) -> float:
    """|u| at the outer edge relative to its peak; above 1e-8 flags a box-biased level."""
    return float(abs(u[-1]) / np.abs(u).max())


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x."""
    count = 0
    qv = diag[0] - x
    if qv < 0:
        count += 1
    for i in range(1, len(diag)):
        if qv == 0:
            qv = 1e-300
        qv = diag[i] - x - off[i - 1] ** 2 / qv
        if qv < 0:
            count += 1
    return count


def oracle_phase_shift(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    grid: RadialGrid | None = None,
    match_at: tuple[float, float] = (15.0, 16.0),
    convention: str = "derived",
    rtol: float = 1e-11,
) -> float:
    """Phase shift in [0, pi) from outward integration and asymptotic matching.

    The solution behaves as sin(k r + delta - pi/2 (l + (D-3)/2)) at large r;
    delta is read off from atan2(k u, u') at alpha r = 15 and 16.
    """
    om = omega_coeffs(E, qn, p, m, convention)
    k2 = E * E - m.m0 * m.m0 - om.omega3
    if k2 <= 0:
        raise BelowThreshold(f"E = {E} is inside the gap (k^2 = {k2:.6g})")
    k = math.sqrt(k2)
    c = inverse_square_strength(om, p)
    if c < -0.25:
        raise ParameterError("effective potential falls to the centre")
    lam = 0.5 + math.sqrt(0.25 + c)
    x0 = grid.r_min if grid is not None else 1e-6 / p.alpha
    et = E * E - m.m0 * m.m0

    def rhs(x, y):
        return [y[1], (float(_potential_x(x, om, p)) - et) * y[0]]

    xs = [t / p.alpha for t in match_at]
    sol = solve_ivp(rhs, (x0, xs[-1]), [x0**lam, lam * x0 ** (lam - 1.0)], method="DOP853",
                    rtol=rtol, atol=1e-14 * x0**lam, t_eval=xs)
    if not sol.success:
        raise NonConvergence(f"outward integration failed: {sol.message}")
    rs = singular_point(p)
    offset = 0.5 * math.pi * (qn.l + 0.5 * (qn.D - 3))
    deltas = []
    for x, u, du in zip(sol.t, sol.y[0], sol.y[1]):
        deltas.append((math.atan2(k * u, du) - k * (x + rs) + offset) % math.pi)
    gap = abs(deltas[0] - deltas[1])
    gap = min(gap, math.pi - gap)
    if gap > 1e-3:
        raise MatchError(f"matching radii disagree by {gap:.3g} rad")
    return deltas[1]


def _exact_centrifugal_potential(om: OmegaCoefficients, qn: QuantumNumbers, p: PotentialParams):
    rs = singular_point(p)

    def v(x):
        r = x + rs
        y = np.exp(-2.0 * p.alpha * r)
        d = -np.expm1(-2.0 * p.alpha * x)
        approx = 4.0 * qn.gamma * p.alpha**2 * y / d**2
        return _potential_x(x, om, p) - approx + qn.gamma / r**2

    return v


def exact_centrifugal_energies(
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    guesses: list[float],
    points: int = 20000,
    convention: str = "derived",
) -> list[float | None]:
    """Self-consistent energies with the centrifugal term restored to gamma/r^2.

    Report-only; the domain is r > 0 (Dirichlet at r = 0), which differs from
    the approximated problem when q != 1.  Each guess seeds a local search.
    """
    if p.q != 1.0:
        raise ParameterError("exact-centrifugal comparison is defined for q = 1")
    grid = RadialGrid(1e-6 / p.alpha, 14.0 / p.alpha, points)

    def h(E):
        om = omega_coeffs(E, qn, p, m, convention)
        lv = levels_for_potential(_exact_centrifugal_potential(om, qn, p), grid, qn.n + 1)
        return lv[qn.n] - (E * E - m.m0 * m.m0)

    upper, lower = continuum_edges(p, m)
    out: list[float | None] = []
    for g0 in guesses:
        step = 1e-3 * (upper - lower)
        found = None
        a, fa = g0, h(g0)
        for _ in range(60):
            for b in (a - step, a + step):
                if not lower < b < upper:
                    continue
                fb = h(b)
                if fa * fb <= 0:
                    found = brentq(h, min(a, b), max(a, b), xtol=1e-10)
                    break
            if found is not None:
                break
            step *= 1.6
        out.append(found)
    return out
