"""Bound states from the supersymmetric factorization of the effective equation.

The radial Klein-Gordon problem, after the exponential centrifugal
approximation, becomes

    -F'' + (w1 y^2 + w2 y + w3) / (1 - q y)^2 F = Et F,   y = exp(-2 alpha r),

with energy-dependent coefficients w1..w3 and Et = E^2 - m0^2.  The
superpotential W = P + Q y/(1 - q y) solves the associated Riccati equation;
shape invariance under Q -> Q - 2 alpha q gives every level, and the
resulting condition on E is solved numerically.

Wavefunctions live on the natural domain r > ln(q)/(2 alpha), where the
effective potential is regular; for q < 1 that extends below r = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import (
    BranchError,
    DegenerateError,
    DomainError,
    InvariantError,
    NonConvergence,
    ParameterError,
)
from .potential import MassParams, PotentialParams, continuum_edges, singular_point
from .specfun import jacobi_poly

OMEGA_CONVENTIONS = ("derived", "printed")


@dataclass(frozen=True)
class QuantumNumbers:
    n: int = 0
    l: int = 0
    D: int = 3

    def __post_init__(self):
        for name, lo in (("n", 0), ("l", 0), ("D", 1)):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < lo:
                raise ParameterError(f"{name} must be an integer >= {lo}, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def gamma(self) -> float:
        """Centrifugal constant (D + 2l - 1)(D + 2l - 3)/4; depends on D + 2l only."""
        k = self.D + 2 * self.l
        return (k - 1) * (k - 3) / 4.0


@dataclass(frozen=True)
class OmegaCoefficients:
    omega1: float
    omega2: float
    omega3: float
    gamma: float


@dataclass(frozen=True)
class SusyFactors:
    P: float
    Q: float
    branch: str = "minus"


@dataclass(frozen=True)
class ChiCoefficients:
    chi1: float
    chi2: float
    chi3: float

    @property
    def origin_radicand(self) -> float:
        """1/4 + chi1 - chi2 + chi3."""
        return 0.25 + self.chi1 - self.chi2 + self.chi3


@dataclass(frozen=True)
class SearchWindow:
    """Energy search settings for the bound-state solver.

    ``E_min``/``E_max`` default to the continuum gap shrunk by ``shrink``.
    """

    E_min: float | None = None
    E_max: float | None = None
    grid_points: int = 400
    tol: float = 1e-12
    shrink: float = 1e-3

    def __post_init__(self):
        if self.grid_points < 100:
            raise ParameterError("grid_points must be >= 100")
        if not self.tol > 0:
            raise ParameterError("tol must be positive")

    def bounds(self, p: PotentialParams, m: MassParams) -> tuple[float, float]:
        upper, lower = continuum_edges(p, m)
        half = 0.5 * (upper - lower)
        mid = 0.5 * (upper + lower)
        lo = self.E_min if self.E_min is not None else mid - (1.0 - self.shrink) * half
        hi = self.E_max if self.E_max is not None else mid + (1.0 - self.shrink) * half
        if not hi > lo:
            raise ParameterError(f"empty search window ({lo}, {hi})")
        return lo, hi


@dataclass(frozen=True)
class BoundState:
    energy: float
    qn: QuantumNumbers
    omegas: OmegaCoefficients
    chis: ChiCoefficients
    sigma: float
    factors: SusyFactors = field(repr=False)
    params: PotentialParams = field(repr=False)
    mass: MassParams = field(repr=False)
    convention: str = "derived"
    residual: float = 0.0

    @cached_property
    def log_norm(self) -> float:
        return _log_norm(self)


def omega_coeffs(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    convention: str = "derived",
) -> OmegaCoefficients:
    """Coefficients of y^2, y, 1 in the numerator of the effective potential.

    ``derived`` expands (E - V)^2 - (m + S)^2 directly; ``printed`` is the
    published coefficient table, which differs whenever V1 or S1 is nonzero
    (it does not reproduce the asymptotic dispersion relation).
    """
    g = qn.gamma
    q, a = p.q, p.alpha
    m0, m1 = m.m0, m.m1
    V0, V1, S0, S1 = p.V0, p.V1, p.S0, p.S1
    if convention == "derived":
        A, B = V1, q * V1 - V0
        C, Dd = m1 + S1, q * S1 - S0
        w3 = 2 * E * A - A * A + 2 * m0 * C + C * C
        w2 = 2 * E * (B - q * A) - 2 * A * B + 2 * m0 * (Dd - q * C) + 2 * C * Dd + 4 * g * a * a
        w1 = -2 * E * q * B - B * B - 2 * m0 * q * Dd + Dd * Dd
    elif convention == "printed":
        w1 = (2 * m0 * S0 * q - 2 * m0 * S1 * q**2 + 2 * E * V0 * q - 2 * E * V1 * q**2
              + S0**2 + S1**2 * q**2 - V0**2 + V1**2 * q**2)
        w2 = (-2 * m0 * S0 - 2 * m1 * S0 + 2 * m1 * S1 * q - 2 * E * V0 - 2 * S0 * S1 * q
              + 2 * S1**2 * q + 2 * V0 * V1 * q + 2 * V1**2 * q - 2 * m0 * m1 * q + 4 * g * a * a)
        w3 = (2 * m1 * S1 + 2 * m0 * S1 + 2 * E * V1 - 2 * S0 * S1 + S1**2 + 2 * V0 * V1
              + V1**2 + 2 * m0 * m1 + m1**2)
    else:
        raise ParameterError(f"unknown omega convention {convention!r}")
    return OmegaCoefficients(float(w1), float(w2), float(w3), g)


def discriminant(om: OmegaCoefficients, p: PotentialParams) -> float:
    """1 + (w1 + w2 q + w3 q^2)/(alpha q)^2; its root sets the origin exponent."""
    q, a = p.q, p.alpha
    return 1.0 + (om.omega1 + om.omega2 * q + om.omega3 * q * q) / (a * a * q * q)


def p_of_rho(rho: float, om: OmegaCoefficients, q: float) -> float:
    """Asymptotic value of the superpotential for Q = rho."""
    if rho == 0:
        raise DegenerateError("rho = 0: superpotential is undefined")
    return (rho * rho - om.omega1 + om.omega3 * q * q) / (2.0 * q * rho)


def susy_factors(om: OmegaCoefficients, p: PotentialParams, branch: str = "minus") -> SusyFactors:
    """Solve the Riccati matching conditions for (P, Q).

    ``minus`` gives Q = -alpha q (1 + sqrt(disc)), the branch whose ground
    state behaves as (r - r_s)^lambda1 with lambda1 > 1/2 at the singular
    point; ``plus`` is kept for completeness.
    """
    disc = discriminant(om, p)
    if disc < 0:
        raise BranchError(f"negative discriminant {disc:.6g}: no real superpotential")
    s = math.sqrt(disc)
    if branch == "minus":
        Q = p.alpha * p.q * (-1.0 - s)
    elif branch == "plus":
        Q = p.alpha * p.q * (-1.0 + s)
    else:
        raise ParameterError(f"unknown branch {branch!r}")
    if Q == 0:
        raise DegenerateError("Q = 0 on the plus branch (disc = 1)")
    return SusyFactors(p_of_rho(Q, om, p.q), Q, branch)


def _natural(r, p: PotentialParams):
    r = np.asarray(r, dtype=float)
    if np.any(r <= singular_point(p)):
        raise DomainError(f"r must exceed the singular point {singular_point(p):g}")
    y = np.exp(-2.0 * p.alpha * r)
    d = -np.expm1(math.log(p.q) - 2.0 * p.alpha * r)
    return y, d


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def superpotential(r, f: SusyFactors, p: PotentialParams):
    """W(r) = P + Q y/(1 - q y)."""
    y, d = _natural(r, p)
    return _out(f.P + f.Q * y / d)


def superpotential_derivative(r, f: SusyFactors, p: PotentialParams):
    """W'(r) = -2 alpha Q y/(1 - q y)^2."""
    y, d = _natural(r, p)
    return _out(-2.0 * p.alpha * f.Q * y / (d * d))


def partner_potentials(r, f: SusyFactors, p: PotentialParams):
    """(V+, V-) = (W^2 + W', W^2 - W'); V- is the original effective problem."""
    w = np.asarray(superpotential(r, f, p))
    dw = np.asarray(superpotential_derivative(r, f, p))
    return _out(w * w + dw), _out(w * w - dw)


def effective_potential(r, om: OmegaCoefficients, p: PotentialParams):
    """(w1 y^2 + w2 y + w3)/(1 - q y)^2."""
    y, d = _natural(r, p)
    return _out((om.omega1 * y * y + om.omega2 * y + om.omega3) / (d * d))


def ground_level(f: SusyFactors, om: OmegaCoefficients) -> float:
    """Et_0 = w3 - P^2."""
    return om.omega3 - f.P * f.P


def riccati_residual(r, f: SusyFactors, om: OmegaCoefficients, p: PotentialParams):
    """W^2 - W' - (V_eff - Et_0); zero when (P, Q) solve the Riccati equation."""
    _, vminus = partner_potentials(r, f, p)
    return _out(np.asarray(vminus) - (np.asarray(effective_potential(r, om, p)) - ground_level(f, om)))


def rho(k: int, f: SusyFactors, p: PotentialParams) -> float:
    """rho_k = Q - 2 alpha q k."""
    return f.Q - 2.0 * p.alpha * p.q * k


def shape_invariance_remainder(k: int, f: SusyFactors, om: OmegaCoefficients, p: PotentialParams) -> float:
    """R(rho_k) = P(rho_{k-1})^2 - P(rho_k)^2."""
    if k < 1 or int(k) != k:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    a, b = rho(k - 1, f, p), rho(k, f, p)
    if a == 0 or b == 0:
        raise DegenerateError(f"rho vanishes at step {k}")
    return p_of_rho(a, om, p.q) ** 2 - p_of_rho(b, om, p.q) ** 2


def shifted_factors(k: int, f: SusyFactors, om: OmegaCoefficients, p: PotentialParams) -> SusyFactors:
    """Superpotential parameters after k shape-invariance steps."""
    r = rho(k, f, p)
    return SusyFactors(p_of_rho(r, om, p.q), r, f.branch)


def level_from_factors(n: int, f: SusyFactors, om: OmegaCoefficients, p: PotentialParams) -> float:
    """Et_n = w3 - P(rho_n)^2."""
    return om.omega3 - p_of_rho(rho(n, f, p), om, p.q) ** 2


def energy_residual(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    convention: str = "derived",
    branch: str = "minus",
) -> float:
    """g(E) = w3 - P(rho_n)^2 - (E^2 - m0^2); bound states are roots."""
    om = omega_coeffs(E, qn, p, m, convention)
    f = susy_factors(om, p, branch)
    return level_from_factors(qn.n, f, om, p) - (E * E - m.m0 * m.m0)


def sigma_value(om: OmegaCoefficients, p: PotentialParams) -> float:
    """sigma = (q/2)(1 + sqrt(disc)), so that rho_n = -2 alpha (q n + sigma)."""
    disc = discriminant(om, p)
    if disc < 0:
        raise BranchError(f"negative discriminant {disc:.6g}")
    return 0.5 * p.q * (1.0 + math.sqrt(disc))


def energy_residual_sigma(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    convention: str = "derived",
) -> float:
    """Closed form written with sigma: an independent algebraic route to g(E)."""
    om = omega_coeffs(E, qn, p, m, convention)
    s = p.q * qn.n + sigma_value(om, p)
    a, q = p.alpha, p.q
    bracket = (om.omega3 * q * q - om.omega1) / (2.0 * a * s) + 2.0 * a * s
    return -bracket * bracket / (4.0 * q * q) + om.omega3 - (E * E - m.m0 * m.m0)


def ground_residual_linear(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    convention: str = "derived",
) -> float:
    """Ground-state condition with P taken from the linear-in-y Riccati balance.

    The y coefficient gives 2 P Q = w2 + 2 q w3 - 2 alpha Q, an alternative to
    the y^2 balance used by ``susy_factors``.
    """
    om = omega_coeffs(E, qn, p, m, convention)
    Q = susy_factors(om, p).Q
    P = (om.omega2 + 2.0 * p.q * om.omega3 - 2.0 * p.alpha * Q) / (2.0 * Q)
    return om.omega3 - P * P - (E * E - m.m0 * m.m0)


def chi_coeffs(
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    convention: str = "derived",
) -> ChiCoefficients:
    """Coefficients of the hypergeometric form in z = q y.

    chi2 is assembled from the full w2 so that 1/4 + chi1 - chi2 + chi3
    equals disc/4 for every parameter set.
    """
    om = omega_coeffs(E, qn, p, m, convention)
    return chi_from_omega(E, om, p, m)


def chi_from_omega(E: float, om: OmegaCoefficients, p: PotentialParams, m: MassParams) -> ChiCoefficients:
    a2 = 4.0 * p.alpha**2
    et = E * E - m.m0 * m.m0
    q = p.q
    chi1 = (om.omega1 - et * q * q) / (a2 * q * q)
    chi2 = -om.omega2 / (a2 * q) - 2.0 * et / a2
    chi3 = (om.omega3 - et) / a2
    return ChiCoefficients(chi1, chi2, chi3)


def _physical(E, qn, p, m, convention, branch) -> bool:
    om = omega_coeffs(E, qn, p, m, convention)
    f = susy_factors(om, p, branch)
    r = rho(qn.n, f, p)
    return r != 0 and p_of_rho(r, om, p.q) > 0


def _safe(fn, E):
    try:
        return fn(E)
    except (BranchError, DegenerateError):
        return math.nan


def solve_bound_energies(
    qn: QuantumNumbers,
    p: PotentialParams,
    m: MassParams,
    search: SearchWindow | None = None,
    convention: str = "derived",
    branch: str = "minus",
) -> list[BoundState]:
    """All bound energies for one (n, l, D) inside the search window.

    Sign changes of ``energy_residual`` on a uniform grid are refined with
    Brent's method.  A root is kept only if P(rho_n) > 0 (normalizable tail);
    poles of the residual (rho_n = 0) are rejected by the residual check.
    """
    search = search or SearchWindow()
    lo, hi = search.bounds(p, m)
    g = lambda E: energy_residual(E, qn, p, m, convention, branch)  # noqa: E731
    grid = np.linspace(lo, hi, search.grid_points)
    vals = np.array([_safe(g, E) for E in grid])
    out: list[BoundState] = []
    for i in range(len(grid) - 1):
        a, b, ga, gb = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if not (math.isfinite(ga) and math.isfinite(gb)):
            continue
        if ga == 0.0:
            E = a
        elif ga * gb < 0:
            try:
                E = brentq(g, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            except RuntimeError as exc:  # pragma: no cover - brentq on a valid bracket
                raise NonConvergence(f"refinement failed on [{a}, {b}]") from exc
        else:
            continue
        res = g(E)
        scale = max(1.0, E * E, abs(omega_coeffs(E, qn, p, m, convention).omega3))
        # a sign change across a pole of the residual leaves |g| large
        if abs(res) > max(search.tol, 1e-8) * scale:
            continue
        if not _physical(E, qn, p, m, convention, branch):
            continue
        out.append(make_bound_state(E, qn, p, m, convention, branch, res))
    out.sort(key=lambda s: s.energy)
    return out


def make_bound_state(E, qn, p, m, convention="derived", branch="minus", residual=0.0) -> BoundState:
    om = omega_coeffs(E, qn, p, m, convention)
    f0 = susy_factors(om, p, branch)
    fn = shifted_factors(qn.n, f0, om, p)
    return BoundState(
        energy=float(E),
        qn=qn,
        omegas=om,
        chis=chi_from_omega(E, om, p, m),
        sigma=sigma_value(om, p),
        factors=fn,
        params=p,
        mass=m,
        convention=convention,
        residual=float(residual),
    )


def _exponents(state: BoundState) -> tuple[float, float]:
    c = state.chis
    if c.chi3 <= 0:
        raise InvariantError(f"chi3 = {c.chi3:.6g} <= 0: tail does not decay")
    if c.origin_radicand <= 0:
        raise InvariantError(f"1/4 + chi1 - chi2 + chi3 = {c.origin_radicand:.6g} <= 0")
    return math.sqrt(c.chi3), math.sqrt(c.origin_radicand)


def _log_abs_unnormalized(r, state: BoundState):
    """log|U| and sign(U) before normalization."""
    p = state.params
    s3, s0 = _exponents(state)
    r = np.asarray(r, dtype=float)
    if np.any(r <= singular_point(p)):
        raise DomainError(f"r must exceed the singular point {singular_point(p):g}")
    log_qy = math.log(p.q) - 2.0 * p.alpha * r
    qy = np.exp(log_qy)
    log_d = np.log(-np.expm1(log_qy))
    jac = np.asarray(jacobi_poly(state.qn.n, 2.0 * s3, 2.0 * s0, 1.0 - 2.0 * qy))
    with np.errstate(divide="ignore"):
        log_abs = s3 * log_qy + (0.5 + s0) * log_d + np.log(np.abs(jac))
    return log_abs, np.sign(jac)


def _log_norm(state: BoundState) -> float:
    p = state.params
    rs = singular_point(p)
    s3, s0 = _exponents(state)
    kappa = 2.0 * p.alpha * s3  # tail decay rate
    # far edge where the tail is below exp(-60) of the bulk
    x_far = (60.0 + 2.0 * state.qn.n * math.log(10.0)) / kappa + 10.0 / p.alpha
    # log-scale shift keeps the integrand O(1)
    probe = rs + np.linspace(1e-3, 1.0, 400) * min(x_far, 40.0 / p.alpha)
    la, _ = _log_abs_unnormalized(probe, state)
    shift = float(np.max(la))

    def integrand(r):
        la, _ = _log_abs_unnormalized(r, state)
        return float(np.exp(2.0 * (la - shift)))

    edges = rs + np.concatenate(([0.0], np.geomspace(1e-6, 1.0, 7) * x_far))
    total = 0.0
    for x0, x1 in zip(edges[:-1], edges[1:]):
        # QUADPACK never evaluates the endpoints, so the singular point is safe
        total += quad(integrand, x0, x1, epsabs=0.0, epsrel=1e-11, limit=200)[0]
    return -shift - 0.5 * math.log(total)


def bound_wavefunction(r, state: BoundState):
    """Normalized U(r) = N (q y)^sqrt(chi3) (1 - q y)^(1/2 + sqrt(1/4 + chi1 - chi2 + chi3))
    P_n^(2 sqrt(chi3), 2 sqrt(1/4 + chi1 - chi2 + chi3))(1 - 2 q y)."""
    la, sign = _log_abs_unnormalized(r, state)
    return _out(sign * np.exp(la + state.log_norm))


def wavefunction_nodes(state: BoundState, points: int = 5000) -> int:
    """Sign changes of U on a grid spanning the natural domain."""
    p = state.params
    rs = singular_point(p)
    kappa = 2.0 * p.alpha * _exponents(state)[0]
    x_far = 40.0 / kappa + 10.0 / p.alpha
    r = rs + np.linspace(x_far / points, x_far, points)
    la, sign = _log_abs_unnormalized(r, state)
    keep = la - la.max() > -600
    s = sign[keep]
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))
