"""Scattering states: hypergeometric wavefunction, phase shift, normalization, poles.

With k^2 = E^2 - m0^2 - w3 > 0 the regular solution is

    F(r) = N (1 - q y)^lambda1 (q y)^(-i k/(2 alpha)) 2F1(eta1, eta2; eta3; 1 - q y),

eta1,2 = lambda1 - i k/(2 alpha) +/- sqrt(Xi3), eta3 = 2 lambda1, and
F -> 2 sin(k r + delta - pi/2 (l + (D-3)/2)) as r -> infinity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bound import QuantumNumbers, SearchWindow, chi_from_omega, omega_coeffs
from .errors import BelowThreshold, DomainError, ParameterError
from .potential import MassParams, PotentialParams, continuum_edges, singular_point
from .specfun import hyp2f1_complement, log_gamma

ETA_VARIANTS = ("derived", "printed")


def threshold_energy(p: PotentialParams, m: MassParams) -> tuple[float, float]:
    """Continuum edges (E+, E-) = V1 +/- |m0 + m1 + S1|."""
    return continuum_edges(p, m)


@dataclass(frozen=True)
class XiCoefficients:
    """Parameters of the hypergeometric equation in x = 1 - q y.

    xi1 = chi2 - chi3 - chi1 (so 1 - 4 xi1 = disc), xi2 = -chi3 = k^2/(4 alpha^2),
    xi3 = chi1.
    """

    xi1: float
    xi2: float
    xi3: float


@dataclass(frozen=True)
class ScatteringState:
    energy: float
    k: float
    eta1: complex
    eta2: complex
    eta3: complex
    lambda1: float
    lambda2: complex
    delta: float
    delta_raw: float
    norm: float


def xi_coeffs(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
              convention: str = "derived") -> XiCoefficients:
    om = omega_coeffs(E, qn, p, m, convention)
    c = chi_from_omega(E, om, p, m)
    return XiCoefficients(c.chi2 - c.chi3 - c.chi1, -c.chi3, c.chi1)


def wave_number(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                convention: str = "derived") -> float:
    """k = sqrt(4 alpha^2 xi2)."""
    xi2 = xi_coeffs(E, qn, p, m, convention).xi2
    if xi2 <= 0:
        raise BelowThreshold(f"E = {E} does not propagate (xi2 = {xi2:.6g})")
    return math.sqrt(4.0 * p.alpha**2 * xi2)


def dispersion_wave_number(E: float, p: PotentialParams, m: MassParams) -> float:
    """Asymptotic dispersion sqrt((E - V1)^2 - (m0 + m1 + S1)^2)."""
    k2 = (E - p.V1) ** 2 - (m.m0 + m.m1 + p.S1) ** 2
    if k2 <= 0:
        raise BelowThreshold(f"E = {E} is inside the gap")
    return math.sqrt(k2)


def lambda1_of(xi: XiCoefficients) -> float:
    r = 1.0 - 4.0 * xi.xi1
    if r < 0:
        raise ParameterError(f"1 - 4 xi1 = {r:.6g} < 0: fall-to-centre regime, lambda1 is complex")
    return 0.5 * (1.0 + math.sqrt(r))


def eta_params(xi: XiCoefficients, k: float, alpha: float, variant: str = "derived"):
    """(eta1, eta2, eta3).

    ``derived``: eta1,2 = lambda1 - i k/(2 alpha) +/- sqrt(xi3), so that
    eta3 - eta1 - eta2 = i k/alpha.  ``printed`` uses i k/alpha in eta1,2,
    which does not solve the radial equation; it is kept for comparison.
    """
    lam = lambda1_of(xi)
    s = cmath.sqrt(xi.xi3)
    if variant == "derived":
        nu = 0.5 * k / alpha
    elif variant == "printed":
        nu = k / alpha
    else:
        raise ParameterError(f"unknown eta variant {variant!r}")
    return lam - 1j * nu + s, lam - 1j * nu - s, complex(2.0 * lam)


def _reduce(delta: float) -> float:
    """Map to (-pi, pi]."""
    d = math.remainder(delta, 2.0 * math.pi)
    return math.pi if d == -math.pi else d


def _state_parts(E, qn, p, m, variant, convention):
    k = wave_number(E, qn, p, m, convention)
    xi = xi_coeffs(E, qn, p, m, convention)
    e1, e2, e3 = eta_params(xi, k, p.alpha, variant)
    return k, xi, e1, e2, e3


def phase_shift_parts(E, qn, p, m, variant="derived", convention="derived") -> dict:
    """Individual terms of the phase shift (radians, unreduced)."""
    k, _, e1, e2, e3 = _state_parts(E, qn, p, m, variant, convention)
    terms = {
        "offset": 0.5 * math.pi * (qn.l + 0.5 * (qn.D - 1)),
        "arg_gamma_sum": log_gamma(e3 - e1 - e2).imag,
        "arg_gamma_1": -log_gamma(e3 - e1).imag,
        "arg_gamma_2": -log_gamma(e3 - e2).imag,
    }
    if variant == "derived":
        terms["deformation"] = -0.5 * k / p.alpha * math.log(p.q)
        terms["ln2"] = 0.0
    else:
        terms["deformation"] = -k / p.alpha * math.log(p.q)
        terms["ln2"] = -k * math.log(2.0) / p.alpha
    return terms


def phase_shift(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                raw: bool = False, variant: str = "derived", convention: str = "derived") -> float:
    """Phase shift delta in (-pi, pi], or the unreduced sum when ``raw``.

    ``variant="printed"`` adds -k ln2/alpha and uses the printed eta
    parameters; it disagrees with direct integration and is exposed only for
    comparison reports.
    """
    total = sum(phase_shift_parts(E, qn, p, m, variant, convention).values())
    return total if raw else _reduce(total)


def scatter_normalization(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                          convention: str = "derived") -> float:
    """N = |Gamma(eta3 - eta1) Gamma(eta3 - eta2)| / (Gamma(eta3) |Gamma(i k/alpha)|)."""
    _, _, e1, e2, e3 = _state_parts(E, qn, p, m, "derived", convention)
    log_n = (log_gamma(e3 - e1).real + log_gamma(e3 - e2).real
             - log_gamma(e3).real - log_gamma(e3 - e1 - e2).real)
    return math.exp(log_n)


def scattering_state(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                     convention: str = "derived") -> ScatteringState:
    k, xi, e1, e2, e3 = _state_parts(E, qn, p, m, "derived", convention)
    raw = phase_shift(E, qn, p, m, raw=True, convention=convention)
    return ScatteringState(
        energy=E, k=k, eta1=e1, eta2=e2, eta3=e3,
        lambda1=lambda1_of(xi), lambda2=-0.5j * k / p.alpha,
        delta=_reduce(raw), delta_raw=raw,
        norm=scatter_normalization(E, qn, p, m, convention),
    )


def scattering_wavefunction(r, E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                            convention: str = "derived"):
    """Normalized regular solution F(r); real up to rounding."""
    st = scattering_state(E, qn, p, m, convention)
    rs = singular_point(p)
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= rs):
        raise DomainError(f"r must exceed the singular point {rs:g}")
    out = np.empty(r_arr.shape, dtype=complex)
    for i, ri in enumerate(r_arr):
        log_qy = math.log(p.q) - 2.0 * p.alpha * ri
        x = -math.expm1(log_qy)
        f = hyp2f1_complement(st.eta1, st.eta2, st.eta3, math.exp(log_qy), log_w=log_qy)
        out[i] = st.norm * cmath.exp(st.lambda1 * math.log(x) + st.lambda2 * log_qy) * f
    return complex(out[0]) if np.ndim(r) == 0 else out


def scattering_asymptote(r, E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                         convention: str = "derived"):
    """2 sin(k r + delta - pi/2 (l + (D-3)/2))."""
    k = wave_number(E, qn, p, m, convention)
    d = phase_shift(E, qn, p, m, raw=True, convention=convention)
    r = np.asarray(r, dtype=float)
    val = 2.0 * np.sin(k * r + d - 0.5 * math.pi * (qn.l + 0.5 * (qn.D - 3)))
    return float(val) if val.ndim == 0 else val


def pole_residual(E: float, qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                  convention: str = "derived") -> float:
    """eta2 + n with k = i kappa: lambda1 + kappa/(2 alpha) - sqrt(xi3) + n.

    Requires kappa^2 = w3 - (E^2 - m0^2) > 0 and xi3 >= 0; NaN otherwise.
    """
    om = omega_coeffs(E, qn, p, m, convention)
    kappa2 = om.omega3 - (E * E - m.m0 * m.m0)
    if kappa2 <= 0:
        return math.nan
    xi = xi_coeffs(E, qn, p, m, convention)
    if xi.xi3 < 0 or 1.0 - 4.0 * xi.xi1 < 0:
        return math.nan
    return lambda1_of(xi) + math.sqrt(kappa2) / (2.0 * p.alpha) - math.sqrt(xi.xi3) + qn.n


def smatrix_pole_energies(qn: QuantumNumbers, p: PotentialParams, m: MassParams,
                          search: SearchWindow | None = None,
                          convention: str = "derived") -> list[float]:
    """Real energies in the gap where Gamma(eta2) has a pole at order n."""
    search = search or SearchWindow()
    lo, hi = search.bounds(p, m)
    f = lambda E: pole_residual(E, qn, p, m, convention)  # noqa: E731
    grid = np.linspace(lo, hi, search.grid_points)
    vals = np.array([f(E) for E in grid])
    out = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if not (math.isfinite(fa) and math.isfinite(fb)):
            continue
        if fa == 0:
            out.append(float(a))
        elif fa * fb < 0:
            out.append(float(brentq(f, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)))
    return out


# --- special cases ---------------------------------------------------------


@dataclass(frozen=True)
class HulthenParams:
    """-V0 exp(-alpha r)/(1 - q exp(-alpha r)); alpha is the Hulthen screening."""

    V0: float
    q: float = 1.0
    alpha: float = 0.2

    def general(self) -> PotentialParams:
        return PotentialParams(V0=self.V0, q=self.q, alpha=0.5 * self.alpha)


@dataclass(frozen=True)
class WoodsSaxonParams:
    """V0/(1 - exp((r - theta)/R)), the singular-at-theta Woods-Saxon form."""

    V0: float
    R: float
    theta: float

    def __post_init__(self):
        if not self.R > 0:
            raise ParameterError("R must be positive")

    def hulthen(self) -> HulthenParams:
        q = math.exp(self.theta / self.R)
        return HulthenParams(V0=self.V0 * q, q=q, alpha=1.0 / self.R)

    def potential(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= self.theta):
            raise DomainError(f"r must exceed theta = {self.theta:g}")
        v = self.V0 / -np.expm1((r - self.theta) / self.R)
        return float(v) if v.ndim == 0 else v


def _general_pair(p: PotentialParams, E, qn, m0):
    m = MassParams(m0, 0.0)
    return phase_shift(E, qn, p, m), scatter_normalization(E, qn, p, m)


def _closed_pair(E, qn, m0, k, lam, xi3, beta, log_q):
    """Shared gamma bookkeeping of the Hulthen and Woods-Saxon closed forms."""
    s = cmath.sqrt(xi3)
    nu = k / beta
    a1 = lam + 1j * nu - s
    a2 = lam + 1j * nu + s
    delta = (0.5 * math.pi * (qn.l + 0.5 * (qn.D - 1)) + log_gamma(2j * nu).imag
             - log_gamma(a1).imag - log_gamma(a2).imag - nu * log_q)
    log_n = log_gamma(a1).real + log_gamma(a2).real - log_gamma(2.0 * lam).real - log_gamma(2j * nu).real
    return _reduce(delta), math.exp(log_n)


def hulthen_closed_form(ph: HulthenParams, E: float, qn: QuantumNumbers, m0: float = 1.0):
    """(delta, N) written directly in the Hulthen variables."""
    beta, q, V0 = ph.alpha, ph.q, ph.V0
    k2 = E * E - m0 * m0
    if k2 <= 0:
        raise BelowThreshold(f"E = {E} is below the Hulthen threshold {abs(m0)}")
    k = math.sqrt(k2)
    disc = 1.0 - 4.0 * V0 * V0 / (q * q * beta * beta) + 4.0 * qn.gamma / q
    if disc < 0:
        raise ParameterError("fall-to-centre regime: 1 - 4 V0^2/(q beta)^2 + 4 gamma/q < 0")
    lam = 0.5 * (1.0 + math.sqrt(disc))
    xi3 = (2.0 * E * V0 / q - V0 * V0 / (q * q) - k2) / beta**2
    return _closed_pair(E, qn, m0, k, lam, xi3, beta, math.log(q))


def woods_saxon_closed_form(ws: WoodsSaxonParams, E: float, qn: QuantumNumbers, m0: float = 1.0):
    """(delta, N) written directly in the Woods-Saxon variables (V0, R, theta)."""
    R, V0 = ws.R, ws.V0
    k2 = E * E - m0 * m0
    if k2 <= 0:
        raise BelowThreshold(f"E = {E} is below threshold {abs(m0)}")
    k = math.sqrt(k2)
    disc = 1.0 - 4.0 * V0 * V0 * R * R + 4.0 * qn.gamma * math.exp(-ws.theta / ws.R)
    if disc < 0:
        raise ParameterError("fall-to-centre regime for this Woods-Saxon well")
    lam = 0.5 * (1.0 + math.sqrt(disc))
    xi3 = (2.0 * E * V0 - V0 * V0 - k2) * R * R
    return _closed_pair(E, qn, m0, k, lam, xi3, 1.0 / R, ws.theta / R)


def hulthen_case(ph: HulthenParams, E: float, qn: QuantumNumbers, m0: float = 1.0) -> dict:
    """General pipeline vs the dedicated Hulthen closed form."""
    d_gen, n_gen = _general_pair(ph.general(), E, qn, m0)
    d_ded, n_ded = hulthen_closed_form(ph, E, qn, m0)
    return {"delta": d_gen, "norm": n_gen, "delta_closed": d_ded, "norm_closed": n_ded}


def woods_saxon_case(ws: WoodsSaxonParams, E: float, qn: QuantumNumbers, m0: float = 1.0) -> dict:
    """General pipeline (through the Hulthen mapping) vs the dedicated closed form."""
    d_gen, n_gen = _general_pair(ws.hulthen().general(), E, qn, m0)
    d_ded, n_ded = woods_saxon_closed_form(ws, E, qn, m0)
    return {"delta": d_gen, "norm": n_gen, "delta_closed": d_ded, "norm_closed": n_ded}


__all__ = [
    "XiCoefficients", "ScatteringState", "HulthenParams", "WoodsSaxonParams",
    "threshold_energy", "xi_coeffs", "wave_number", "dispersion_wave_number", "eta_params",
    "phase_shift", "phase_shift_parts", "scatter_normalization", "scattering_state",
    "scattering_wavefunction", "scattering_asymptote", "pole_residual", "smatrix_pole_energies",
    "hulthen_case", "woods_saxon_case", "hulthen_closed_form", "woods_saxon_closed_form",
]
