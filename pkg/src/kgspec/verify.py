"""Cross-checks between independent code paths.

Each check returns a ``Check`` record; ``gated`` checks decide the exit status
of ``kgspec verify``, the rest are informational.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from . import bound as B
from . import oracle as O
from . import scatter as S
from .bound import QuantumNumbers
from .potential import MassParams, PotentialParams, centrifugal

# Couplings of the published reference set; the panel varies q and alpha.
PANEL_COUPLINGS = dict(V0=2.0, V1=0.5, S0=0.0, S1=3.0)
PANEL_MASS = MassParams(-5.0, -0.2)
PANEL_POINTS = (
    (0.5, 0.01, (0, 0, 3)), (0.5, 0.01, (2, 1, 4)),
    (0.5, 0.1, (0, 0, 3)), (0.5, 0.1, (1, 0, 1)), (0.5, 0.1, (2, 1, 4)),
    (0.5, 0.5, (0, 0, 3)), (0.5, 0.5, (1, 0, 1)),
    (1.0, 0.01, (0, 0, 3)), (1.0, 0.01, (1, 0, 1)),
    (1.0, 0.1, (1, 0, 1)), (1.0, 0.1, (2, 1, 4)),
    (1.0, 0.5, (1, 0, 1)),
)

HULTHEN_PRESET = S.HulthenParams(V0=0.08, q=1.0, alpha=0.2)
HULTHEN_ENERGIES = tuple(np.linspace(1.05, 3.0, 10))
WOODS_SAXON_PRESET = S.WoodsSaxonParams(V0=0.1, R=2.0, theta=3.0)


@dataclass(frozen=True)
class PanelPoint:
    p: PotentialParams
    m: MassParams
    qn: QuantumNumbers

    @property
    def label(self) -> str:
        return f"q={self.p.q:g} alpha={self.p.alpha:g} (n,l,D)=({self.qn.n},{self.qn.l},{self.qn.D})"


def panel() -> list[PanelPoint]:
    return [PanelPoint(PotentialParams(q=q, alpha=a, **PANEL_COUPLINGS), PANEL_MASS, QuantumNumbers(*t))
            for q, a, t in PANEL_POINTS]


@dataclass
class Check:
    name: str
    gated: bool
    passed: bool
    value: float
    threshold: float
    detail: list = field(default_factory=list)

    def line(self) -> str:
        tag = "PASS" if self.passed else ("FAIL" if self.gated else "INFO")
        return f"[{tag}] {self.name}: worst={self.value:.3e} (threshold {self.threshold:.1e})"


def _check(name, values, threshold, gated=True, detail=None) -> Check:
    worst = float(max(values)) if len(values) else 0.0
    ok = bool(len(values)) and worst < threshold
    return Check(name, gated, ok if gated else worst < threshold, worst, threshold, detail or [])


def _riccati_grid(p: PotentialParams, points: int = 1000) -> np.ndarray:
    return np.linspace(0.01 / p.alpha, 20.0 / p.alpha, points)


def riccati_sup(E: float, pt: PanelPoint, convention: str = "derived", corrupt: bool = False) -> float:
    om = B.omega_coeffs(E, pt.qn, pt.p, pt.m, convention)
    f0 = B.susy_factors(om, pt.p)
    target = replace(om, omega2=-om.omega2) if corrupt else om
    return float(np.max(np.abs(B.riccati_residual(_riccati_grid(pt.p), f0, target, pt.p))))


def shape_invariance_stats(E: float, pt: PanelPoint, convention: str = "derived") -> tuple[float, float]:
    """(std of V+(rho0) - V-(rho1), |mean - R(rho1)|) on the Riccati grid."""
    om = B.omega_coeffs(E, pt.qn, pt.p, pt.m, convention)
    f0 = B.susy_factors(om, pt.p)
    f1 = B.shifted_factors(1, f0, om, pt.p)
    r = _riccati_grid(pt.p)
    vplus, _ = B.partner_potentials(r, f0, pt.p)
    _, vminus = B.partner_potentials(r, f1, pt.p)
    diff = np.asarray(vplus) - np.asarray(vminus)
    return float(np.std(diff)), float(abs(np.mean(diff) - B.shape_invariance_remainder(1, f0, om, pt.p)))


def _energies(pt: PanelPoint, convention="derived") -> list[float]:
    return [s.energy for s in B.solve_bound_energies(pt.qn, pt.p, pt.m, convention=convention)]


def _pairwise(a: list[float], b: list[float]) -> list[float]:
    if len(a) != len(b):
        return [math.inf]
    return [abs(x - y) for x, y in zip(a, b)]


def run_checks(
    points: list[PanelPoint],
    convention: str = "derived",
    corrupt_omega: bool = False,
    with_oracle: bool = True,
    with_scattering: bool = True,
    grid: O.RadialGrid | None = None,
) -> list[Check]:
    ric, shape_std, shape_mean, sigma, ground, degen, poles, orc = [], [], [], [], [], [], [], []
    ric_d, orc_d, degen_d, pole_d = [], [], [], []
    for pt in points:
        es = _energies(pt, convention)
        for E in es:
            v = riccati_sup(E, pt, convention, corrupt_omega)
            ric.append(v)
            ric_d.append({"point": pt.label, "E": E, "sup": v})
            s, mu = shape_invariance_stats(E, pt, convention)
            shape_std.append(s)
            shape_mean.append(mu)
            scale = max(1.0, E * E)
            sigma.append(abs(B.energy_residual_sigma(E, pt.qn, pt.p, pt.m, convention)) / scale)
            if pt.qn.n == 0:
                g = lambda x: B.ground_residual_linear(x, pt.qn, pt.p, pt.m, convention)  # noqa: E731
                h = 1e-4 * max(1.0, abs(E))
                ground.append(abs(brentq(g, E - h, E + h, xtol=1e-15) - E))
        if pt.qn.l >= 1:
            twin = QuantumNumbers(pt.qn.n, pt.qn.l - 1, pt.qn.D + 2)
            d = _pairwise(es, _energies(PanelPoint(pt.p, pt.m, twin), convention))
            degen += d
            degen_d.append({"point": pt.label, "diff": d})
        pe = S.smatrix_pole_energies(pt.qn, pt.p, pt.m, convention=convention)
        d = _pairwise(es, pe)
        poles += d
        pole_d.append({"point": pt.label, "bound": es, "poles": pe})
        if with_oracle:
            oe = O.oracle_bound_energies(pt.qn, pt.p, pt.m, grid=grid, convention=convention)
            d = [x / max(abs(e), 1e-300) for x, e in zip(_pairwise(es, oe), es)] if len(oe) == len(es) else [math.inf]
            orc += d
            orc_d.append({"point": pt.label, "analytic": es, "oracle": oe})
    checks = [
        _check("riccati residual sup-norm", ric, 1e-9, detail=ric_d),
        _check("shape invariance: r-independence (std)", shape_std, 1e-9),
        _check("shape invariance: mean equals R(rho1)", shape_mean, 1e-9),
        _check("rho route vs sigma route (|g_sigma| / max(1, E^2))", sigma, 1e-8),
        _check("n = 0: linear-balance ground root vs solver", ground, 1e-10),
        _check("pole-bound duality", poles, 1e-8, detail=pole_d),
    ]
    if degen or any(pt.qn.l >= 1 for pt in points):
        checks.append(_check("interdimensional degeneracy (l, D) -> (l-1, D+2)", degen, 1e-10, detail=degen_d))
    if with_oracle:
        checks.append(_check("analytic vs finite-difference oracle (relative)", orc, 1e-4, detail=orc_d))
    if with_scattering:
        checks += scattering_checks()
    return checks


def scattering_checks(energies=HULTHEN_ENERGIES) -> list[Check]:
    ph = HULTHEN_PRESET
    qn = QuantumNumbers(0, 0, 3)
    p, m = ph.general(), MassParams(1.0, 0.0)
    oracle_gap, printed_gap, closed_h, detail = [], [], [], []
    for E in energies:
        E = float(E)
        d = S.phase_shift(E, qn, p, m)
        do = O.oracle_phase_shift(E, qn, p, m)
        dp = S.phase_shift(E, qn, p, m, variant="printed")
        gap = abs(math.remainder(d - do, math.pi))
        pgap = abs(math.remainder(dp - do, math.pi))
        oracle_gap.append(gap)
        printed_gap.append(pgap)
        hc = S.hulthen_case(ph, E, qn)
        closed_h.append(max(abs(math.remainder(hc["delta"] - hc["delta_closed"], 2 * math.pi)),
                            abs(hc["norm"] / hc["norm_closed"] - 1.0)))
        detail.append({"E": E, "delta": d, "delta_oracle": do, "delta_printed_variant": dp,
                       "printed_terms": S.phase_shift_parts(E, qn, p, m, variant="printed")})
    closed_ws = []
    for E in energies:
        wc = S.woods_saxon_case(WOODS_SAXON_PRESET, float(E), qn)
        closed_ws.append(max(abs(math.remainder(wc["delta"] - wc["delta_closed"], 2 * math.pi)),
                             abs(wc["norm"] / wc["norm_closed"] - 1.0)))
    return [
        _check("phase shift vs matching oracle (mod pi), Hulthen preset", oracle_gap, 1e-3, detail=detail),
        _check("printed phase-shift variant (ln 2 term, eta factor) vs oracle", printed_gap, 1e-3, gated=False),
        _check("Hulthen closed form vs general pipeline", closed_h, 1e-12),
        _check("Woods-Saxon closed form vs general pipeline", closed_ws, 1e-12),
    ]


def approximation_report(points: list[PanelPoint] | None = None) -> dict:
    """Hyperbolic-vs-exact centrifugal error table plus energy shifts (q = 1 points only)."""
    rows = []
    p1 = PotentialParams(q=1.0, alpha=1.0)
    for ar in (0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0):
        exact = centrifugal(ar, p1, "exact")
        hyp = centrifugal(ar, p1, "hyperbolic")
        rows.append({"alpha_r": ar, "relative_error": abs(hyp - exact) / exact, "taylor_bound": ar * ar / 3.0})
    energies = []
    for pt in points or []:
        if pt.p.q != 1.0 or pt.qn.gamma == 0:
            continue
        es = _energies(pt)
        ex = O.exact_centrifugal_energies(pt.qn, pt.p, pt.m, es)
        energies.append({"point": pt.label, "approximated": es, "exact_centrifugal": ex})
    return {"centrifugal": rows, "energies": energies}


def as_report(checks: list[Check]) -> dict:
    return {
        "passed": all(c.passed for c in checks if c.gated),
        "checks": [asdict(c) for c in checks],
    }
