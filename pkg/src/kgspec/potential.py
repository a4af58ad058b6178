"""Hulthen plus q-deformed hyperbolic potentials and the position-dependent mass.

Conventions: natural units (hbar = c = 1).  ``y = exp(-2 alpha r)`` and
``d = 1 - q y`` appear everywhere; ``d`` vanishes at the singular point
``r_s = ln(q) / (2 alpha)``, which is negative for q < 1, the origin for
q = 1 and a positive domain floor for q > 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError


@dataclass(frozen=True)
class PotentialParams:
    """Couplings of the vector/scalar potentials.

    V0, S0 are the Hulthen-type well depths, V1, S1 the asymptotic
    (deformed coth) couplings, q the deformation and alpha the screening.
    """

    V0: float = 0.0
    V1: float = 0.0
    S0: float = 0.0
    S1: float = 0.0
    q: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("V0", "V1", "S0", "S1", "q", "alpha"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ParameterError(f"{name} must be finite, got {v!r}")
        if self.alpha <= 0:
            raise ParameterError(f"alpha must be positive, got {self.alpha!r}")
        if self.q <= 0:
            raise ParameterError(f"q must be positive, got {self.q!r}")

    @property
    def r_floor(self) -> float:
        """Lower end of the physical domain: 0 for q <= 1, ln(q)/(2 alpha) for q > 1."""
        return singular_point(self) if self.q > 1 else 0.0


@dataclass(frozen=True)
class MassParams:
    m0: float = 1.0
    m1: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.m0) and math.isfinite(self.m1)):
            raise ParameterError("mass parameters must be finite")


def singular_point(p: PotentialParams) -> float:
    """Where 1 - q exp(-2 alpha r) vanishes."""
    return math.log(p.q) / (2.0 * p.alpha)


def one_minus_qy(r, p: PotentialParams):
    """1 - q exp(-2 alpha r), accurate near the singular point."""
    return -np.expm1(math.log(p.q) - 2.0 * p.alpha * np.asarray(r, dtype=float))


def _check_domain(r, p: PotentialParams):
    r = np.asarray(r, dtype=float)
    if np.any(r <= p.r_floor):
        raise DomainError(
            f"r must exceed the domain floor {p.r_floor:g} (q={p.q:g}, alpha={p.alpha:g})"
        )
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def q_hyperbolic(kind: str, x, q: float):
    """q-deformed hyperbolic functions.

    sinh_q(x) = (e^x - q e^-x)/2 and cosh_q(x) = (e^x + q e^-x)/2, so that
    cosh_q^2 - sinh_q^2 = q.
    """
    x = np.asarray(x, dtype=float)
    if kind == "cosh":
        return _out(0.5 * (np.exp(x) + q * np.exp(-x)))
    sinh = 0.5 * (np.exp(x) - q * np.exp(-x))
    if kind == "sinh":
        return _out(sinh)
    if kind == "tanh":
        return _out(sinh / (0.5 * (np.exp(x) + q * np.exp(-x))))
    if kind not in ("coth", "csch"):
        raise ValueError(f"unknown q-hyperbolic function {kind!r}")
    # sinh_q vanishes at x = ln(q)/2
    if np.any(np.abs(x - 0.5 * math.log(q)) < 1e-15 * np.maximum(1.0, np.abs(x))) or np.any(sinh == 0):
        raise DomainError(f"{kind}_q is singular at x = ln(q)/2")
    if kind == "coth":
        return _out(0.5 * (np.exp(x) + q * np.exp(-x)) / sinh)
    return _out(1.0 / sinh)


def _hulthen_plus_coth(r, well: float, asym: float, p: PotentialParams):
    r = _check_domain(r, p)
    y = np.exp(-2.0 * p.alpha * r)
    d = one_minus_qy(r, p)
    return _out((-well * y + asym * (1.0 + p.q * y)) / d)


def vector_potential(r, p: PotentialParams):
    """V(r) = -V0 y/(1 - q y) + V1 (1 + q y)/(1 - q y)."""
    return _hulthen_plus_coth(r, p.V0, p.V1, p)


def scalar_potential(r, p: PotentialParams):
    """S(r), same form as the vector potential with S0, S1."""
    return _hulthen_plus_coth(r, p.S0, p.S1, p)


def mass_at(r, m: MassParams, p: PotentialParams):
    """m(r) = m0 + m1/(1 - q exp(-2 alpha r))."""
    r = _check_domain(r, p)
    return _out(m.m0 + m.m1 / one_minus_qy(r, p))


GREENE_ALDRICH_C0 = 1.0 / 12.0


def centrifugal(r, p: PotentialParams, scheme: str = "exact", c0: float = GREENE_ALDRICH_C0):
    """1/r^2 or one of its exponential-type approximations.

    ``greene_aldrich`` is the q = 1 improved scheme with constant ``c0``;
    ``hyperbolic`` is alpha^2 / sinh_q^2(alpha r).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("centrifugal term needs r > 0")
    if scheme == "exact":
        return _out(1.0 / r**2)
    if scheme == "greene_aldrich":
        y = np.exp(-2.0 * p.alpha * r)
        u = y / -np.expm1(-2.0 * p.alpha * r)
        return _out(4.0 * p.alpha**2 * (c0 + u + u * u))
    if scheme == "hyperbolic":
        return _out(p.alpha**2 / np.asarray(q_hyperbolic("sinh", p.alpha * r, p.q)) ** 2)
    raise ValueError(f"unknown centrifugal scheme {scheme!r}")


def continuum_edges(p: PotentialParams, m: MassParams) -> tuple[float, float]:
    """Edges (E+, E-) of the gap: (E - V1)^2 = (m0 + m1 + S1)^2."""
    gap = abs(m.m0 + m.m1 + p.S1)
    return p.V1 + gap, p.V1 - gap
