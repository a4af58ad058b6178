import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgspec.errors import DomainError, ParameterError
from kgspec.potential import (
    MassParams,
    PotentialParams,
    centrifugal,
    continuum_edges,
    mass_at,
    q_hyperbolic,
    scalar_potential,
    vector_potential,
)


def test_params_validation():
    with pytest.raises(ParameterError):
        PotentialParams(alpha=0.0)
    with pytest.raises(ParameterError):
        PotentialParams(q=-0.5)
    with pytest.raises(ParameterError):
        PotentialParams(V0=math.nan)
    with pytest.raises(ParameterError):
        MassParams(m0=math.inf)


def test_floor_only_for_q_above_one():
    assert PotentialParams(q=0.5, alpha=0.3).r_floor == 0.0
    assert PotentialParams(q=1.0, alpha=0.3).r_floor == 0.0
    assert PotentialParams(q=math.e, alpha=0.25).r_floor == pytest.approx(2.0, abs=1e-15)


# --- q-hyperbolic ------------------------------------------------------------


@pytest.mark.parametrize("x", [0.1, 1.0, 3.0])
def test_sinh_q_reduces_to_sinh(x):
    assert q_hyperbolic("sinh", x, 1.0) == pytest.approx(math.sinh(x), rel=1e-15)
    assert q_hyperbolic("cosh", x, 1.0) == pytest.approx(math.cosh(x), rel=1e-15)
    assert q_hyperbolic("tanh", x, 1.0) == pytest.approx(math.tanh(x), rel=1e-14)
    assert q_hyperbolic("coth", x, 1.0) == pytest.approx(1 / math.tanh(x), rel=1e-14)
    assert q_hyperbolic("csch", x, 1.0) == pytest.approx(1 / math.sinh(x), rel=1e-14)


def test_cosh_q_at_zero():
    for q in (0.2, 0.5, 1.0, 2.0):
        assert q_hyperbolic("cosh", 0.0, q) == pytest.approx((1 + q) / 2, abs=1e-16)


def test_deformed_pythagoras_example():
    c, s = q_hyperbolic("cosh", 0.7, 0.8), q_hyperbolic("sinh", 0.7, 0.8)
    assert c * c - s * s == pytest.approx(0.8, abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(1e-3, 1.0))
def test_deformed_pythagoras_property(x, q):
    c, s = q_hyperbolic("cosh", x, q), q_hyperbolic("sinh", x, q)
    assert abs(c * c - s * s - q) < 1e-12 * max(1.0, c * c)


@pytest.mark.parametrize("kind", ["coth", "csch"])
def test_singular_ratios_raise_at_sinh_zero(kind):
    with pytest.raises(DomainError):
        q_hyperbolic(kind, 0.5 * math.log(0.3), 0.3)
    with pytest.raises(DomainError):
        q_hyperbolic(kind, 0.0, 1.0)


def test_unknown_kind():
    with pytest.raises(ValueError):
        q_hyperbolic("sech", 1.0, 1.0)


def test_array_input_keeps_shape():
    x = np.linspace(0.1, 2, 7)
    assert np.shape(q_hyperbolic("sinh", x, 0.5)) == (7,)


# --- potentials --------------------------------------------------------------


def test_vector_potential_asymptote():
    p = PotentialParams(V0=2.0, V1=0.5, q=0.7, alpha=0.3)
    assert abs(vector_potential(50 / p.alpha, p) - 0.5) < 1e-10


def test_zero_couplings_vanish():
    p = PotentialParams(q=0.6, alpha=0.4)
    r = np.linspace(0.05, 30, 50)
    assert np.all(vector_potential(r, p) == 0)
    assert np.all(scalar_potential(r, p) == 0)


def test_scalar_potential_asymptote():
    p = PotentialParams(S0=1.3, S1=-0.8, q=0.4, alpha=0.2)
    assert abs(scalar_potential(50 / p.alpha, p) + 0.8) < 1e-10


def test_scalar_potential_worked_value():
    p = PotentialParams(S0=1.0, S1=0.0, q=1.0, alpha=0.5)
    expected = -math.exp(-1) / (1 - math.exp(-1))
    assert scalar_potential(1.0, p) == pytest.approx(-0.5819767068693265, abs=1e-15)
    assert scalar_potential(1.0, p) == pytest.approx(expected, rel=1e-15)
    # same number through coth: -S0 y/(1-y) = -(coth(alpha r) - 1)/2 for q = 1
    via_coth = -0.5 * (q_hyperbolic("coth", 0.5, 1.0) - 1.0)
    assert scalar_potential(1.0, p) == pytest.approx(via_coth, rel=1e-14)


def test_vector_coth_form_matches_ratio_form():
    p = PotentialParams(V0=0.0, V1=0.7, q=0.45, alpha=0.35)
    r = np.linspace(0.1, 20, 40)
    coth = q_hyperbolic("coth", p.alpha * r, p.q)
    assert np.allclose(vector_potential(r, p), 0.7 * coth, rtol=1e-13, atol=0)


def test_potential_shape_attractive_core_then_rising():
    p = PotentialParams(V0=0.2, V1=0.04, q=1.0, alpha=0.4)
    r = np.linspace(0.1, 10, 400)
    v = vector_potential(r, p)
    assert np.all(np.diff(v) > 0)
    assert v[0] < -0.5  # strongly attractive near the origin
    assert np.all(v < 0.04) and v[-1] == pytest.approx(0.04, abs=1e-3)


@pytest.mark.parametrize("q", [0.3, 0.8, 1.0])
def test_vector_potential_is_hulthen_form_when_v1_zero(q):
    a, V0 = 0.6, 1.7
    p = PotentialParams(V0=V0, V1=0.0, q=q, alpha=a / 2)
    r = np.linspace(0.05, 40, 100)
    hulthen = -V0 * np.exp(-a * r) / (1 - q * np.exp(-a * r))
    assert np.max(np.abs(vector_potential(r, p) - hulthen)) < 1e-14 * max(1.0, np.max(np.abs(hulthen)))


def test_domain_floor_enforced_for_q_above_one():
    p = PotentialParams(V0=1.0, q=2.0, alpha=0.5)
    with pytest.raises(DomainError):
        vector_potential(p.r_floor, p)
    with pytest.raises(DomainError):
        scalar_potential(0.5 * p.r_floor, p)
    with pytest.raises(DomainError):
        mass_at(0.1, MassParams(1.0, 0.1), p)
    assert math.isfinite(vector_potential(1.01 * p.r_floor, p))


# --- mass ----------------------------------------------------------------------


def test_mass_constant_without_perturbation():
    p = PotentialParams(q=0.5, alpha=0.3)
    r = np.linspace(0.01, 30, 50)
    assert np.all(mass_at(r, MassParams(2.5, 0.0), p) == 2.5)


def test_mass_asymptote():
    p = PotentialParams(q=0.5, alpha=0.3)
    assert abs(mass_at(50 / p.alpha, MassParams(2.5, -0.4), p) - 2.1) < 1e-10


def test_mass_small_alpha_limit():
    p = PotentialParams(q=0.5, alpha=1e-8)
    assert abs(mass_at(1.0, MassParams(1.0, 0.3), p) - (1.0 + 0.3 / 0.5)) < 1e-4


@pytest.mark.parametrize("m1,q", [(0.4, 0.5), (0.4, 1.0), (-0.3, 0.7)])
def test_mass_monotone_in_r(m1, q):
    p = PotentialParams(q=q, alpha=0.4)
    r = np.linspace(0.05, 25, 500)
    dm = np.diff(mass_at(r, MassParams(1.0, m1), p))
    # m1 q > 0: m decreases towards m0 + m1; m1 q < 0: increases
    assert np.all(np.sign(dm[np.abs(dm) > 0]) == -np.sign(m1 * q))


# --- centrifugal -----------------------------------------------------------------


def test_exact_centrifugal():
    assert centrifugal(2.0, PotentialParams()) == 0.25


def test_hyperbolic_centrifugal_small_argument():
    p = PotentialParams(q=1.0, alpha=1.0)
    rel = abs(centrifugal(0.01, p, "hyperbolic") - 1e4) / 1e4
    assert rel == pytest.approx(0.01**2 / 3, rel=1e-3)
    assert rel <= 3.5e-5


def test_hyperbolic_equals_exponential_form():
    p = PotentialParams(q=0.6, alpha=0.25)
    r = np.linspace(0.5, 30, 60)
    y = np.exp(-2 * p.alpha * r)
    expected = 4 * p.alpha**2 * y / (1 - p.q * y) ** 2
    assert np.allclose(centrifugal(r, p, "hyperbolic"), expected, rtol=1e-12, atol=0)


@pytest.mark.parametrize("ar", np.linspace(0.005, 0.2, 12))
def test_hyperbolic_error_within_taylor_regime(ar):
    p = PotentialParams(q=1.0, alpha=0.05)
    r = ar / p.alpha
    rel = abs(centrifugal(r, p, "hyperbolic") - centrifugal(r, p)) / centrifugal(r, p)
    assert rel <= 0.34 * ar * ar


def test_error_curve_grows_with_radius():
    p = PotentialParams(q=1.0, alpha=0.05)
    r = np.linspace(0.2, 8.0, 80)
    err = np.abs(centrifugal(r, p, "hyperbolic") - centrifugal(r, p)) / centrifugal(r, p)
    assert np.all(np.diff(err) > 0)


def test_greene_aldrich_default_constant():
    p = PotentialParams(q=1.0, alpha=0.1)
    r = 0.5
    y = math.exp(-2 * p.alpha * r)
    expected = 4 * p.alpha**2 * (1 / 12 + y / (1 - y) + (y / (1 - y)) ** 2)
    assert centrifugal(r, p, "greene_aldrich") == pytest.approx(expected, rel=1e-13)
    assert centrifugal(r, p, "greene_aldrich", c0=0.0) < expected
    # within a few percent of 1/r^2 at small alpha r
    assert centrifugal(r, p, "greene_aldrich") == pytest.approx(1 / r**2, rel=1e-3)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_centrifugal_domain(r):
    with pytest.raises(DomainError):
        centrifugal(r, PotentialParams())


def test_centrifugal_unknown_scheme():
    with pytest.raises(ValueError):
        centrifugal(1.0, PotentialParams(), "pekeris")


# --- continuum edges -------------------------------------------------------------


def test_edges_free_gap():
    assert continuum_edges(PotentialParams(), MassParams(1.3, 0.0)) == (1.3, -1.3)


def test_edges_reference_set():
    up, lo = continuum_edges(PotentialParams(V1=0.5, S1=3.0), MassParams(-5.0, -0.2))
    assert up == pytest.approx(2.7, abs=1e-15) and lo == pytest.approx(-1.7, abs=1e-15)


def test_edges_gapless():
    assert continuum_edges(PotentialParams(V1=0.3, S1=-0.8), MassParams(1.0, -0.2)) == (0.3, 0.3)
