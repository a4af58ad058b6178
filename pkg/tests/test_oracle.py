import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from kgspec import oracle as O
from kgspec.bound import OmegaCoefficients, QuantumNumbers, solve_bound_energies
from kgspec.errors import BelowThreshold, GridError, MatchError, ParameterError
from kgspec.potential import MassParams, PotentialParams

REF_P = PotentialParams(V0=2.0, V1=0.5, S0=0.0, S1=3.0, q=1.0, alpha=0.01)
REF_M = MassParams(-5.0, -0.2)
GROUND = QuantumNumbers(0, 0, 3)


def _panel(q, alpha):
    return PotentialParams(V0=2.0, V1=0.5, S0=0.0, S1=3.0, q=q, alpha=alpha)


@pytest.mark.parametrize("richardson", [False, True])
def test_particle_in_a_box(richardson):
    L = 3.0
    grid = O.RadialGrid(0.0, L, 20000)
    levels = O.levels_for_potential(lambda x: np.zeros_like(x), grid, 8, richardson)
    exact = ((np.arange(8) + 1) * math.pi / L) ** 2
    assert np.max(np.abs(levels / exact - 1)) < 1e-4
    if richardson:
        # bisection resolves eigenvalues to ~eps * 4/h^2 in absolute terms
        assert np.max(np.abs(levels / exact - 1)) < 1e-6


def test_levels_strictly_increasing():
    p = _panel(0.5, 0.1)
    lv = O.effective_levels(0.3, GROUND, p, REF_M)
    assert len(lv) == 8 and np.all(np.diff(lv) > 0)


def test_grid_validation():
    p = PotentialParams(alpha=0.5)
    O.RadialGrid.default(p).validate(p)
    for bad in (O.RadialGrid(0.0, 60.0), O.RadialGrid(1e-6, 1e-7), O.RadialGrid(1e-6, 60.0, 1000),
                O.RadialGrid(1e-6, 10.0)):
        with pytest.raises(GridError):
            bad.validate(p)
    with pytest.raises(GridError):
        O.effective_levels(0.0, GROUND, p, MassParams(), grid=O.RadialGrid(1e-6, 10.0))


def test_default_grid_reaches_negligible_deformation():
    p = PotentialParams(q=0.9, alpha=0.2)
    g = O.RadialGrid.default(p)
    assert p.q * math.exp(-2 * p.alpha * g.r_max) < 1e-12
    assert g.points >= 2000


@pytest.mark.parametrize("q,alpha", [(1.0, 0.01), (0.5, 0.1)])
def test_grid_halving_convergence(q, alpha):
    p = _panel(q, alpha)
    E = solve_bound_energies(GROUND, p, REF_M)[-1].energy
    g1 = O.RadialGrid.default(p, 20000)
    g2 = O.RadialGrid.default(p, 40000)
    a = O.effective_levels(E, GROUND, p, REF_M, g1, count=3, richardson=False)
    b = O.effective_levels(E, GROUND, p, REF_M, g2, count=3, richardson=False)
    assert np.max(np.abs(np.array(a) - b) / np.abs(b)) < 5e-4


def test_lowest_level_at_analytic_energy_reference():
    for s in solve_bound_energies(GROUND, REF_P, REF_M):
        lv = O.effective_levels(s.energy, GROUND, REF_P, REF_M, count=1)
        target = s.energy**2 - REF_M.m0**2
        assert abs(lv[0] - target) <= 1e-4 * abs(target)


def test_oracle_energies_reference():
    oe = O.oracle_bound_energies(GROUND, REF_P, REF_M)
    ae = [s.energy for s in solve_bound_energies(GROUND, REF_P, REF_M)]
    assert len(oe) == len(ae) == 2
    assert np.max(np.abs(np.array(oe) - ae) / np.abs(ae)) < 1e-4


def test_oracle_degeneracy():
    p = _panel(0.5, 0.1)
    a = O.oracle_bound_energies(QuantumNumbers(1, 1, 2), p, REF_M, scan_points=30)
    b = O.oracle_bound_energies(QuantumNumbers(1, 0, 4), p, REF_M, scan_points=30)
    assert a == b


def test_oracle_free_case():
    assert O.oracle_bound_energies(GROUND, PotentialParams(q=1.0, alpha=0.5), MassParams(1.0, 0.0),
                                   scan_points=30) == []


def test_oracle_level_index_limit():
    with pytest.raises(ParameterError):
        O.oracle_bound_energies(QuantumNumbers(8, 0, 3), REF_P, REF_M)


@pytest.mark.parametrize("q,alpha,n,l,D", [(1.0, 0.01, 0, 0, 3), (0.5, 0.1, 1, 0, 1), (1.0, 0.1, 2, 1, 4)])
def test_eigenvector_nodes_and_tail(q, alpha, n, l, D):
    p = _panel(q, alpha)
    qn = QuantumNumbers(n, l, D)
    for s in solve_bound_energies(qn, p, REF_M):
        r, u = O.oracle_eigenvector(s.energy, qn, p, REF_M)
        assert O.node_count(u) == n
        assert O.tail_ratio(u) < O.TAIL_FLAG
        assert np.sum(u * u) * (r[1] - r[0]) == pytest.approx(1.0, rel=1e-12)


def test_sturm_count_matches_lapack():
    rng = np.random.default_rng(9)
    d = rng.normal(size=300)
    e = rng.normal(size=299)
    w = eigh_tridiagonal(d, e, eigvals_only=True)
    for x in np.linspace(w.min() - 1, w.max() + 1, 41):
        assert O.sturm_count(d, e, x) == int(np.sum(w < x))


def test_falls_to_centre_rejected():
    p = PotentialParams(q=1.0, alpha=0.5)
    om = OmegaCoefficients(0.0, -2.0, 0.0, 0.0)  # c = -2 < -1/4
    assert O.inverse_square_strength(om, p) < -0.25
    with pytest.raises(ParameterError):
        O.levels_for_coefficients(om, p)


# --- phase shifts ------------------------------------------------------------------------


@pytest.mark.parametrize("E", [1.2, 2.0, 3.5])
def test_free_wave_has_zero_phase(E):
    d = O.oracle_phase_shift(E, GROUND, PotentialParams(q=1.0, alpha=0.3), MassParams(1.0, 0.0))
    assert abs(math.remainder(d, math.pi)) < 1e-6


def test_free_wave_higher_partial_wave():
    # gamma = 2 with q = 1 is an approximated centrifugal term, so only the range is checked
    d = O.oracle_phase_shift(2.0, QuantumNumbers(0, 1, 3), PotentialParams(q=1.0, alpha=0.3), MassParams(1.0, 0.0))
    assert 0.0 <= d < math.pi


def test_phase_shift_continuity_over_sweep():
    p, m = PotentialParams(V0=0.08, q=1.0, alpha=0.1), MassParams(1.0, 0.0)
    es = np.linspace(1.05, 3.0, 50)
    d = np.unwrap(2 * np.array([O.oracle_phase_shift(E, GROUND, p, m) for E in es])) / 2
    jumps = np.abs(np.diff(d))
    assert np.max(jumps) < math.pi / 2
    # steepest near threshold, then smooth
    assert np.argmax(jumps) == 0 and np.max(jumps[10:]) < 0.05


def test_match_error_when_radii_inside_the_well():
    p, m = PotentialParams(V0=0.08, q=1.0, alpha=0.1), MassParams(1.0, 0.0)
    with pytest.raises(MatchError):
        O.oracle_phase_shift(1.5, GROUND, p, m, match_at=(0.2, 0.5))


def test_phase_below_threshold():
    with pytest.raises(BelowThreshold):
        O.oracle_phase_shift(0.5, GROUND, PotentialParams(alpha=0.3), MassParams(1.0, 0.0))


# --- exact-centrifugal report ---------------------------------------------------------------


def test_exact_centrifugal_report_close_for_small_alpha():
    qn = QuantumNumbers(1, 0, 1)  # gamma = 0: the approximation does nothing
    es = [s.energy for s in solve_bound_energies(qn, REF_P, REF_M)]
    ex = O.exact_centrifugal_energies(qn, REF_P, REF_M, es)
    assert ex == pytest.approx(es, rel=1e-4)


def test_exact_centrifugal_needs_q_one():
    with pytest.raises(ParameterError):
        O.exact_centrifugal_energies(GROUND, _panel(0.5, 0.1), REF_M, [0.0])
