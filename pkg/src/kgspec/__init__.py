"""Klein-Gordon spectra and phase shifts for a Hulthen plus q-deformed hyperbolic potential."""
from .bound import (
    BoundState,
    QuantumNumbers,
    SearchWindow,
    bound_wavefunction,
    chi_coeffs,
    energy_residual,
    omega_coeffs,
    solve_bound_energies,
    susy_factors,
)
from .errors import KGSpecError
from .potential import MassParams, PotentialParams
from .scatter import (
    HulthenParams,
    WoodsSaxonParams,
    phase_shift,
    scatter_normalization,
    smatrix_pole_energies,
    threshold_energy,
)

__all__ = [
    "BoundState", "QuantumNumbers", "SearchWindow", "bound_wavefunction", "chi_coeffs",
    "energy_residual", "omega_coeffs", "solve_bound_energies", "susy_factors", "KGSpecError",
    "MassParams", "PotentialParams", "HulthenParams", "WoodsSaxonParams", "phase_shift",
    "scatter_normalization", "smatrix_pole_energies", "threshold_energy",
]
