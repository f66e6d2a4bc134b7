"""Optimal two-photon states for two-photon absorption in a three-level system.

Units: gamma_e = 1, omega_e = 0 unless given otherwise.
"""

from ._core import (
    LevelSystem,
    NumericalError,
    SchmidtDecomposition,
    ShapingSolution,
    asymptotic_bounds,
    complex_normal_cdf,
    default_grid,
    entropy,
    eta_gaussian,
    eta_infinite,
    faddeeva,
    marginal_single,
    marginal_sum,
    normalization,
    optimal_pump,
    optimal_slm,
    optimal_state,
    response,
    schmidt,
)

__all__ = [
    "LevelSystem",
    "NumericalError",
    "SchmidtDecomposition",
    "ShapingSolution",
    "asymptotic_bounds",
    "complex_normal_cdf",
    "default_grid",
    "entropy",
    "eta_gaussian",
    "eta_infinite",
    "faddeeva",
    "marginal_single",
    "marginal_sum",
    "normalization",
    "optimal_pump",
    "optimal_slm",
    "optimal_state",
    "response",
    "schmidt",
]
