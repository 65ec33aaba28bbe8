"""Reconstruction of local parent Hamiltonians for free-fermion ground
states by inverse annealing of coupling vectors.

A slowly deformed target state drags its parent Hamiltonian along an
artificial flow dh/dt = K(lambda(t)) h, where K is the skew-symmetric matrix
of commutator expectation values of the interaction basis in the
instantaneous state.  The package provides the closed-form Kitaev-chain
target path, the commutator-matrix assembly, a norm-preserving RK4
integrator with compiled and pure-Python kernels, fidelity and locality
diagnostics, a dense Jordan-Wigner oracle for validation, and a sweep runner
with a CLI.
"""

__version__ = "0.1.0"

from ._backend import available_backends, backend_info
from .annealer import IntegratorConfig, Schedule, Trajectory, anneal, anneal_pair
from .cache import TrajectoryCache
from .commutator import (CommutatorMatrix, FourierMatrix, block,
                         commutator_matrix, commutator_matrix_blockwise,
                         fourier_matrix)
from .errors import ConfigError, DegeneracyError, IntegrationError, ResourceLimitError
from .metrics import (RangeProfile, l_epsilon, max_R, r_avg_K, r_avg_h,
                      range_profile, relative_distance)
from .model import (BasisDescriptor, CouplingVector, MomentumGrid, TargetBloch,
                    basis_descriptor, initial_couplings, kitaev_couplings,
                    momentum_grid, target_bloch)
from .spectra import BlochField, FidelityReport, energy, fidelity, field_of, ground_state_bloch

__all__ = [
    "__version__",
    "available_backends", "backend_info",
    "IntegratorConfig", "Schedule", "Trajectory", "anneal", "anneal_pair",
    "TrajectoryCache",
    "CommutatorMatrix", "FourierMatrix", "block", "commutator_matrix",
    "commutator_matrix_blockwise", "fourier_matrix",
    "ConfigError", "DegeneracyError", "IntegrationError", "ResourceLimitError",
    "RangeProfile", "l_epsilon", "max_R", "r_avg_K", "r_avg_h",
    "range_profile", "relative_distance",
    "BasisDescriptor", "CouplingVector", "MomentumGrid", "TargetBloch",
    "basis_descriptor", "initial_couplings", "kitaev_couplings",
    "momentum_grid", "target_bloch",
    "BlochField", "FidelityReport", "energy", "fidelity", "field_of",
    "ground_state_bloch",
]
