"""Commutator matrix of the interaction basis in the target state.

Because distinct momenta decouple, the matrix of expectation values
K_ij = i <psi(lambda)| [L_i, L_j] |psi(lambda)> factorizes through momentum
space: with Phi the (orthogonal-row) Fourier matrix mapping basis labels to
per-momentum pseudospin components,

    K(lambda) = Phi . K'(lambda) . Phi^T,

where K' is block diagonal with one real skew 3x3 block per momentum built
from the target Bloch field (v_x, v_z).  K is real, skew-symmetric, and has
spectral norm <= 1; for l = N/2 its nonzero eigenvalues are exactly +-i.

Two assembly routes are provided: :func:`commutator_matrix` accumulates the
per-momentum rank-2 contributions without materializing K' (cheap enough to
rebuild inside an ODE integrator), and :func:`commutator_matrix_blockwise`
forms the full block-diagonal K' and sandwiches it (reference path; the two
must agree to near machine precision).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import BasisDescriptor, _bloch_arrays, momentum_grid, target_bloch

__all__ = [
    "FourierMatrix",
    "CommutatorMatrix",
    "block",
    "fourier_matrix",
    "fourier_slices",
    "commutator_matrix",
    "commutator_matrix_blockwise",
]


@dataclass(frozen=True)
class FourierMatrix:
    """Label-to-momentum transform; rows = basis labels, columns = (k, x/y/z).

    Row (m, X) carries scale * (2/sqrt(N)) * sin(m k) in the (k, x) columns,
    (m, Y) the same weights in (k, y), and (m, Z) scale * (2/sqrt(N)) * cos(m k)
    in (k, z).  For l = N/2 the matrix is square and orthogonal.
    """

    basis: BasisDescriptor
    entries: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class CommutatorMatrix:
    """Dense real skew-symmetric generator of the coupling flow."""

    basis: BasisDescriptor
    lam: float
    entries: np.ndarray = field(repr=False)


def block(lam: float, k: float) -> np.ndarray:
    """Skew 3x3 momentum block [[0, v_z, 0], [-v_z, 0, v_x], [0, -v_x, 0]]."""
    tb = target_bloch(lam, k)
    return np.array([
        [0.0, tb.v_z, 0.0],
        [-tb.v_z, 0.0, tb.v_x],
        [0.0, -tb.v_x, 0.0],
    ])


def fourier_slices(basis: BasisDescriptor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Fx, Fy, Fz): the x/y/z column groups of the Fourier matrix, each d x N/2.

    Fx[i, n] is the (k_n, x) entry of row i, and analogously for y and z;
    each row is nonzero in exactly one of the three slices.
    """
    grid = momentum_grid(basis.N)
    ks = grid.ks
    d, M = basis.size, len(ks)
    pref = 2.0 / np.sqrt(basis.N)
    Fx = np.zeros((d, M))
    Fy = np.zeros((d, M))
    Fz = np.zeros((d, M))
    for i, (m, a, sc) in enumerate(basis.labels):
        if a == "X":
            Fx[i] = sc * pref * np.sin(m * ks)
        elif a == "Y":
            Fy[i] = sc * pref * np.sin(m * ks)
        else:
            Fz[i] = sc * pref * np.cos(m * ks)
    return Fx, Fy, Fz


def fourier_matrix(basis: BasisDescriptor) -> FourierMatrix:
    """Assemble the full d x 3N/2 transform in (k1,x),(k1,y),(k1,z),(k2,x),... column order."""
    Fx, Fy, Fz = fourier_slices(basis)
    d, M = Fx.shape
    entries = np.zeros((d, 3 * M))
    entries[:, 0::3] = Fx
    entries[:, 1::3] = Fy
    entries[:, 2::3] = Fz
    return FourierMatrix(basis=basis, entries=entries)


def commutator_matrix(lam: float, basis: BasisDescriptor) -> CommutatorMatrix:
    """Per-momentum accumulation of K(lambda); exact skew symmetry by construction."""
    ks = momentum_grid(basis.N).ks
    vx, vz, _ = _bloch_arrays(lam, ks)
    Fx, Fy, Fz = fourier_slices(basis)
    # K = sum_k [v_z (fx fy^T - fy fx^T) + v_x (fy fz^T - fz fy^T)] = A - A^T
    A = (Fx * vz) @ Fy.T + (Fy * vx) @ Fz.T
    return CommutatorMatrix(basis=basis, lam=lam, entries=A - A.T)


def commutator_matrix_blockwise(lam: float, basis: BasisDescriptor) -> CommutatorMatrix:
    """Reference assembly through the explicit block-diagonal K'."""
    ks = momentum_grid(basis.N).ks
    M = len(ks)
    Kp = np.zeros((3 * M, 3 * M))
    for n, k in enumerate(ks):
        Kp[3 * n:3 * n + 3, 3 * n:3 * n + 3] = block(lam, k)
    F = fourier_matrix(basis).entries
    return CommutatorMatrix(basis=basis, lam=lam, entries=F @ Kp @ F.T)
