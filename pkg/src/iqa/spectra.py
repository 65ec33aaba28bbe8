"""Spectral readout of a coupling vector: Bloch fields, fidelities, energy.

A Hamiltonian sum_i h_i L_i acts on each momentum pair as a two-level problem
w_k . sigma_k with w_k read off from the Fourier transform of the couplings.
Ground states, ground energy, and overlaps with the target path therefore
reduce to per-momentum 3-vector algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .commutator import fourier_slices
from .model import CouplingVector, MomentumGrid, _bloch_arrays, momentum_grid

__all__ = ["BlochField", "FidelityReport", "field_of", "ground_state_bloch",
           "fidelity", "energy"]

# Modes with |w_k| below DEGENERACY_TOL_FACTOR * max_k |w_k| (with an absolute
# floor) are treated as degenerate two-level problems.
DEGENERACY_TOL_FACTOR = 1e-12
DEGENERACY_TOL_FLOOR = 1e-300


@dataclass(frozen=True)
class BlochField:
    """Per-momentum field 3-vectors (w_x, w_y, w_z) of a quadratic Hamiltonian."""

    grid: MomentumGrid
    w: np.ndarray = field(repr=False)  # shape (N/2, 3)


@dataclass(frozen=True)
class FidelityReport:
    """Ground-state overlap with the target state, factorized per momentum."""

    lam: float
    l: int
    fidelity: float
    per_k: np.ndarray = field(repr=False)
    degenerate_modes: tuple[int, ...] = ()


def field_of(h: CouplingVector) -> BlochField:
    """Bloch field of sum_i h_i L_i: w_k^a = sum_i h_i scale_i (2/sqrt(N)) f_a(m_i k),
    with f sin-type for X/Y labels and cos-type for Z."""
    Fx, Fy, Fz = fourier_slices(h.basis)
    w = np.column_stack([Fx.T @ h.h, Fy.T @ h.h, Fz.T @ h.h])
    return BlochField(grid=momentum_grid(h.basis.N), w=w)


def ground_state_bloch(bfield: BlochField, tol: float) -> tuple[np.ndarray, list[int]]:
    """Per-momentum ground-state directions -w_k/|w_k| of sum_k w_k . sigma_k.

    Modes with |w_k| < tol are flagged degenerate and get a zero direction
    vector instead of aborting.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    norms = np.linalg.norm(bfield.w, axis=1)
    degenerate = [int(i) for i in np.where(norms < tol)[0]]
    safe = np.where(norms < tol, 1.0, norms)
    nhat = -bfield.w / safe[:, None]
    nhat[norms < tol] = 0.0
    return nhat, degenerate


def _degeneracy_tol(norms: np.ndarray) -> float:
    top = float(norms.max(initial=0.0))
    return max(DEGENERACY_TOL_FACTOR * top, DEGENERACY_TOL_FLOOR)


def fidelity(h: CouplingVector, lam: float) -> FidelityReport:
    """|<GS(h) | psi(lambda)>|^2 as a product of per-momentum overlap factors.

    Each factor is (1 + n_k . m_k)/2 with n_k the ground-state direction of
    the coupling field and m_k = (v_x, 0, v_z) the target direction; modes
    flagged degenerate contribute the ground-space average 1/2.
    """
    bfield = field_of(h)
    tol = _degeneracy_tol(np.linalg.norm(bfield.w, axis=1))
    nhat, degenerate = ground_state_bloch(bfield, tol)
    ks = bfield.grid.ks
    vx, vz, _ = _bloch_arrays(lam, ks)
    per_k = 0.5 * (1.0 + nhat[:, 0] * vx + nhat[:, 2] * vz)
    if degenerate:
        per_k[degenerate] = 0.5
    per_k = np.clip(per_k, 0.0, 1.0)
    total = float(np.prod(per_k))
    return FidelityReport(lam=lam, l=h.basis.l, fidelity=total, per_k=per_k,
                          degenerate_modes=tuple(degenerate))


def energy(h: CouplingVector) -> float:
    """Ground energy -sum_k |w_k| of the two-level decomposition."""
    bfield = field_of(h)
    return float(-np.sum(np.linalg.norm(bfield.w, axis=1)))
