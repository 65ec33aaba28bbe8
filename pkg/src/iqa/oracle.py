"""Dense brute-force oracle (N <= 10) validating the analytic modules.

Everything here works in the full 2^N spin Hilbert space through the
Jordan-Wigner correspondence: the quadratic fermion interactions become spin
strings with sigma^z interiors under periodic spin boundary conditions, and
their even-parity blocks reproduce the fermionic operators with antiperiodic
boundary conditions.  Ground states, commutator expectation values and
overlaps are then obtained by explicit diagonalization and compared entry by
entry against the momentum-space formulas.

Deliberately exponential in N; the module guards against anything past
MAX_DENSE_SITES.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegeneracyError, ResourceLimitError
from .model import BasisDescriptor, CouplingVector, basis_descriptor, momentum_grid, target_bloch

__all__ = ["MAX_DENSE_SITES", "DenseOperator", "spin_string_operator",
           "dense_kitaev_hamiltonian", "dense_target_state",
           "dense_target_state_product", "dense_commutator_matrix",
           "dense_ground_overlap", "dense_ground_energy"]

MAX_DENSE_SITES = 10
GAP_TOL = 1e-10

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class DenseOperator:
    """Full 2^N x 2^N Hermitian matrix of one spin-string interaction."""

    N: int
    matrix: np.ndarray = field(repr=False)


def _guard(N: int) -> None:
    if N % 2 != 0 or N < 4:
        raise ValueError(f"N must be even and >= 4, got {N}")
    if N > MAX_DENSE_SITES:
        raise ResourceLimitError(
            f"dense oracle limited to N <= {MAX_DENSE_SITES}, got {N}")


def _pauli_string(N: int, site_ops: dict[int, np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for j in range(N):
        out = np.kron(out, site_ops.get(j, _I2))
    return out


@lru_cache(maxsize=128)
def _spin_string_matrix(N: int, m: int, alpha: str) -> np.ndarray:
    if m == 0:
        if alpha != "Z":
            raise ValueError("only the Z interaction exists at range 0")
        mat = sum(_pauli_string(N, {j: _SZ}) for j in range(N))
        mat *= -1.0 / (2.0 * math.sqrt(N))
        mat.flags.writeable = False
        return mat
    pref = 1.0 / (4.0 * math.sqrt(N))
    mat = np.zeros((2 ** N, 2 ** N), dtype=complex)
    for j in range(N):
        interior = {(j + i) % N: _SZ for i in range(1, m)}
        a, b = j % N, (j + m) % N
        xx = _pauli_string(N, {**interior, a: _SX, b: _SX})
        yy = _pauli_string(N, {**interior, a: _SY, b: _SY})
        if alpha == "X":
            mat += pref * (xx - yy)
        elif alpha == "Y":
            xy = _pauli_string(N, {**interior, a: _SX, b: _SY})
            yx = _pauli_string(N, {**interior, a: _SY, b: _SX})
            mat += pref * (xy + yx)
        elif alpha == "Z":
            mat += pref * (xx + yy)
        else:
            raise ValueError(f"unknown interaction type {alpha!r}")
    mat.flags.writeable = False
    return mat


def spin_string_operator(m: int, alpha: str, N: int) -> DenseOperator:
    """Spin-string form of the range-m interaction (periodic boundary).

    The range-0 operator is -(1/(2 sqrt(N))) sum_j sigma_j^z; for m >= 1 the
    operators are sums of two-endpoint strings with sigma^z interiors.  Their
    even-parity blocks equal the fermionic interactions with antiperiodic
    boundary conditions.
    """
    _guard(N)
    if not 0 <= m <= N // 2:
        raise ValueError(f"need 0 <= m <= N/2, got m={m}")
    return DenseOperator(N=N, matrix=_spin_string_matrix(N, m, alpha))


@lru_cache(maxsize=16)
def _even_indices(N: int) -> np.ndarray:
    idx = np.arange(2 ** N)
    pop = np.array([bin(i).count("1") for i in idx])
    out = idx[pop % 2 == 0]
    out.flags.writeable = False
    return out


def parity_operator(N: int) -> np.ndarray:
    return _pauli_string(N, {j: _SZ for j in range(N)})


def _even_block(matrix: np.ndarray, N: int) -> np.ndarray:
    e = _even_indices(N)
    return matrix[np.ix_(e, e)]


@lru_cache(maxsize=256)
def _dense_basis_even(N: int, m: int, alpha: str, scale: float) -> np.ndarray:
    """Even block of one basis element, normalized to match the momentum-space
    convention used by the analytic commutator matrix."""
    mat = math.sqrt(2.0) * scale * _even_block(_spin_string_matrix(N, m, alpha), N)
    mat.flags.writeable = False
    return mat


def _dense_basis_blocks(basis: BasisDescriptor) -> list[np.ndarray]:
    return [_dense_basis_even(basis.N, m, a, s) for m, a, s in basis.labels]


def dense_kitaev_hamiltonian(lam: float, N: int) -> np.ndarray:
    """Even-parity block of H_K(lambda)/J."""
    _guard(N)
    s = math.sin(lam * math.pi / 2)
    c = math.cos(lam * math.pi / 2)
    mat = 2.0 * math.sqrt(N) * (
        s * (_spin_string_matrix(N, 1, "X") + _spin_string_matrix(N, 1, "Z"))
        + c * _spin_string_matrix(N, 0, "Z"))
    return _even_block(mat, N)


def _ground_state(H: np.ndarray) -> tuple[float, np.ndarray]:
    vals, vecs = np.linalg.eigh(H)
    if vals[1] - vals[0] < GAP_TOL:
        raise DegeneracyError(
            f"ground space is degenerate within {GAP_TOL:.0e} "
            f"(gap {vals[1] - vals[0]:.3e})")
    vec = vecs[:, 0]
    pivot = np.argmax(np.abs(vec))
    phase = vec[pivot] / abs(vec[pivot])
    return float(vals[0]), vec / phase


def dense_target_state(lam: float, N: int) -> np.ndarray:
    """Ground state of the dense even-block H_K(lambda), phase-fixed so the
    largest amplitude is real positive."""
    _guard(N)
    _, psi = _ground_state(dense_kitaev_hamiltonian(lam, N))
    return psi


def dense_ground_energy(lam: float, N: int) -> float:
    """Even-sector ground energy of H_K(lambda)/J."""
    _guard(N)
    e0, _ = _ground_state(dense_kitaev_hamiltonian(lam, N))
    return e0


@lru_cache(maxsize=32)
def _fermion_modes(N: int) -> np.ndarray:
    """Dense annihilation operators c_j, Jordan-Wigner convention
    (spin up = empty): stacked (N, 2^N, 2^N)."""
    lower = np.array([[0, 1], [0, 0]], dtype=complex)  # |occupied> -> |empty>
    cs = []
    string: dict[int, np.ndarray] = {}
    for j in range(N):
        cs.append(_pauli_string(N, {**string, j: lower}))
        string[j] = _SZ
    out = np.stack(cs)
    out.flags.writeable = False
    return out


def dense_target_state_product(lam: float, N: int) -> np.ndarray:
    """Independent construction of the target state as a product of momentum
    pair excitations applied to the vacuum (even-block coordinates)."""
    _guard(N)
    cs = _fermion_modes(N)
    sites = np.arange(N)
    dim = 2 ** N
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0  # all spins up = no fermions
    psi = vac
    phase = np.exp(-1j * math.pi / 4) / math.sqrt(N)
    for k in momentum_grid(N).ks:
        ck = phase * np.tensordot(np.exp(-1j * k * sites), cs, axes=(0, 0))
        cmk = phase * np.tensordot(np.exp(+1j * k * sites), cs, axes=(0, 0))
        pair = ck.conj().T @ cmk.conj().T
        th = target_bloch(lam, float(k)).theta
        psi = math.cos(th) * psi - math.sin(th) * (pair @ psi)
    psi = psi[_even_indices(N)]
    psi /= np.linalg.norm(psi)
    pivot = np.argmax(np.abs(psi))
    return psi / (psi[pivot] / abs(psi[pivot]))


def dense_commutator_matrix(lam: float, N: int, l: int) -> np.ndarray:
    """Entries i <psi(lambda)| [L_i, L_j] |psi(lambda)> from dense operators
    and the dense target state."""
    _guard(N)
    basis = basis_descriptor(N, l)
    psi = dense_target_state(lam, N)
    images = [L @ psi for L in _dense_basis_blocks(basis)]
    d = basis.size
    K = np.zeros((d, d))
    for i in range(d):
        for j in range(i + 1, d):
            z = np.vdot(images[i], images[j])
            K[i, j] = -2.0 * z.imag  # i(z - conj z)
            K[j, i] = -K[i, j]
    return K


def dense_ground_overlap(h: CouplingVector, lam: float) -> float:
    """|<GS(sum_i h_i L_i) | psi(lambda)>|^2 by dense diagonalization."""
    _guard(h.basis.N)
    blocks = _dense_basis_blocks(h.basis)
    H = np.zeros_like(blocks[0])
    for hi, L in zip(h.h, blocks):
        H += hi * L
    _, gs = _ground_state(H)
    psi = dense_target_state(lam, h.basis.N)
    return float(abs(np.vdot(gs, psi)) ** 2)
