import math

import numpy as np
import pytest

from iqa import CouplingVector, basis_descriptor, commutator_matrix, energy, fidelity, kitaev_couplings
from iqa.errors import ResourceLimitError
from iqa.model import momentum_grid, _bloch_arrays
from iqa.oracle import (dense_commutator_matrix, dense_ground_energy,
                        dense_ground_overlap, dense_kitaev_hamiltonian,
                        dense_target_state, dense_target_state_product,
                        parity_operator, spin_string_operator)


def all_labels(N):
    labs = [(0, "Z")]
    for m in range(1, N // 2 + 1):
        labs += [(m, "X"), (m, "Y")]
        if m < N // 2:
            labs.append((m, "Z"))
    return labs


def test_onsite_string_is_diagonal():
    N = 6
    S = spin_string_operator(0, "Z", N).matrix
    assert np.all(S == np.diag(np.diag(S)))
    sz = np.array([1, -1])
    total = np.zeros(2 ** N)
    for j in range(N):
        pattern = np.ones(1)
        for i in range(N):
            pattern = np.kron(pattern, sz if i == j else np.ones(2))
        total += pattern
    assert np.allclose(np.diag(S), -total / (2 * math.sqrt(N)))


def test_strings_hermitian_and_parity_commuting():
    N = 6
    P = parity_operator(N)
    for m, a in all_labels(N):
        S = spin_string_operator(m, a, N).matrix
        assert np.max(np.abs(S - S.conj().T)) <= 1e-12
        assert np.max(np.abs(S @ P - P @ S)) <= 1e-12


def test_resource_guard():
    with pytest.raises(ResourceLimitError):
        spin_string_operator(1, "X", 12)
    with pytest.raises(ValueError):
        spin_string_operator(0, "X", 6)
    with pytest.raises(ValueError):
        spin_string_operator(4, "Z", 6)


def test_even_block_orthogonality_relations():
    # equal diagonal Gram entries for the scaled basis, vanishing cross terms
    N = 6
    b = basis_descriptor(N, N // 2)
    from iqa.oracle import _dense_basis_blocks
    blocks = _dense_basis_blocks(b)
    d = len(blocks)
    gram = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            gram[i, j] = np.trace(blocks[i] @ blocks[j])
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) <= 1e-10
    diag = np.real(np.diag(gram))
    assert np.max(np.abs(diag - diag[0])) <= 1e-10


def test_dense_target_state_vacuum_at_zero():
    N = 6
    psi = dense_target_state(0.0, N)
    assert abs(psi[0] - 1.0) <= 1e-12  # all spins up in the even-sector basis
    assert abs(np.linalg.norm(psi) - 1.0) <= 1e-12


@pytest.mark.parametrize("N", [4, 6, 8])
def test_dense_state_matches_product_construction(N):
    for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
        psi_diag = dense_target_state(lam, N)
        psi_prod = dense_target_state_product(lam, N)
        assert abs(abs(np.vdot(psi_diag, psi_prod)) - 1.0) <= 1e-10


@pytest.mark.parametrize("N", [4, 6, 8])
def test_dense_ground_energy_is_minus_sum_of_dispersion(N):
    # ground energy equals -sum over the full momentum grid of eps_k,
    # i.e. twice the sum over the half grid
    for lam in (0.0, 0.3, 0.5, 0.9):
        _, _, eps = _bloch_arrays(lam, momentum_grid(N).ks)
        assert dense_ground_energy(lam, N) == pytest.approx(-2 * np.sum(eps), abs=1e-10)


def test_spectral_energy_matches_dense():
    N = 8
    b = basis_descriptor(N, N // 2)
    for lam in (0.1, 0.45, 0.8):
        assert energy(kitaev_couplings(lam, b)) == pytest.approx(
            dense_ground_energy(lam, N), abs=1e-10)


def test_dense_commutator_matches_analytic():
    N = 6
    for l in (1, 2, 3):
        b = basis_descriptor(N, l)
        for lam in (0.0, 0.3, 0.5, 0.7, 1.0):
            Kd = dense_commutator_matrix(lam, N, l)
            assert np.max(np.abs(Kd + Kd.T)) <= 1e-10
            Ka = commutator_matrix(lam, b).entries
            assert np.max(np.abs(Kd - Ka)) <= 1e-10


@pytest.mark.parametrize("N", [4, 6, 8])
def test_dense_commutator_agreement_on_fine_grid(N):
    for l in range(1, N // 2 + 1):
        b = basis_descriptor(N, l)
        for lam in np.linspace(0, 1, 11):
            diff = np.max(np.abs(dense_commutator_matrix(float(lam), N, l)
                                 - commutator_matrix(float(lam), b).entries))
            assert diff <= 1e-10


def test_degenerate_ground_space_is_an_error():
    from iqa.errors import DegeneracyError
    b = basis_descriptor(6, 1)
    with pytest.raises(DegeneracyError):
        dense_ground_overlap(CouplingVector(b, np.zeros(b.size)), 0.3)


def test_dense_commutator_structure_at_lambda_zero():
    # v_x = 0 at lambda = 0, so only pairing-pairing (X row, Y column) blocks
    # survive, matching the momentum-block structure
    N, l = 6, 3
    b = basis_descriptor(N, l)
    K = dense_commutator_matrix(0.0, N, l)
    codes = b.alpha_codes
    for i in range(b.size):
        for j in range(b.size):
            if abs(K[i, j]) > 1e-12:
                assert {codes[i], codes[j]} == {0, 1}  # one X-type, one Y-type


def test_dense_overlap_cross_validates_fidelity():
    N, l = 6, 3
    b = basis_descriptor(N, l)
    rng = np.random.default_rng(17)
    for lam in (0.2, 0.5, 0.8):
        h = CouplingVector(b, rng.standard_normal(b.size))
        assert fidelity(h, lam).fidelity == pytest.approx(
            dense_ground_overlap(h, lam), abs=1e-10)


def test_dense_overlap_of_negated_couplings():
    # flipping the sign swaps every two-level ground state to its antipode;
    # the overlap collapses to the product of per-momentum complements
    N = 6
    b = basis_descriptor(N, N // 2)
    lam = 0.3
    h = kitaev_couplings(lam, b)
    rep = fidelity(h, lam)
    complement = float(np.prod(1.0 - rep.per_k))
    assert dense_ground_overlap(h.scaled(-1.0), lam) == pytest.approx(
        complement, abs=1e-10)


def test_dense_kitaev_is_hermitian_even_block():
    H = dense_kitaev_hamiltonian(0.4, 6)
    assert np.max(np.abs(H - H.conj().T)) <= 1e-12
    assert H.shape == (2 ** 5, 2 ** 5)
