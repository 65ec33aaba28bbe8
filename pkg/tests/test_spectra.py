import math

import numpy as np
import pytest

from iqa import (BlochField, CouplingVector, basis_descriptor, energy,
                 fidelity, field_of, ground_state_bloch, kitaev_couplings,
                 momentum_grid)
from iqa.model import _bloch_arrays


def unit_coupling(basis, m, alpha):
    h = np.zeros(basis.size)
    h[basis.index(m, alpha)] = 1.0
    return CouplingVector(basis, h)


def test_field_of_single_pairing_coupling():
    b = basis_descriptor(8, 2)
    w = field_of(unit_coupling(b, 1, "X")).w
    ks = momentum_grid(8).ks
    assert np.allclose(w[:, 0], 2 / math.sqrt(8) * np.sin(ks), atol=1e-15)
    assert np.all(w[:, 1] == 0) and np.all(w[:, 2] == 0)


def test_field_of_zero_and_linearity():
    b = basis_descriptor(8, 3)
    z = field_of(CouplingVector(b, np.zeros(b.size))).w
    assert np.all(z == 0)
    rng = np.random.default_rng(7)
    h1, h2 = rng.standard_normal((2, b.size))
    w12 = field_of(CouplingVector(b, h1 + 2 * h2)).w
    assert np.allclose(w12, field_of(CouplingVector(b, h1)).w
                       + 2 * field_of(CouplingVector(b, h2)).w, atol=1e-14)


def test_field_of_kitaev_proportional_to_target():
    for N, lam in [(8, 0.3), (20, 0.8)]:
        b = basis_descriptor(N, N // 2)
        w = field_of(kitaev_couplings(lam, b)).w
        ks = momentum_grid(N).ks
        vx, vz, eps = _bloch_arrays(lam, ks)
        ratios = np.linalg.norm(w, axis=1) / eps
        assert np.allclose(ratios, ratios[0]), "one common constant"
        assert ratios[0] > 0
        assert np.allclose(w[:, 0], -ratios[0] * eps * vx, atol=1e-12)
        assert np.all(w[:, 1] == 0)
        assert np.allclose(w[:, 2], -ratios[0] * eps * vz, atol=1e-12)


def test_ground_state_bloch_directions():
    grid = momentum_grid(4)
    w = np.array([[0.0, 0.0, 1.0], [0.7, 0.0, 0.0]])
    nhat, degenerate = ground_state_bloch(BlochField(grid, w), tol=1e-12)
    assert np.allclose(nhat, [[0, 0, -1], [-1, 0, 0]])
    assert degenerate == []


def test_ground_state_bloch_flags_degenerate():
    grid = momentum_grid(4)
    w = np.array([[0.0, 0.0, 1.0], [0.0, 1e-15, 0.0]])
    nhat, degenerate = ground_state_bloch(BlochField(grid, w), tol=1e-12)
    assert degenerate == [1]
    assert np.all(nhat[1] == 0)
    with pytest.raises(ValueError):
        ground_state_bloch(BlochField(grid, w), tol=0.0)


def test_fidelity_of_exact_couplings_is_one():
    for N in (6, 8, 50):
        b = basis_descriptor(N, N // 2)
        for lam in (0.0, 0.2, 0.5, 0.9, 1.0):
            rep = fidelity(kitaev_couplings(lam, b), lam)
            assert abs(rep.fidelity - 1.0) <= 1e-12
            assert rep.degenerate_modes == ()


def test_fidelity_antipodal_and_scale_invariance():
    b = basis_descriptor(8, 4)
    lam = 0.37
    h = kitaev_couplings(lam, b)
    rep = fidelity(h.scaled(-1.0), lam)
    assert rep.fidelity == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(rep.per_k, 0.0, atol=1e-12)

    rng = np.random.default_rng(11)
    h = CouplingVector(b, rng.standard_normal(b.size))
    f1 = fidelity(h, lam).fidelity
    assert fidelity(h.scaled(3.7), lam).fidelity == pytest.approx(f1, rel=1e-12)


def test_fidelity_report_product_structure():
    b = basis_descriptor(10, 5)
    rng = np.random.default_rng(3)
    rep = fidelity(CouplingVector(b, rng.standard_normal(b.size)), 0.63)
    assert rep.fidelity == pytest.approx(float(np.prod(rep.per_k)), abs=1e-12)
    assert np.all(rep.per_k > 0)
    assert math.log(rep.fidelity) == pytest.approx(
        float(np.sum(np.log(rep.per_k))), abs=1e-12)
    assert 0.0 <= rep.fidelity <= 1.0
    assert rep.l == 5


def test_fidelity_degenerate_mode_rule():
    b = basis_descriptor(8, 1)
    rep = fidelity(CouplingVector(b, np.zeros(b.size)), 0.3)
    assert rep.degenerate_modes == tuple(range(4))
    assert rep.fidelity == pytest.approx(0.5 ** 4)


def test_energy():
    b = basis_descriptor(8, 2)
    assert energy(CouplingVector(b, np.zeros(b.size))) == 0.0
    # a range-1 pairing coupling normalized per mode: energy -sum_k |w_k|
    h = unit_coupling(b, 1, "X")
    w = field_of(h).w
    assert energy(h) == pytest.approx(float(-np.sum(np.linalg.norm(w, axis=1))))
