import numpy as np
import pytest

from iqa import (CommutatorMatrix, CouplingVector, anneal_pair,
                 basis_descriptor, initial_couplings, kitaev_couplings,
                 l_epsilon, max_R, r_avg_K, r_avg_h, range_profile,
                 relative_distance)
from iqa.cache import TrajectoryCache, make_key


def test_relative_distance_basics():
    b = basis_descriptor(8, 2)
    h = kitaev_couplings(0.4, b)
    assert relative_distance(h, h) == 0.0
    assert relative_distance(h.scaled(2.0), h) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        relative_distance(h, h.scaled(0.0))
    with pytest.raises(ValueError):
        relative_distance(np.ones(3), np.ones(4))


def test_relative_distance_rescaling_invariance():
    b = basis_descriptor(8, 3)
    rng = np.random.default_rng(2)
    a = CouplingVector(b, rng.standard_normal(b.size))
    c = CouplingVector(b, rng.standard_normal(b.size))
    r = relative_distance(a, c)
    assert relative_distance(a.scaled(5.5), c.scaled(5.5)) == pytest.approx(r, rel=1e-12)


def test_max_R_identical_zero_and_grid_mismatch():
    b = basis_descriptor(8, 2)
    ta, tb = anneal_pair(initial_couplings(b), 10.0, sample_count=11)
    lam_star, r_star = max_R(ta, ta)
    assert r_star == 0.0
    tc, _ = anneal_pair(initial_couplings(b), 10.0, sample_count=6)
    with pytest.raises(ValueError):
        max_R(ta, tc)


def test_range_profile_and_parseval():
    b = basis_descriptor(8, 4)
    h = kitaev_couplings(0.7, b)
    profile = range_profile(h)
    assert set(profile.norms) == set(range(5))
    assert profile.norms[2] == profile.norms[3] == profile.norms[4] == 0.0
    assert sum(v ** 2 for v in profile.norms.values()) == pytest.approx(
        h.norm() ** 2, rel=1e-12)


def test_r_avg_h_examples():
    b = basis_descriptor(8, 2)
    h = np.zeros(b.size)
    h[b.index(1, "X")] = 0.6
    h[b.index(1, "Z")] = -0.8
    assert r_avg_h(CouplingVector(b, h)) == pytest.approx(1.0)
    h = np.zeros(b.size)
    h[b.index(0, "Z")] = 0.5
    h[b.index(2, "Y")] = 0.5
    assert r_avg_h(CouplingVector(b, h)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        r_avg_h(CouplingVector(b, np.zeros(b.size)))


def test_r_avg_K_examples():
    b = basis_descriptor(8, 2)
    d = b.size
    entries = np.zeros((d, d))
    for i in range(d - 1):
        entries[i, i + 1] = 1.0
        entries[i + 1, i] = -1.0
    K = CommutatorMatrix(basis=b, lam=0.0, entries=entries)
    assert r_avg_K(K) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        r_avg_K(CommutatorMatrix(basis=b, lam=0.0, entries=np.zeros((d, d))))


def test_l_epsilon_trivial_and_monotone(tmp_path):
    cache = TrajectoryCache(tmp_path)
    # at lambda = 0 every range reproduces the starting Hamiltonian exactly
    assert l_epsilon(0.0, 8, 0.005, 10.0, cache=cache, sample_count=11) == 1
    # tighter epsilon can only push the required range up
    N, T = 12, 400.0
    values = [l_epsilon(0.55, N, eps, T, cache=cache, sample_count=21)
              for eps in (0.3, 0.05, 0.005)]
    assert all(v is not None for v in values)
    assert values[0] <= values[1] <= values[2]
    with pytest.raises(ValueError):
        l_epsilon(0.5, 8, 1.5, 10.0, cache=cache)


def test_cache_roundtrip_bit_identical(tmp_path):
    cache = TrajectoryCache(tmp_path)
    t1 = cache.run(8, 2, 10.0, sample_count=11)
    key = make_key(8, 2, 10.0, t1.meta["steps"])
    assert (tmp_path / f"{key}.npz").exists()
    # a fresh cache instance reads the stored samples back bit-identically
    t2 = TrajectoryCache(tmp_path).run(8, 2, 10.0, sample_count=11)
    assert np.array_equal(t1.hs, t2.hs)
    assert np.array_equal(t1.lams, t2.lams)


def test_cache_key_injective():
    a = make_key(50, 6, 1000.0, 10000)
    assert a == make_key(50, 6, 1000.0, 10000)
    assert a != make_key(50, 6, 2000.0, 20000)
    assert a != make_key(50, 4, 1000.0, 10000)
    assert make_key(8, 2, 10.5, 200) != make_key(8, 2, 10.0, 200)
