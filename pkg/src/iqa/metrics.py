"""Adiabaticity and locality diagnostics.

Covers the relative coupling-space distance R between runs of different
annealing time, its maximum over the path, the minimal interaction range
l_epsilon reaching a target fidelity, range-resolved coupling norms, and the
effective ranges of coupling vectors and commutator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .annealer import DEFAULT_SAMPLE_COUNT, DEFAULT_STEPS_PER_UNIT_TIME, Trajectory
from .cache import TrajectoryCache
from .commutator import CommutatorMatrix
from .model import CouplingVector
from .spectra import fidelity

__all__ = ["RangeProfile", "relative_distance", "max_R", "l_epsilon",
           "range_profile", "r_avg_h", "r_avg_K"]


@dataclass(frozen=True)
class RangeProfile:
    """Euclidean norm of the couplings grouped by interaction range."""

    norms: dict[int, float]


def _as_array(h) -> np.ndarray:
    if isinstance(h, CouplingVector):
        return h.h
    return np.asarray(h, dtype=float)


def relative_distance(h_a, h_b) -> float:
    """||h_a - h_b|| / ||h_b|| (the basis is orthogonal with equal norms, so
    this is the relative Hilbert-Schmidt distance of the two Hamiltonians)."""
    a, b = _as_array(h_a), _as_array(h_b)
    if a.shape != b.shape:
        raise ValueError("coupling vectors live in different bases")
    nb = float(np.linalg.norm(b))
    if nb == 0.0:
        raise ValueError("reference couplings have zero norm")
    return float(np.linalg.norm(a - b) / nb)


def max_R(traj_T: Trajectory, traj_2T: Trajectory) -> tuple[float, float]:
    """Location and value of the largest pointwise R over the shared grid."""
    if traj_T.sample_count != traj_2T.sample_count or \
            not np.array_equal(traj_T.lams, traj_2T.lams):
        raise ValueError("trajectories were recorded on different lambda grids")
    denom = np.linalg.norm(traj_T.hs, axis=1)
    if np.any(denom == 0.0):
        raise ValueError("reference trajectory contains a zero sample")
    R = np.linalg.norm(traj_2T.hs - traj_T.hs, axis=1) / denom
    j = int(np.argmax(R))
    return float(traj_T.lams[j]), float(R[j])


def l_epsilon(lam: float, N: int, eps: float, T: float, *,
              cache: TrajectoryCache | None = None,
              steps_per_unit_time: float = DEFAULT_STEPS_PER_UNIT_TIME,
              sample_count: int = DEFAULT_SAMPLE_COUNT) -> int | None:
    """Least range l with fidelity >= 1 - eps for every l' >= l, or None.

    Runs (or reads from the cache) one annealing per range l = 1 .. N/2 and
    evaluates the fidelity at the recorded lambda closest to the requested
    one.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if cache is None:
        cache = TrajectoryCache()
    fids = []
    for l in range(1, N // 2 + 1):
        traj = cache.run(N, l, T, steps_per_unit_time=steps_per_unit_time,
                         sample_count=sample_count)
        j = traj.index_of_lambda(lam)
        fids.append(fidelity(traj.coupling_at(j), float(traj.lams[j])).fidelity)
    ok = np.array(fids) >= 1.0 - eps
    # suffix requirement: every larger range must stay above threshold too
    good_from = None
    for i in range(len(ok) - 1, -1, -1):
        if not ok[i]:
            break
        good_from = i
    return None if good_from is None else good_from + 1


def range_profile(h: CouplingVector) -> RangeProfile:
    """Group squared coefficients by interaction range and take square roots."""
    ranges = h.basis.ranges
    norms = {r: float(np.sqrt(np.sum(h.h[ranges == r] ** 2)))
             for r in range(h.basis.l + 1)}
    return RangeProfile(norms=norms)


def r_avg_h(h: CouplingVector) -> float:
    """Norm-weighted mean interaction range sum_r r ||h_r|| / sum_r ||h_r||."""
    profile = range_profile(h)
    total = sum(profile.norms.values())
    if total == 0.0:
        raise ValueError("cannot define a range for the zero coupling vector")
    return sum(r * v for r, v in profile.norms.items()) / total


def r_avg_K(K: CommutatorMatrix) -> float:
    """Correlation range sum_ij |i-j| |K_ij| / sum_ij |K_ij| over canonical
    label indices."""
    A = np.abs(K.entries)
    total = A.sum()
    if total == 0.0:
        raise ValueError("cannot define a range for the zero matrix")
    idx = np.arange(A.shape[0])
    dist = np.abs(idx[:, None] - idx[None, :])
    return float((dist * A).sum() / total)
