"""Coupling-flow integrator.

Integrates the linear ODE dh_i/dt = sum_j K_ij(lambda(t)) h_j along the
linear schedule lambda(t) = t/T with classical fixed-step RK4, rebuilding the
skew generator at t, t + dt/2 and t + dt of each step.  The exact flow is
norm-preserving, so the coupling norm is monitored every step and a drift
beyond ten times the accepted tolerance aborts the run.

Samples are recorded on an evenly spaced lambda grid whose points fall
exactly on integration steps, so trajectories with different T but the same
sample count can be compared pointwise without interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .commutator import fourier_slices
from .errors import IntegrationError
from .model import BasisDescriptor, CouplingVector, momentum_grid

__all__ = ["NORM_TOL", "Schedule", "IntegratorConfig", "Trajectory",
           "anneal", "anneal_pair"]

# Accepted relative drift of ||h|| over a full run; 10x this aborts.
NORM_TOL = 1e-6

# Default step density: dt = 0.1 in units of 1/J (the generator has unit
# spectral norm, so this resolves the fastest precession comfortably).
DEFAULT_STEPS_PER_UNIT_TIME = 10.0
DEFAULT_SAMPLE_COUNT = 201


@dataclass(frozen=True)
class Schedule:
    """Linear annealing schedule lambda(t) = t/T."""

    T: float
    shape: str = "linear"

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError(f"final time must be positive, got {self.T}")
        if self.shape != "linear":
            raise ValueError(f"unsupported schedule shape {self.shape!r}")


@dataclass(frozen=True)
class IntegratorConfig:
    """Uniform-step RK4 configuration.

    sample_count includes both endpoints and (sample_count - 1) must divide
    steps so every recorded lambda lands exactly on a step boundary.
    """

    steps: int
    sample_count: int = DEFAULT_SAMPLE_COUNT

    def __post_init__(self):
        if self.sample_count < 2:
            raise ValueError("need at least two samples (both endpoints)")
        if self.steps < self.sample_count - 1:
            raise ValueError("steps must be >= sample_count - 1")
        if self.steps % (self.sample_count - 1) != 0:
            raise ValueError(
                f"sample grid must hit steps exactly: (sample_count - 1) = "
                f"{self.sample_count - 1} does not divide steps = {self.steps}")

    @classmethod
    def for_time(cls, T: float, steps_per_unit_time: float = DEFAULT_STEPS_PER_UNIT_TIME,
                 sample_count: int = DEFAULT_SAMPLE_COUNT) -> "IntegratorConfig":
        """Smallest step count with dt <= 1/steps_per_unit_time that the
        sample grid divides."""
        if T <= 0 or steps_per_unit_time <= 0:
            raise ValueError("T and steps_per_unit_time must be positive")
        chunks = max(1, math.ceil(T * steps_per_unit_time / (sample_count - 1)))
        return cls(steps=chunks * (sample_count - 1), sample_count=sample_count)


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples {(t_j, lambda_j, h_j)} of one annealing run."""

    basis: BasisDescriptor
    schedule: Schedule
    ts: np.ndarray = field(repr=False)
    lams: np.ndarray = field(repr=False)
    hs: np.ndarray = field(repr=False)  # (sample_count, basis.size)
    meta: dict = field(default_factory=dict)

    @property
    def sample_count(self) -> int:
        return len(self.lams)

    def samples(self):
        """Iterate (t, lambda, h) tuples in time order."""
        for j in range(len(self.ts)):
            yield float(self.ts[j]), float(self.lams[j]), self.hs[j]

    def coupling_at(self, j: int) -> CouplingVector:
        return CouplingVector(self.basis, self.hs[j].copy())

    def index_of_lambda(self, lam: float) -> int:
        """Index of the recorded sample closest to lam."""
        return int(np.argmin(np.abs(self.lams - lam)))


def _kernel_arrays(basis: BasisDescriptor):
    Fx, Fy, Fz = fourier_slices(basis)
    weights = np.ascontiguousarray(Fx + Fy + Fz)
    alphas = basis.alpha_codes
    ks = momentum_grid(basis.N).ks
    return weights, alphas, np.sin(ks), np.cos(ks)


def anneal(start: CouplingVector, schedule: Schedule, cfg: IntegratorConfig,
           *, freeze_lambda: float | None = None, backend: str | None = None) -> Trajectory:
    """Integrate the coupling flow from the given starting couplings.

    freeze_lambda pins the generator to one fixed lambda (propagator test
    hook); the schedule then only sets the total time.  Raises
    IntegrationError when the coupling norm drifts by more than 10 * NORM_TOL
    relative to its initial value.
    """
    basis = start.basis
    weights, alphas, sin_k, cos_k = _kernel_arrays(basis)
    kernel = _backend.get_backend(backend)
    stride = cfg.steps // (cfg.sample_count - 1)
    samples = np.empty((cfg.sample_count, basis.size))
    frozen = freeze_lambda is not None
    worst, worst_step = kernel.integrate(
        weights, alphas, sin_k, cos_k, np.ascontiguousarray(start.h, dtype=float),
        schedule.T, cfg.steps, stride,
        freeze_lambda if frozen else 0.0, frozen, samples)
    nrm0 = start.norm()
    if nrm0 > 0 and worst > 10.0 * NORM_TOL * nrm0:
        raise IntegrationError(
            f"coupling norm drifted by {worst / nrm0:.3e} (relative) at step "
            f"{worst_step} of {cfg.steps}; tolerance is {NORM_TOL:.1e}")
    idx = np.arange(cfg.sample_count) * stride
    lams = idx / cfg.steps
    meta = {"N": basis.N, "l": basis.l, "T": schedule.T, "steps": cfg.steps,
            "sample_count": cfg.sample_count, "backend": kernel.BACKEND_NAME,
            "worst_drift": float(worst), "worst_drift_step": int(worst_step)}
    if frozen:
        meta["freeze_lambda"] = float(freeze_lambda)
    return Trajectory(basis=basis, schedule=schedule, ts=lams * schedule.T,
                      lams=lams, hs=samples, meta=meta)


def anneal_pair(start: CouplingVector, T: float, *,
                steps_per_unit_time: float = DEFAULT_STEPS_PER_UNIT_TIME,
                sample_count: int = DEFAULT_SAMPLE_COUNT,
                backend: str | None = None) -> tuple[Trajectory, Trajectory]:
    """Two runs at final times T and 2T sharing one lambda sample grid."""
    cfg_T = IntegratorConfig.for_time(T, steps_per_unit_time, sample_count)
    cfg_2T = IntegratorConfig(steps=2 * cfg_T.steps, sample_count=sample_count)
    traj_T = anneal(start, Schedule(T), cfg_T, backend=backend)
    traj_2T = anneal(start, Schedule(2 * T), cfg_2T, backend=backend)
    return traj_T, traj_2T
