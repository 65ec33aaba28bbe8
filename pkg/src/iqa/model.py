"""Target model and operator-basis bookkeeping for the Kitaev-chain path.

The target family of states is the ground-state path |psi(lambda)> of the
antiperiodic 1D Kitaev chain

    H_K(lambda) = J [ sin(lambda pi/2) * sum_j (c+_j c+_{j+1} + c+_j c_{j+1} + h.c.)
                    + cos(lambda pi/2) * sum_j (c+_j c_j - c_j c+_j) ]

with J = 1 throughout, interpolating from a trivial on-site Hamiltonian at
lambda = 0 to the pairing point at lambda = 1 across the critical point
lambda_c = 1/2.  In the even-parity sector everything reduces to independent
two-level (pseudospin) problems on the half momentum grid

    k = (2n+1) pi / N,   n = 0 .. N/2 - 1,

and the per-momentum ground state is encoded by the unit Bloch vector
(v_x, 0, v_z) computed by :func:`target_bloch`.

Hamiltonians are expanded over an orthogonal basis of translation- and
reflection-invariant quadratic interactions, one triple (X = pairing-real,
Y = pairing-imaginary, Z = hopping) per range m, with scale factors 1/sqrt(2)
on the (0, Z) and (N/2, X/Y) entries so that all basis elements carry the
same Hilbert-Schmidt norm.  :class:`BasisDescriptor` pins the canonical label
order used by every other module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MomentumGrid",
    "BasisDescriptor",
    "TargetBloch",
    "CouplingVector",
    "momentum_grid",
    "basis_descriptor",
    "target_bloch",
    "kitaev_couplings",
    "initial_couplings",
]

ALPHAS = ("X", "Y", "Z")
_ALPHA_CODE = {"X": 0, "Y": 1, "Z": 2}


@dataclass(frozen=True)
class MomentumGrid:
    """Half grid of antiperiodic momenta in (0, pi), ascending."""

    N: int
    ks: np.ndarray

    def __len__(self):
        return len(self.ks)


@dataclass(frozen=True)
class BasisDescriptor:
    """Ordered labels (m, alpha, scale) of the range-l interaction basis.

    Canonical order: (0,Z), (1,X), (1,Y), (1,Z), ..., (l,X), (l,Y), (l,Z);
    for l = N/2 the final triple is replaced by (N/2,X), (N/2,Y) only, both
    scaled by 1/sqrt(2) like the on-site (0,Z) entry.
    """

    N: int
    l: int
    labels: tuple[tuple[int, str, float], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def ranges(self) -> np.ndarray:
        """Range m of each label, in canonical order."""
        return np.array([m for m, _, _ in self.labels], dtype=np.intp)

    @property
    def alpha_codes(self) -> np.ndarray:
        """0/1/2 for X/Y/Z, per label."""
        return np.array([_ALPHA_CODE[a] for _, a, _ in self.labels], dtype=np.int32)

    @property
    def scales(self) -> np.ndarray:
        return np.array([s for _, _, s in self.labels])

    def index(self, m: int, alpha: str) -> int:
        for i, (mm, aa, _) in enumerate(self.labels):
            if mm == m and aa == alpha:
                return i
        raise KeyError(f"label ({m}, {alpha}) not in basis")

    def grid(self) -> MomentumGrid:
        return momentum_grid(self.N)


@dataclass(frozen=True)
class TargetBloch:
    """Normalized per-momentum field of the target ground state.

    v_x**2 + v_z**2 = 1; eps is the Bogoliubov dispersion in units of J and
    theta the pairing angle, continuous in lambda along the whole path.
    """

    v_x: float
    v_z: float
    eps: float
    theta: float


@dataclass(frozen=True)
class CouplingVector:
    """Coefficients over a basis; the evolving Hamiltonian representation."""

    basis: BasisDescriptor
    h: np.ndarray = field(repr=False)

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.shape != (self.basis.size,):
            raise ValueError(
                f"coupling vector has length {h.shape}, basis needs {self.basis.size}")
        if not np.all(np.isfinite(h)):
            raise ValueError("coupling vector contains non-finite entries")
        object.__setattr__(self, "h", h)

    def norm(self) -> float:
        return float(np.linalg.norm(self.h))

    def scaled(self, c: float) -> "CouplingVector":
        return CouplingVector(self.basis, c * self.h)


def momentum_grid(N: int) -> MomentumGrid:
    """Half momentum grid k = (2n+1) pi / N, n = 0 .. N/2 - 1."""
    if N % 2 != 0 or N < 4:
        raise ValueError(f"N must be even and >= 4, got {N}")
    ks = (2 * np.arange(N // 2) + 1) * (np.pi / N)
    ks.flags.writeable = False
    return MomentumGrid(N=N, ks=ks)


def basis_descriptor(N: int, l: int) -> BasisDescriptor:
    """Canonical interaction basis of maximum range l for an N-site chain."""
    momentum_grid(N)  # validates N
    if not 1 <= l <= N // 2:
        raise ValueError(f"need 1 <= l <= N/2 = {N // 2}, got l={l}")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    labels: list[tuple[int, str, float]] = [(0, "Z", inv_sqrt2)]
    for m in range(1, l + 1):
        if m < N // 2:
            labels += [(m, "X", 1.0), (m, "Y", 1.0), (m, "Z", 1.0)]
        else:
            labels += [(m, "X", inv_sqrt2), (m, "Y", inv_sqrt2)]
    return BasisDescriptor(N=N, l=l, labels=tuple(labels))


def target_bloch(lam: float, k: float) -> TargetBloch:
    """Bloch data of the target ground state at momentum k.

    eps**2 = 1 + 2 sin(lam pi/2) cos(lam pi/2) cos(k); the field components
    are v_x = -sin(lam pi/2) sin(k) / eps and
    v_z = -(cos(lam pi/2) + sin(lam pi/2) cos(k)) / eps.  theta is half the
    phase of (v_z, v_x) measured with atan2 so it stays continuous in lambda,
    starting from theta = 0 at lambda = 0 for every k.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    s = math.sin(lam * math.pi / 2)
    c = math.cos(lam * math.pi / 2)
    wx = s * math.sin(k)
    wz = c + s * math.cos(k)
    eps = math.hypot(wx, wz)
    theta = 0.5 * math.atan2(wx, wz)
    return TargetBloch(v_x=-wx / eps, v_z=-wz / eps, eps=eps, theta=theta)


def _bloch_arrays(lam: float, ks: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(v_x, v_z, eps) over a whole momentum grid; same math as target_bloch."""
    s = math.sin(lam * math.pi / 2)
    c = math.cos(lam * math.pi / 2)
    wx = s * np.sin(ks)
    wz = c + s * np.cos(ks)
    eps = np.sqrt(wx * wx + wz * wz)
    return -wx / eps, -wz / eps, eps


def kitaev_couplings(lam: float, basis: BasisDescriptor) -> CouplingVector:
    """Expansion of H_K(lambda)/J over the basis.

    Only the (0,Z), (1,X) and (1,Z) coefficients are nonzero:
    sqrt(2N) cos(lam pi/2) on-site, sqrt(N) sin(lam pi/2) on both range-1
    entries.
    """
    if basis.l < 1:
        raise ValueError("basis must contain at least range-1 interactions")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    N = basis.N
    h = np.zeros(basis.size)
    h[basis.index(0, "Z")] = math.sqrt(2 * N) * math.cos(lam * math.pi / 2)
    h[basis.index(1, "X")] = math.sqrt(N) * math.sin(lam * math.pi / 2)
    h[basis.index(1, "Z")] = math.sqrt(N) * math.sin(lam * math.pi / 2)
    return CouplingVector(basis, h)


def initial_couplings(basis: BasisDescriptor) -> CouplingVector:
    """Unit-norm couplings of the flow's starting Hamiltonian.

    Equals kitaev_couplings(0, basis) normalized: a single unit coefficient
    on the on-site (0, Z) label.
    """
    h = np.zeros(basis.size)
    h[basis.index(0, "Z")] = 1.0
    return CouplingVector(basis, h)
