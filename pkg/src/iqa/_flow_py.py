"""Pure-numpy integration kernel for the coupling flow.

Fallback twin of the compiled kernel in ``_flow_cy``; both implement the same
fixed-step RK4 recursion with the skew generator rebuilt at t, t + dt/2 and
t + dt of every step, and fill an identical sample buffer.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def _slices(weights, alphas):
    Wx = np.where(alphas[:, None] == 0, weights, 0.0)
    Wy = np.where(alphas[:, None] == 1, weights, 0.0)
    Wz = np.where(alphas[:, None] == 2, weights, 0.0)
    return np.ascontiguousarray(Wx), np.ascontiguousarray(Wy), np.ascontiguousarray(Wz)


def _field(lam, sin_k, cos_k):
    s = math.sin(lam * math.pi / 2)
    c = math.cos(lam * math.pi / 2)
    wx = -s * sin_k
    wz = -(c + s * cos_k)
    e = np.sqrt(wx * wx + wz * wz)
    return wx / e, wz / e


def apply_generator(weights, alphas, sin_k, cos_k, lam, x):
    """y = K(lam) @ x via the momentum-factorized form."""
    Wx, Wy, Wz = _slices(weights, alphas)
    vx, vz = _field(lam, sin_k, cos_k)
    ux = Wx.T @ x
    uy = Wy.T @ x
    uz = Wz.T @ x
    return Wx @ (vz * uy) + Wy @ (vx * uz - vz * ux) + Wz @ (-vx * uy)


def integrate(weights, alphas, sin_k, cos_k, h0, T, steps, stride,
              freeze_lambda, frozen, samples_out):
    """Run the RK4 loop; fills samples_out and returns (worst_drift, worst_step)."""
    Wx, Wy, Wz = _slices(weights, alphas)
    dt = T / steps
    h = h0.copy()
    nrm0 = math.sqrt(float(h @ h))
    worst = 0.0
    worst_step = 0
    samples_out[0] = h

    if frozen:
        vfx, vfz = _field(freeze_lambda, sin_k, cos_k)

    def gen(lam, x):
        if frozen:
            vx, vz = vfx, vfz
        else:
            vx, vz = _field(lam, sin_k, cos_k)
        ux = Wx.T @ x
        uy = Wy.T @ x
        uz = Wz.T @ x
        return Wx @ (vz * uy) + Wy @ (vx * uz - vz * ux) + Wz @ (-vx * uy)

    for s in range(steps):
        lam0 = s / steps
        lamm = (s + 0.5) / steps
        lam1 = (s + 1.0) / steps
        k1 = gen(lam0, h)
        k2 = gen(lamm, h + (0.5 * dt) * k1)
        k3 = gen(lamm, h + (0.5 * dt) * k2)
        k4 = gen(lam1, h + dt * k3)
        h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = abs(math.sqrt(float(h @ h)) - nrm0)
        if drift > worst:
            worst = drift
            worst_step = s + 1
        if (s + 1) % stride == 0:
            samples_out[(s + 1) // stride] = h
    return worst, worst_step
