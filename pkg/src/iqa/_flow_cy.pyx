# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled integration kernel for the coupling flow (twin of _flow_py)."""

import numpy as np

from libc.math cimport sin, cos, sqrt, fabs, M_PI

BACKEND_NAME = "cython"


cdef void _fields(double lam, double[::1] sin_k, double[::1] cos_k,
                  double[::1] vx, double[::1] vz) noexcept nogil:
    cdef Py_ssize_t M = sin_k.shape[0]
    cdef double s = sin(lam * M_PI / 2.0)
    cdef double c = cos(lam * M_PI / 2.0)
    cdef double wx, wz, e
    cdef Py_ssize_t n
    for n in range(M):
        wx = -s * sin_k[n]
        wz = -(c + s * cos_k[n])
        e = sqrt(wx * wx + wz * wz)
        vx[n] = wx / e
        vz[n] = wz / e


cdef void _apply(double[:, ::1] W, int[::1] alphas,
                 double[::1] vx, double[::1] vz,
                 double[::1] x, double[::1] y,
                 double[:, ::1] u, double[:, ::1] t) noexcept nogil:
    cdef Py_ssize_t d = W.shape[0]
    cdef Py_ssize_t M = W.shape[1]
    cdef Py_ssize_t i, n
    cdef int a
    cdef double xi, acc
    for n in range(M):
        u[0, n] = 0.0
        u[1, n] = 0.0
        u[2, n] = 0.0
    for i in range(d):
        a = alphas[i]
        xi = x[i]
        for n in range(M):
            u[a, n] += W[i, n] * xi
    for n in range(M):
        t[0, n] = vz[n] * u[1, n]
        t[1, n] = vx[n] * u[2, n] - vz[n] * u[0, n]
        t[2, n] = -vx[n] * u[1, n]
    for i in range(d):
        a = alphas[i]
        acc = 0.0
        for n in range(M):
            acc += W[i, n] * t[a, n]
        y[i] = acc


def apply_generator(weights, alphas, sin_k, cos_k, double lam, x):
    """y = K(lam) @ x via the momentum-factorized form."""
    cdef double[:, ::1] W = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int[::1] al = np.ascontiguousarray(alphas, dtype=np.int32)
    cdef double[::1] sk = np.ascontiguousarray(sin_k, dtype=np.float64)
    cdef double[::1] ck = np.ascontiguousarray(cos_k, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t M = sk.shape[0]
    y = np.empty(W.shape[0])
    cdef double[::1] yv = y
    vx = np.empty(M); vz = np.empty(M)
    cdef double[::1] vxv = vx, vzv = vz
    u = np.empty((3, M)); t = np.empty((3, M))
    cdef double[:, ::1] uv = u, tv = t
    _fields(lam, sk, ck, vxv, vzv)
    _apply(W, al, vxv, vzv, xv, yv, uv, tv)
    return y


def integrate(weights, alphas, sin_k, cos_k, h0, double T, long steps, long stride,
              double freeze_lambda, bint frozen, samples_out):
    """Run the RK4 loop; fills samples_out and returns (worst_drift, worst_step)."""
    cdef double[:, ::1] W = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int[::1] al = np.ascontiguousarray(alphas, dtype=np.int32)
    cdef double[::1] sk = np.ascontiguousarray(sin_k, dtype=np.float64)
    cdef double[::1] ck = np.ascontiguousarray(cos_k, dtype=np.float64)
    cdef double[:, ::1] out = samples_out
    cdef Py_ssize_t d = W.shape[0]
    cdef Py_ssize_t M = sk.shape[0]

    scratch = np.empty((10, d))
    cdef double[:, ::1] sc = scratch
    cdef double[::1] h = sc[0], k1 = sc[1], k2 = sc[2], k3 = sc[3], k4 = sc[4], tmp = sc[5]
    vbuf = np.empty((6, M))
    cdef double[:, ::1] vb = vbuf
    cdef double[::1] vx0 = vb[0], vz0 = vb[1], vxm = vb[2], vzm = vb[3], vx1 = vb[4], vz1 = vb[5]
    ubuf = np.empty((3, M)); tbuf = np.empty((3, M))
    cdef double[:, ::1] uv = ubuf, tv = tbuf

    cdef double[::1] h0v = np.ascontiguousarray(h0, dtype=np.float64)
    cdef Py_ssize_t i
    cdef long s
    cdef double dt = T / steps
    cdef double nrm0 = 0.0, nrm, drift, worst = 0.0
    cdef long worst_step = 0
    cdef double lam0, lamm, lam1

    for i in range(d):
        h[i] = h0v[i]
        out[0, i] = h0v[i]
        nrm0 += h0v[i] * h0v[i]
    nrm0 = sqrt(nrm0)

    if frozen:
        _fields(freeze_lambda, sk, ck, vx0, vz0)

    with nogil:
        for s in range(steps):
            if not frozen:
                lam0 = s / (<double> steps)
                lamm = (s + 0.5) / (<double> steps)
                lam1 = (s + 1.0) / (<double> steps)
                _fields(lam0, sk, ck, vx0, vz0)
                _fields(lamm, sk, ck, vxm, vzm)
                _fields(lam1, sk, ck, vx1, vz1)
                _apply(W, al, vx0, vz0, h, k1, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + (0.5 * dt) * k1[i]
                _apply(W, al, vxm, vzm, tmp, k2, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + (0.5 * dt) * k2[i]
                _apply(W, al, vxm, vzm, tmp, k3, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + dt * k3[i]
                _apply(W, al, vx1, vz1, tmp, k4, uv, tv)
            else:
                _apply(W, al, vx0, vz0, h, k1, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + (0.5 * dt) * k1[i]
                _apply(W, al, vx0, vz0, tmp, k2, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + (0.5 * dt) * k2[i]
                _apply(W, al, vx0, vz0, tmp, k3, uv, tv)
                for i in range(d):
                    tmp[i] = h[i] + dt * k3[i]
                _apply(W, al, vx0, vz0, tmp, k4, uv, tv)
            nrm = 0.0
            for i in range(d):
                h[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                nrm += h[i] * h[i]
            drift = fabs(sqrt(nrm) - nrm0)
            if drift > worst:
                worst = drift
                worst_step = s + 1
            if (s + 1) % stride == 0:
                for i in range(d):
                    out[(s + 1) // stride, i] = h[i]
    return worst, worst_step
