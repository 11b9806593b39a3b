"""Compiled versions of the kernels in :mod:`pgcurves._kernels_py`."""
import numpy as np

cdef double[5] W1 = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0]
cdef double[5] W2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0]
cdef double[5] W3 = [-0.5, 1.0, 0.0, -1.0, 0.5]
cdef double[5] W4 = [1.0, -4.0, 6.0, -4.0, 1.0]


def cumulative_simpson(f, double h):
    cdef const double[:] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t n = fv.shape[0]
    out = np.zeros(n)
    cdef double[:] o = out
    cdef Py_ssize_t i
    cdef double acc = 0.0
    if n < 3:
        if n == 2:
            o[1] = 0.5 * h * (fv[0] + fv[1])
        return out
    for i in range(2, n, 2):
        o[i - 1] = acc + h / 12.0 * (5.0 * fv[i - 2] + 8.0 * fv[i - 1] - fv[i])
        acc = acc + h / 3.0 * (fv[i - 2] + 4.0 * fv[i - 1] + fv[i])
        o[i] = acc
    if n % 2 == 0:
        o[n - 1] = o[n - 2] + h / 12.0 * (-fv[n - 3] + 8.0 * fv[n - 2] + 5.0 * fv[n - 1])
    return out


def rk4_msystem(double s0, double h, kappa_nodes, kappa_mid, tau_nodes, tau_mid,
                double c0, double m1_start, double m2_start):
    cdef const double[:] kn = np.ascontiguousarray(kappa_nodes, dtype=np.float64)
    cdef const double[:] km = np.ascontiguousarray(kappa_mid, dtype=np.float64)
    cdef const double[:] tn = np.ascontiguousarray(tau_nodes, dtype=np.float64)
    cdef const double[:] tm = np.ascontiguousarray(tau_mid, dtype=np.float64)
    cdef Py_ssize_t n = kn.shape[0]
    m1 = np.empty(n)
    m2 = np.empty(n)
    cdef double[:] o1 = m1
    cdef double[:] o2 = m2
    cdef double a = m1_start, b = m2_start, half = 0.5 * h, s
    cdef double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, a2, b2, a3, b3, a4, b4
    cdef Py_ssize_t i
    o1[0] = a
    o2[0] = b
    for i in range(n - 1):
        s = s0 + i * h
        k1a = -kn[i] * (s + c0) - tn[i] * b
        k1b = -tn[i] * a
        a2 = a + half * k1a
        b2 = b + half * k1b
        k2a = -km[i] * (s + half + c0) - tm[i] * b2
        k2b = -tm[i] * a2
        a3 = a + half * k2a
        b3 = b + half * k2b
        k3a = -km[i] * (s + half + c0) - tm[i] * b3
        k3b = -tm[i] * a3
        a4 = a + h * k3a
        b4 = b + h * k3b
        k4a = -kn[i + 1] * (s + h + c0) - tn[i + 1] * b4
        k4b = -tn[i + 1] * a4
        a = a + h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b = b + h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        o1[i + 1] = a
        o2[i + 1] = b
    return m1, m2


def richardson_interior(f, double h, int order):
    cdef const double[:] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t n = fv.shape[0]
    out = np.full(n, np.nan)
    cdef double[:] o = out
    cdef double* w
    cdef int p, err
    if order == 1:
        w, p, err = W1, 1, 4
    elif order == 2:
        w, p, err = W2, 2, 4
    elif order == 3:
        w, p, err = W3, 3, 2
    elif order == 4:
        w, p, err = W4, 4, 2
    else:
        raise ValueError("order must be 1..4")
    if n < 9:
        return out
    cdef double hp = h ** p, h2p = (2.0 * h) ** p, r = 2.0 ** err
    cdef double dh, d2h
    cdef Py_ssize_t i
    cdef int j
    for i in range(4, n - 4):
        dh = 0.0
        d2h = 0.0
        for j in range(5):
            dh += w[j] * fv[i + j - 2]
            d2h += w[j] * fv[i + 2 * (j - 2)]
        o[i] = (r * dh / hp - d2h / h2p) / (r - 1.0)
    return out
