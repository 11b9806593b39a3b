"""Pure-Python/numpy implementations of the hot numeric kernels.

Signatures match :mod:`pgcurves._ckernels` exactly; :mod:`pgcurves.kernels`
picks one of the two at import time.
"""
import numpy as np

# 5-point central stencils: (weights for offsets -2..2, divisor power, leading error order)
_STENCILS = {
    1: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, 1, 4),
    2: (np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0, 2, 4),
    3: (np.array([-1.0, 2.0, 0.0, -2.0, 1.0]) / 2.0, 3, 2),
    4: (np.array([1.0, -4.0, 6.0, -4.0, 1.0]), 4, 2),
}


def cumulative_simpson(f, h):
    """Running composite-Simpson integral of uniformly sampled ``f`` from index 0.

    Even indices carry the exact composite Simpson partial sum. Odd indices
    add a half-panel rule from the quadratic through the enclosing panel.
    """
    f = np.asarray(f, dtype=float)
    n = f.shape[0]
    out = np.zeros(n)
    if n < 3:
        if n == 2:
            out[1] = 0.5 * h * (f[0] + f[1])
        return out
    m = (n - 1) // 2
    f0 = f[0:2 * m - 1:2]
    f1 = f[1:2 * m:2]
    f2 = f[2:2 * m + 1:2]
    panels = h / 3.0 * (f0 + 4.0 * f1 + f2)
    acc = np.cumsum(panels)
    out[2:2 * m + 1:2] = acc
    starts = np.concatenate(([0.0], acc[:-1]))
    out[1:2 * m:2] = starts + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2)
    if n % 2 == 0:
        out[n - 1] = out[n - 2] + h / 12.0 * (-f[n - 3] + 8.0 * f[n - 2] + 5.0 * f[n - 1])
    return out


def rk4_msystem(s0, h, kappa_nodes, kappa_mid, tau_nodes, tau_mid, c0, m1_start, m2_start):
    """Classical RK4 for m1' = -kappa*(s + c0) - tau*m2, m2' = -tau*m1.

    ``kappa_mid``/``tau_mid`` hold the coefficient values at ``s_i + h/2``.
    """
    n = len(kappa_nodes)
    m1 = np.empty(n)
    m2 = np.empty(n)
    a, b = float(m1_start), float(m2_start)
    m1[0], m2[0] = a, b
    half = 0.5 * h
    for i in range(n - 1):
        s = s0 + i * h
        k, t = kappa_nodes[i], tau_nodes[i]
        km, tm = kappa_mid[i], tau_mid[i]
        k1a = -k * (s + c0) - t * b
        k1b = -t * a
        a2, b2 = a + half * k1a, b + half * k1b
        k2a = -km * (s + half + c0) - tm * b2
        k2b = -tm * a2
        a3, b3 = a + half * k2a, b + half * k2b
        k3a = -km * (s + half + c0) - tm * b3
        k3b = -tm * a3
        a4, b4 = a + h * k3a, b + h * k3b
        k4a = -kappa_nodes[i + 1] * (s + h + c0) - tau_nodes[i + 1] * b4
        k4b = -tau_nodes[i + 1] * a4
        a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        m1[i + 1], m2[i + 1] = a, b
    return m1, m2


def richardson_interior(f, h, order):
    """Richardson-combined 5-point derivative at indices 4..n-5 (others left NaN)."""
    f = np.asarray(f, dtype=float)
    n = f.shape[0]
    out = np.full(n, np.nan)
    if n < 9:
        return out
    w, p, err = _STENCILS[order]
    i = np.arange(4, n - 4)
    d_h = sum(w[j] * f[i + j - 2] for j in range(5)) / h ** p
    d_2h = sum(w[j] * f[i + 2 * (j - 2)] for j in range(5)) / (2.0 * h) ** p
    r = 2.0 ** err
    out[4:n - 4] = (r * d_h - d_2h) / (r - 1.0)
    return out
