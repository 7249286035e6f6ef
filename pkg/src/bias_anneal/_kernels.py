"""Jit-compiled inner loop of the split-step propagator.

One step over [t, t+dt] with midpoint-frozen coefficients A, B = B(t+dt/2) is

    exp(-i dt/2 D) exp(-i dt B X) exp(-i dt/2 D),
    D = A*cost + B*sum_m h_m sigma^z_m,   X = sum_m sigma^x_m.

The loop below evaluates the same product with two exact algebraic
rearrangements: adjacent cost half-phases of consecutive steps are fused into
one full-step phase (diagonals commute), and the per-spin z-bias phases are
absorbed into the per-spin x-rotations, giving the 2x2 matrix

    U_m = [[c*w_m, -i*s], [-i*s, c*conj(w_m)]]   on (bit=0, bit=1),

with c = cos(B dt), s = sin(B dt), w_m = exp(i dt B h_m). Complex amplitudes
are carried as separate real/imag arrays; no fastmath, so results are
reproducible bit-for-bit.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def split_step_evolve(re, im, cost, h, a, b0, tau, dt, steps):
    n = len(h)
    dim = re.shape[0]
    half = 0.5 * dt

    cr_h = np.cos(half * a * cost)
    ci_h = -np.sin(half * a * cost)
    # full-step phase = (half-step phase)^2
    cr_f = cr_h * cr_h - ci_h * ci_h
    ci_f = 2.0 * cr_h * ci_h

    for k in range(dim):
        r = re[k] * cr_h[k] - im[k] * ci_h[k]
        im[k] = re[k] * ci_h[k] + im[k] * cr_h[k]
        re[k] = r

    for j in range(steps):
        b = b0 * np.exp(-(j + 0.5) * dt / tau)
        c = np.cos(b * dt)
        s = np.sin(b * dt)
        for m in range(n):
            ang = dt * b * h[m]
            u0r = c * np.cos(ang)
            u0i = c * np.sin(ang)
            lo = 1 << m
            for g in range(0, dim, lo << 1):
                for l in range(g, g + lo):
                    xr = re[l]
                    xi = im[l]
                    yr = re[l + lo]
                    yi = im[l + lo]
                    re[l] = u0r * xr - u0i * xi + s * yi
                    im[l] = u0r * xi + u0i * xr - s * yr
                    re[l + lo] = s * xi + u0r * yr + u0i * yi
                    im[l + lo] = -s * xr + u0r * yi - u0i * yr
        if j < steps - 1:
            for k in range(dim):
                r = re[k] * cr_f[k] - im[k] * ci_f[k]
                im[k] = re[k] * ci_f[k] + im[k] * cr_f[k]
                re[k] = r

    for k in range(dim):
        r = re[k] * cr_h[k] - im[k] * ci_h[k]
        im[k] = re[k] * ci_h[k] + im[k] * cr_h[k]
        re[k] = r
