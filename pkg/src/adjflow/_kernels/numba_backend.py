"""Numba implementations of the hot kernels.

All kernels work on raw float64 arrays.  A sampled grid with array shape
(n0, n1) has sample k=(i,j) at position (o0 + i*dx, o1 + j*dx); callers pass
the per-family origin (faces vs centers).  Query positions are clamped
componentwise to the valid sampling box of each family, so stencils never
leave the arrays and out-of-domain map positions degrade gracefully.
"""

import numpy as np
from numba import njit, prange

_JIT = dict(cache=True, fastmath=True, nogil=True)


# --- 1D B-spline weights ----------------------------------------------------

@njit(inline="always")
def _w2(t):
    # quadratic B-spline, support 1.5
    a = abs(t)
    if a <= 0.5:
        return 0.75 - t * t
    if a <= 1.5:
        d = 1.5 - a
        return 0.5 * d * d
    return 0.0


@njit(inline="always")
def _w3(t):
    # cubic B-spline, support 2
    a = abs(t)
    if a <= 1.0:
        return 2.0 / 3.0 - t * t + 0.5 * a * a * a
    if a <= 2.0:
        d = 2.0 - a
        return d * d * d / 6.0
    return 0.0


@njit(inline="always")
def _dw3(t):
    a = abs(t)
    if a <= 1.0:
        return -2.0 * t + 1.5 * t * a
    if a <= 2.0:
        d = 2.0 - a
        s = 1.0 if t > 0.0 else -1.0
        return -0.5 * s * d * d
    return 0.0


# --- scalar-point sampling helpers ------------------------------------------

@njit(inline="always")
def _base2(f, n):
    # clamp query to the interior quadratic stencil range
    if f < 0.5:
        f = 0.5
    hi = n - 1.5
    if f > hi:
        f = hi
    b = int(np.floor(f + 0.5))
    if b < 1:
        b = 1
    if b > n - 2:
        b = n - 2
    return f, b


@njit(inline="always")
def _base3(f, n):
    if f < 1.0:
        f = 1.0
    hi = n - 2.0
    if f > hi:
        f = hi
    b = int(np.floor(f))
    if b < 1:
        b = 1
    if b > n - 3:
        b = n - 3
    return f, b


@njit(cache=True, fastmath=True, nogil=True)
def _sample2_at(vals, o0, o1, inv_dx, x, y):
    n0, n1 = vals.shape
    f0, b0 = _base2((x - o0) * inv_dx, n0)
    f1, b1 = _base2((y - o1) * inv_dx, n1)
    t0 = f0 - b0
    t1 = f1 - b1
    wx0 = _w2(t0 + 1.0)
    wx1 = _w2(t0)
    wx2 = _w2(t0 - 1.0)
    wy0 = _w2(t1 + 1.0)
    wy1 = _w2(t1)
    wy2 = _w2(t1 - 1.0)
    r0 = vals[b0 - 1, b1 - 1] * wy0 + vals[b0 - 1, b1] * wy1 + vals[b0 - 1, b1 + 1] * wy2
    r1 = vals[b0, b1 - 1] * wy0 + vals[b0, b1] * wy1 + vals[b0, b1 + 1] * wy2
    r2 = vals[b0 + 1, b1 - 1] * wy0 + vals[b0 + 1, b1] * wy1 + vals[b0 + 1, b1 + 1] * wy2
    return r0 * wx0 + r1 * wx1 + r2 * wx2


@njit(cache=True, fastmath=True, nogil=True)
def _grad3_at(vals, o0, o1, inv_dx, x, y):
    n0, n1 = vals.shape
    f0, b0 = _base3((x - o0) * inv_dx, n0)
    f1, b1 = _base3((y - o1) * inv_dx, n1)
    gx = 0.0
    gy = 0.0
    for a in range(-1, 3):
        tx = f0 - (b0 + a)
        wx = _w3(tx)
        dwx = _dw3(tx)
        for b in range(-1, 3):
            ty = f1 - (b1 + b)
            v = vals[b0 + a, b1 + b]
            gx += v * dwx * _w3(ty)
            gy += v * wx * _dw3(ty)
    return gx * inv_dx, gy * inv_dx


@njit(cache=True, fastmath=True, nogil=True)
def _sample3_at(vals, o0, o1, inv_dx, x, y):
    n0, n1 = vals.shape
    f0, b0 = _base3((x - o0) * inv_dx, n0)
    f1, b1 = _base3((y - o1) * inv_dx, n1)
    acc = 0.0
    for a in range(-1, 3):
        wx = _w3(f0 - (b0 + a))
        for b in range(-1, 3):
            acc += vals[b0 + a, b1 + b] * wx * _w3(f1 - (b1 + b))
    return acc


@njit(cache=True, fastmath=True, nogil=True)
def _vel_at(u, v, ox, oy, dx, inv_dx, x, y):
    a = _sample2_at(u, ox, oy + 0.5 * dx, inv_dx, x, y)
    b = _sample2_at(v, ox + 0.5 * dx, oy, inv_dx, x, y)
    return a, b


@njit(cache=True, fastmath=True, nogil=True)
def _gradvel_at(u, v, ox, oy, dx, inv_dx, x, y):
    # (grad u)_{ij} = d u_i / d x_j
    g00, g01 = _grad3_at(u, ox, oy + 0.5 * dx, inv_dx, x, y)
    g10, g11 = _grad3_at(v, ox + 0.5 * dx, oy, inv_dx, x, y)
    return g00, g01, g10, g11


# --- batched kernels ----------------------------------------------------------

@njit(**_JIT)
def sample2(vals, o0, o1, dx, pts, out):
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        out[k] = _sample2_at(vals, o0, o1, inv_dx, pts[k, 0], pts[k, 1])


@njit(**_JIT)
def sample2_mac(u, v, ox, oy, dx, pts, out):
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        a, b = _vel_at(u, v, ox, oy, dx, inv_dx, pts[k, 0], pts[k, 1])
        out[k, 0] = a
        out[k, 1] = b


@njit(**_JIT)
def sample3(vals, o0, o1, dx, pts, out):
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        out[k] = _sample3_at(vals, o0, o1, inv_dx, pts[k, 0], pts[k, 1])


@njit(**_JIT)
def grad3(vals, o0, o1, dx, pts, out):
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        gx, gy = _grad3_at(vals, o0, o1, inv_dx, pts[k, 0], pts[k, 1])
        out[k, 0] = gx
        out[k, 1] = gy


@njit(**_JIT)
def gradvel3_mac(u, v, ox, oy, dx, pts, out):
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        g00, g01, g10, g11 = _gradvel_at(u, v, ox, oy, dx, inv_dx,
                                         pts[k, 0], pts[k, 1])
        out[k, 0, 0] = g00
        out[k, 0, 1] = g01
        out[k, 1, 0] = g10
        out[k, 1, 1] = g11


@njit(parallel=True, **_JIT)
def rk4_march(pts, jacs, u, v, ox, oy, dx, dt):
    """One RK4 step of dp/dt = w(p), dJ/dt = grad w(p) J through a frozen field."""
    inv_dx = 1.0 / dx
    half = 0.5 * dt
    sixth = dt / 6.0
    for k in prange(pts.shape[0]):
        x = pts[k, 0]
        y = pts[k, 1]
        j00 = jacs[k, 0, 0]
        j01 = jacs[k, 0, 1]
        j10 = jacs[k, 1, 0]
        j11 = jacs[k, 1, 1]

        k1x, k1y = _vel_at(u, v, ox, oy, dx, inv_dx, x, y)
        g00, g01, g10, g11 = _gradvel_at(u, v, ox, oy, dx, inv_dx, x, y)
        a100 = g00 * j00 + g01 * j10
        a101 = g00 * j01 + g01 * j11
        a110 = g10 * j00 + g11 * j10
        a111 = g10 * j01 + g11 * j11

        x2 = x + half * k1x
        y2 = y + half * k1y
        k2x, k2y = _vel_at(u, v, ox, oy, dx, inv_dx, x2, y2)
        g00, g01, g10, g11 = _gradvel_at(u, v, ox, oy, dx, inv_dx, x2, y2)
        b00 = j00 + half * a100
        b01 = j01 + half * a101
        b10 = j10 + half * a110
        b11 = j11 + half * a111
        a200 = g00 * b00 + g01 * b10
        a201 = g00 * b01 + g01 * b11
        a210 = g10 * b00 + g11 * b10
        a211 = g10 * b01 + g11 * b11

        x3 = x + half * k2x
        y3 = y + half * k2y
        k3x, k3y = _vel_at(u, v, ox, oy, dx, inv_dx, x3, y3)
        g00, g01, g10, g11 = _gradvel_at(u, v, ox, oy, dx, inv_dx, x3, y3)
        b00 = j00 + half * a200
        b01 = j01 + half * a201
        b10 = j10 + half * a210
        b11 = j11 + half * a211
        a300 = g00 * b00 + g01 * b10
        a301 = g00 * b01 + g01 * b11
        a310 = g10 * b00 + g11 * b10
        a311 = g10 * b01 + g11 * b11

        x4 = x + dt * k3x
        y4 = y + dt * k3y
        k4x, k4y = _vel_at(u, v, ox, oy, dx, inv_dx, x4, y4)
        g00, g01, g10, g11 = _gradvel_at(u, v, ox, oy, dx, inv_dx, x4, y4)
        b00 = j00 + dt * a300
        b01 = j01 + dt * a301
        b10 = j10 + dt * a310
        b11 = j11 + dt * a311
        a400 = g00 * b00 + g01 * b10
        a401 = g00 * b01 + g01 * b11
        a410 = g10 * b00 + g11 * b10
        a411 = g10 * b01 + g11 * b11

        pts[k, 0] = x + sixth * (k1x + 2.0 * (k2x + k3x) + k4x)
        pts[k, 1] = y + sixth * (k1y + 2.0 * (k2y + k3y) + k4y)
        jacs[k, 0, 0] = j00 + sixth * (a100 + 2.0 * (a200 + a300) + a400)
        jacs[k, 0, 1] = j01 + sixth * (a101 + 2.0 * (a201 + a301) + a401)
        jacs[k, 1, 0] = j10 + sixth * (a110 + 2.0 * (a210 + a310) + a410)
        jacs[k, 1, 1] = j11 + sixth * (a111 + 2.0 * (a211 + a311) + a411)


@njit(**_JIT)
def transform_mac(src_u, src_v, ox, oy, dx, pts, jacs, comp, out):
    """out[k] = [J_k^T w(p_k)]_comp with w interpolated from a MAC field."""
    inv_dx = 1.0 / dx
    for k in prange(pts.shape[0]):
        a, b = _vel_at(src_u, src_v, ox, oy, dx, inv_dx, pts[k, 0], pts[k, 1])
        out[k] = jacs[k, 0, comp] * a + jacs[k, 1, comp] * b


@njit(**_JIT)
def sample2_clamped(vals, o0, o1, dx, pts, out, lo, hi):
    """Quadratic sampling that also reports the stencil min/max per query."""
    inv_dx = 1.0 / dx
    n0, n1 = vals.shape
    for k in prange(pts.shape[0]):
        f0, b0 = _base2((pts[k, 0] - o0) * inv_dx, n0)
        f1, b1 = _base2((pts[k, 1] - o1) * inv_dx, n1)
        t0 = f0 - b0
        t1 = f1 - b1
        acc = 0.0
        mn = vals[b0 - 1, b1 - 1]
        mx = mn
        for a in range(-1, 2):
            wx = _w2(t0 - a)
            for b in range(-1, 2):
                val = vals[b0 + a, b1 + b]
                acc += val * wx * _w2(t1 - b)
                if val < mn:
                    mn = val
                if val > mx:
                    mx = val
        out[k] = acc
        lo[k] = mn
        hi[k] = mx


# --- red-black Gauss-Seidel / multigrid pieces (cell-centered, Neumann) -----

@njit(cache=True, nogil=True)
def rbgs_sweep(p, b, dx2, color):
    n0, n1 = p.shape
    for i in range(n0):
        jstart = (color + i) % 2
        for j in range(jstart, n1, 2):
            s = 0.0
            deg = 0.0
            if i > 0:
                s += p[i - 1, j]
                deg += 1.0
            if i < n0 - 1:
                s += p[i + 1, j]
                deg += 1.0
            if j > 0:
                s += p[i, j - 1]
                deg += 1.0
            if j < n1 - 1:
                s += p[i, j + 1]
                deg += 1.0
            p[i, j] = (s + b[i, j] * dx2) / deg


@njit(cache=True, nogil=True)
def apply_neumann_laplacian(p, out, inv_dx2):
    """out = A p with A = -div grad (Neumann walls); SPD up to constants."""
    n0, n1 = p.shape
    for i in range(n0):
        for j in range(n1):
            s = 0.0
            deg = 0.0
            if i > 0:
                s += p[i - 1, j]
                deg += 1.0
            if i < n0 - 1:
                s += p[i + 1, j]
                deg += 1.0
            if j > 0:
                s += p[i, j - 1]
                deg += 1.0
            if j < n1 - 1:
                s += p[i, j + 1]
                deg += 1.0
            out[i, j] = (deg * p[i, j] - s) * inv_dx2


@njit(cache=True, nogil=True)
def restrict_full(r, rc):
    n0, n1 = rc.shape
    for i in range(n0):
        for j in range(n1):
            rc[i, j] = 0.25 * (r[2 * i, 2 * j] + r[2 * i + 1, 2 * j]
                               + r[2 * i, 2 * j + 1] + r[2 * i + 1, 2 * j + 1])


@njit(cache=True, nogil=True)
def prolong_add(z, zc):
    n0, n1 = z.shape
    for i in range(n0):
        ic = i // 2
        for j in range(n1):
            z[i, j] += zc[ic, j // 2]
