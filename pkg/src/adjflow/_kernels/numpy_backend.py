"""Pure-numpy implementations of the hot kernels (fallback backend).

Mirrors the signatures in numba_backend; selected by ADJFLOW_BACKEND=numpy.
Vectorized gather/stencil operations, noticeably slower than the jitted
versions but dependency-free beyond numpy.
"""

import numpy as np

_DI2 = np.array([-1, 0, 1])
_DI3 = np.array([-1, 0, 1, 2])


def _w2v(t):
    a = np.abs(t)
    out = np.where(a <= 0.5, 0.75 - t * t, 0.0)
    band = (a > 0.5) & (a <= 1.5)
    d = 1.5 - a
    return np.where(band, 0.5 * d * d, out)


def _w3v(t):
    a = np.abs(t)
    out = np.where(a <= 1.0, 2.0 / 3.0 - t * t + 0.5 * a ** 3, 0.0)
    band = (a > 1.0) & (a <= 2.0)
    d = 2.0 - a
    return np.where(band, d ** 3 / 6.0, out)


def _dw3v(t):
    a = np.abs(t)
    out = np.where(a <= 1.0, -2.0 * t + 1.5 * t * a, 0.0)
    band = (a > 1.0) & (a <= 2.0)
    d = 2.0 - a
    return np.where(band, -0.5 * np.sign(t) * d * d, out)


def _frame2(x, o, inv_dx, n):
    f = np.clip((x - o) * inv_dx, 0.5, n - 1.5)
    base = np.clip(np.floor(f + 0.5).astype(np.int64), 1, n - 2)
    return f, base


def _frame3(x, o, inv_dx, n):
    f = np.clip((x - o) * inv_dx, 1.0, n - 2.0)
    base = np.clip(np.floor(f).astype(np.int64), 1, n - 3)
    return f, base


def _gather2(vals, o0, o1, inv_dx, pts):
    n0, n1 = vals.shape
    f0, b0 = _frame2(pts[:, 0], o0, inv_dx, n0)
    f1, b1 = _frame2(pts[:, 1], o1, inv_dx, n1)
    t0 = f0 - b0
    t1 = f1 - b1
    wx = _w2v(t0[:, None] - _DI2[None, :])          # (N,3)
    wy = _w2v(t1[:, None] - _DI2[None, :])
    block = vals[(b0[:, None, None] + _DI2[None, :, None]),
                 (b1[:, None, None] + _DI2[None, None, :])]  # (N,3,3)
    return block, wx, wy


def sample2(vals, o0, o1, dx, pts, out):
    block, wx, wy = _gather2(vals, o0, o1, 1.0 / dx, pts)
    np.einsum("nij,ni,nj->n", block, wx, wy, out=out)


def sample2_mac(u, v, ox, oy, dx, pts, out):
    sample2(u, ox, oy + 0.5 * dx, dx, pts, out[:, 0])
    sample2(v, ox + 0.5 * dx, oy, dx, pts, out[:, 1])


def _gather3(vals, o0, o1, inv_dx, pts):
    n0, n1 = vals.shape
    f0, b0 = _frame3(pts[:, 0], o0, inv_dx, n0)
    f1, b1 = _frame3(pts[:, 1], o1, inv_dx, n1)
    tx = f0[:, None] - (b0[:, None] + _DI3[None, :])
    ty = f1[:, None] - (b1[:, None] + _DI3[None, :])
    block = vals[(b0[:, None, None] + _DI3[None, :, None]),
                 (b1[:, None, None] + _DI3[None, None, :])]  # (N,4,4)
    return block, tx, ty


def sample3(vals, o0, o1, dx, pts, out):
    block, tx, ty = _gather3(vals, o0, o1, 1.0 / dx, pts)
    np.einsum("nij,ni,nj->n", block, _w3v(tx), _w3v(ty), out=out)


def grad3(vals, o0, o1, dx, pts, out):
    inv_dx = 1.0 / dx
    block, tx, ty = _gather3(vals, o0, o1, inv_dx, pts)
    wx, wy = _w3v(tx), _w3v(ty)
    out[:, 0] = np.einsum("nij,ni,nj->n", block, _dw3v(tx), wy) * inv_dx
    out[:, 1] = np.einsum("nij,ni,nj->n", block, wx, _dw3v(ty)) * inv_dx


def gradvel3_mac(u, v, ox, oy, dx, pts, out):
    grad3(u, ox, oy + 0.5 * dx, dx, pts, out[:, 0, :])
    grad3(v, ox + 0.5 * dx, oy, dx, pts, out[:, 1, :])


def _vel(u, v, ox, oy, dx, pts):
    out = np.empty((pts.shape[0], 2))
    sample2_mac(u, v, ox, oy, dx, pts, out)
    return out


def _gradvel(u, v, ox, oy, dx, pts):
    out = np.empty((pts.shape[0], 2, 2))
    gradvel3_mac(u, v, ox, oy, dx, pts, out)
    return out


def rk4_march(pts, jacs, u, v, ox, oy, dx, dt):
    half = 0.5 * dt

    k1 = _vel(u, v, ox, oy, dx, pts)
    a1 = np.einsum("nij,njk->nik", _gradvel(u, v, ox, oy, dx, pts), jacs)

    p2 = pts + half * k1
    k2 = _vel(u, v, ox, oy, dx, p2)
    a2 = np.einsum("nij,njk->nik", _gradvel(u, v, ox, oy, dx, p2),
                   jacs + half * a1)

    p3 = pts + half * k2
    k3 = _vel(u, v, ox, oy, dx, p3)
    a3 = np.einsum("nij,njk->nik", _gradvel(u, v, ox, oy, dx, p3),
                   jacs + half * a2)

    p4 = pts + dt * k3
    k4 = _vel(u, v, ox, oy, dx, p4)
    a4 = np.einsum("nij,njk->nik", _gradvel(u, v, ox, oy, dx, p4),
                   jacs + dt * a3)

    pts += (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    jacs += (dt / 6.0) * (a1 + 2.0 * (a2 + a3) + a4)


def transform_mac(src_u, src_v, ox, oy, dx, pts, jacs, comp, out):
    w = _vel(src_u, src_v, ox, oy, dx, pts)
    out[:] = jacs[:, 0, comp] * w[:, 0] + jacs[:, 1, comp] * w[:, 1]


def sample2_clamped(vals, o0, o1, dx, pts, out, lo, hi):
    block, wx, wy = _gather2(vals, o0, o1, 1.0 / dx, pts)
    np.einsum("nij,ni,nj->n", block, wx, wy, out=out)
    lo[:] = block.min(axis=(1, 2))
    hi[:] = block.max(axis=(1, 2))


# --- multigrid pieces (cell-centered, Neumann) -------------------------------

def _neighbor_sum_and_deg(p):
    n0, n1 = p.shape
    s = np.zeros_like(p)
    deg = np.zeros_like(p)
    s[1:, :] += p[:-1, :]
    deg[1:, :] += 1.0
    s[:-1, :] += p[1:, :]
    deg[:-1, :] += 1.0
    s[:, 1:] += p[:, :-1]
    deg[:, 1:] += 1.0
    s[:, :-1] += p[:, 1:]
    deg[:, :-1] += 1.0
    return s, deg


def rbgs_sweep(p, b, dx2, color):
    n0, n1 = p.shape
    ii, jj = np.meshgrid(np.arange(n0), np.arange(n1), indexing="ij")
    mask = ((ii + jj) % 2) == color
    s, deg = _neighbor_sum_and_deg(p)
    p[mask] = ((s + b * dx2) / deg)[mask]


def apply_neumann_laplacian(p, out, inv_dx2):
    s, deg = _neighbor_sum_and_deg(p)
    out[:] = (deg * p - s) * inv_dx2


def restrict_full(r, rc):
    rc[:] = 0.25 * (r[0::2, 0::2] + r[1::2, 0::2] + r[0::2, 1::2] + r[1::2, 1::2])


def prolong_add(z, zc):
    z += np.repeat(np.repeat(zc, 2, axis=0), 2, axis=1)
