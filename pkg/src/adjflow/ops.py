"""Discrete operators on staggered fields: kernel interpolation, kernel-based
derivatives, and the stencil operators (Laplacian, divergence, gradient).

Interpolation uses a quadratic B-spline (support 1.5*dx); kernel derivatives
use a cubic B-spline (support 2*dx).  Query positions are clamped to each
sample family's valid box, so flow-map positions that exit the domain are
evaluated at the nearest admissible point.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .grid import GridSpec, ScalarField, VectorField


def _center_origin(spec: GridSpec):
    return spec.origin[0] + 0.5 * spec.dx, spec.origin[1] + 0.5 * spec.dx


def _as_points(pos) -> np.ndarray:
    pts = np.asarray(pos, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[None, :]
    return np.ascontiguousarray(pts)


def interp_w2(field: ScalarField, pos) -> np.ndarray:
    """Quadratic-kernel interpolation of a cell-centered field at pos (N,2)."""
    pts = _as_points(pos)
    out = np.empty(pts.shape[0])
    o0, o1 = _center_origin(field.spec)
    K.sample2(field.values, o0, o1, field.spec.dx, pts, out)
    return out


def interp_w2_component(values: np.ndarray, origin, dx: float, pos) -> np.ndarray:
    """Same interpolation for a raw component grid with explicit sample origin."""
    pts = _as_points(pos)
    out = np.empty(pts.shape[0])
    K.sample2(values, origin[0], origin[1], dx, pts, out)
    return out


def interp_w2_vec(vel: VectorField, pos) -> np.ndarray:
    """Sample both MAC components at pos; returns (N, 2)."""
    pts = _as_points(pos)
    out = np.empty((pts.shape[0], 2))
    spec = vel.spec
    K.sample2_mac(vel.u, vel.v, spec.origin[0], spec.origin[1], spec.dx, pts, out)
    return out


def grad_w3(field: ScalarField, pos) -> np.ndarray:
    """Cubic-kernel gradient of a cell-centered field at pos; returns (N, 2)."""
    pts = _as_points(pos)
    out = np.empty((pts.shape[0], 2))
    o0, o1 = _center_origin(field.spec)
    K.grad3(field.values, o0, o1, field.spec.dx, pts, out)
    return out


def grad_w3_vec(vel: VectorField, pos) -> np.ndarray:
    """Cubic-kernel velocity gradient at pos; returns (N, 2, 2) with
    out[k, i, j] = d u_i / d x_j."""
    pts = _as_points(pos)
    out = np.empty((pts.shape[0], 2, 2))
    spec = vel.spec
    K.gradvel3_mac(vel.u, vel.v, spec.origin[0], spec.origin[1], spec.dx, pts, out)
    return out


def laplacian(vel: VectorField) -> VectorField:
    """5-point Laplacian per component.  Missing tangential neighbors at walls
    are mirrored (one-sided), so they contribute nothing to the stencil."""
    return VectorField(vel.spec,
                       _lap_component(vel.u, vel.spec.dx),
                       _lap_component(vel.v, vel.spec.dx))


def _lap_component(a: np.ndarray, dx: float) -> np.ndarray:
    out = np.zeros_like(a)
    out[1:, :] += a[:-1, :] - a[1:, :]
    out[:-1, :] += a[1:, :] - a[:-1, :]
    out[:, 1:] += a[:, :-1] - a[:, 1:]
    out[:, :-1] += a[:, 1:] - a[:, :-1]
    out /= dx * dx
    return out


def laplacian_scalar(f: ScalarField) -> ScalarField:
    return ScalarField(f.spec, _lap_component(f.values, f.spec.dx))


def divergence(vel: VectorField) -> ScalarField:
    dx = vel.spec.dx
    vals = (np.diff(vel.u, axis=0) + np.diff(vel.v, axis=1)) / dx
    return ScalarField(vel.spec, vals)


def gradient(p: ScalarField) -> VectorField:
    """Cell-difference gradient at faces; wall-normal faces get zero so that
    divergence(gradient(p)) reproduces the Neumann 5-point Laplacian."""
    spec = p.spec
    dx = spec.dx
    gu = np.zeros((spec.nx + 1, spec.ny))
    gv = np.zeros((spec.nx, spec.ny + 1))
    gu[1:-1, :] = np.diff(p.values, axis=0) / dx
    gv[:, 1:-1] = np.diff(p.values, axis=1) / dx
    return VectorField(spec, gu, gv)


def interp_centers_at_faces(f: ScalarField) -> tuple[np.ndarray, np.ndarray]:
    """Kernel-interpolated cell-centered values at the u- and v-face points."""
    spec = f.spec
    return interp_w2(f, spec.u_faces()), interp_w2(f, spec.v_faces())


def face_average_to_centers(vel: VectorField) -> tuple[np.ndarray, np.ndarray]:
    """Linear average of face components at cell centers."""
    uc = 0.5 * (vel.u[:-1, :] + vel.u[1:, :])
    vc = 0.5 * (vel.v[:, :-1] + vel.v[:, 1:])
    return uc, vc


def speed_squared_centers(vel: VectorField) -> ScalarField:
    uc, vc = face_average_to_centers(vel)
    return ScalarField(vel.spec, uc * uc + vc * vc)


def curl_centers(vel: VectorField) -> ScalarField:
    """Vorticity dv/dx - du/dy at cell centers, central differences."""
    spec = vel.spec
    dx = spec.dx
    w = np.zeros((spec.nx, spec.ny))
    vc = 0.5 * (vel.v[:, :-1] + vel.v[:, 1:])
    uc = 0.5 * (vel.u[:-1, :] + vel.u[1:, :])
    w[1:-1, :] += (vc[2:, :] - vc[:-2, :]) / (2 * dx)
    w[:, 1:-1] -= (uc[:, 2:] - uc[:, :-2]) / (2 * dx)
    return ScalarField(spec, w)
