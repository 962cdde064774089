"""Pressure solves and velocity projection.

Cell-centered Poisson problem with all-Neumann walls, solved by conjugate
gradient preconditioned with a geometric multigrid V-cycle (red-black
Gauss-Seidel smoothing, dense solve at the coarsest level).  The singular
Neumann system is handled by mean-subtracting the right-hand side and pinning
the solution to zero mean.

With an interior solid-cell mask the solver falls back to diagonally
preconditioned CG on the masked operator; desk-scale runs use walls only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import NonConvergence
from .grid import GridSpec, ScalarField, VectorField


@dataclass
class PoissonConfig:
    tolerance: float = 1e-6
    max_iterations: int = 200
    mg_levels: int = 0          # 0 = as many as the grid allows (coarsest >= 4)
    pre_sweeps: int = 2
    post_sweeps: int = 2

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class BoundarySpec:
    """Wall flags per side (outer box is always solid) plus an optional
    axis-aligned solid-cell mask, immutable during a run."""
    walls: tuple[bool, bool, bool, bool] = (True, True, True, True)
    solid_mask: np.ndarray | None = None   # bool (nx, ny), True = solid cell

    def __post_init__(self):
        if not all(self.walls):
            raise ValueError("the outer box must be fully walled")
        if self.solid_mask is not None:
            self.solid_mask = np.asarray(self.solid_mask, dtype=bool)

    def has_mask(self) -> bool:
        return self.solid_mask is not None and bool(self.solid_mask.any())


def _num_levels(nx: int, ny: int, requested: int) -> int:
    levels = 1
    while nx % 2 == 0 and ny % 2 == 0 and nx // 2 >= 4 and ny // 2 >= 4:
        nx //= 2
        ny //= 2
        levels += 1
    if requested > 0:
        levels = min(levels, requested)
    return levels


class _DenseCoarse:
    """Pseudo-inverse of the Neumann operator on the coarsest level."""

    def __init__(self, n0: int, n1: int, inv_dx2: float):
        n = n0 * n1
        A = np.zeros((n, n))
        e = np.zeros((n0, n1))
        out = np.empty((n0, n1))
        for k in range(n):
            e.flat[k] = 1.0
            K.apply_neumann_laplacian(e, out, inv_dx2)
            A[:, k] = out.ravel()
            e.flat[k] = 0.0
        self.pinv = np.linalg.pinv(A, rcond=1e-12)
        self.shape = (n0, n1)

    def solve(self, b: np.ndarray) -> np.ndarray:
        return (self.pinv @ b.ravel()).reshape(self.shape)


class PoissonSolver:
    """Owns per-level scratch buffers; one solve at a time per instance."""

    def __init__(self, spec: GridSpec, cfg: PoissonConfig | None = None,
                 bc: BoundarySpec | None = None):
        self.spec = spec
        self.cfg = cfg or PoissonConfig()
        self.bc = bc or BoundarySpec()
        self._masked = self.bc.has_mask()
        self.levels = _num_levels(spec.nx, spec.ny, self.cfg.mg_levels)
        self._dx = [spec.dx * 2 ** l for l in range(self.levels)]
        self._shape = [(spec.nx >> l, spec.ny >> l) for l in range(self.levels)]
        self._z = [np.zeros(s) for s in self._shape]
        self._r = [np.zeros(s) for s in self._shape]
        self._tmp = [np.zeros(s) for s in self._shape]
        n0, n1 = self._shape[-1]
        self._coarse = _DenseCoarse(n0, n1, 1.0 / self._dx[-1] ** 2)
        if self._masked:
            self._fluid = ~self.bc.solid_mask
            self._deg = self._masked_degrees()

    # -- operator ------------------------------------------------------------

    def apply(self, p: np.ndarray, out: np.ndarray) -> None:
        if self._masked:
            self._apply_masked(p, out)
        else:
            K.apply_neumann_laplacian(p, out, 1.0 / self.spec.dx ** 2)

    def _masked_degrees(self) -> np.ndarray:
        f = self._fluid.astype(np.float64)
        deg = np.zeros_like(f)
        deg[1:, :] += f[:-1, :]
        deg[:-1, :] += f[1:, :]
        deg[:, 1:] += f[:, :-1]
        deg[:, :-1] += f[:, 1:]
        return deg

    def _apply_masked(self, p: np.ndarray, out: np.ndarray) -> None:
        pf = np.where(self._fluid, p, 0.0)
        s = np.zeros_like(pf)
        s[1:, :] += pf[:-1, :]
        s[:-1, :] += pf[1:, :]
        s[:, 1:] += pf[:, :-1]
        s[:, :-1] += pf[:, 1:]
        out[:] = (self._deg * pf - np.where(self._fluid, s, 0.0)) / self.spec.dx ** 2
        out[~self._fluid] = 0.0

    # -- multigrid preconditioner ---------------------------------------------

    def _vcycle(self, level: int, b: np.ndarray, z: np.ndarray) -> None:
        dx2 = self._dx[level] ** 2
        z.fill(0.0)
        if level == self.levels - 1:
            z[:] = self._coarse.solve(b)
            return
        for _ in range(self.cfg.pre_sweeps):
            K.rbgs_sweep(z, b, dx2, 0)
            K.rbgs_sweep(z, b, dx2, 1)
        K.apply_neumann_laplacian(z, self._tmp[level], 1.0 / dx2)
        self._tmp[level] *= -1.0
        self._tmp[level] += b
        K.restrict_full(self._tmp[level], self._r[level + 1])
        self._vcycle(level + 1, self._r[level + 1], self._z[level + 1])
        K.prolong_add(z, self._z[level + 1])
        for _ in range(self.cfg.post_sweeps):
            K.rbgs_sweep(z, b, dx2, 1)
            K.rbgs_sweep(z, b, dx2, 0)

    def _precondition(self, r: np.ndarray) -> np.ndarray:
        if self._masked:
            return r * (self.spec.dx ** 2 / 4.0)   # Jacobi-ish diagonal scale
        z = self._z[0]
        self._vcycle(0, r, z)
        return z.copy()

    # -- solve -----------------------------------------------------------------

    def solve(self, rhs: ScalarField, residual_history: list | None = None
              ) -> ScalarField:
        """Solve A p = rhs (A = -div grad, Neumann walls) to the configured
        relative residual; p returned with zero mean."""
        b = rhs.values.copy()
        if self._masked:
            b[~self._fluid] = 0.0
            nf = self._fluid.sum()
            b[self._fluid] -= b[self._fluid].sum() / nf
        else:
            b -= b.mean()
        bnorm = float(np.linalg.norm(b))
        if bnorm == 0.0:
            return ScalarField.zeros(self.spec)

        x = np.zeros_like(b)
        r = b.copy()
        z = self._precondition(r)
        p = z.copy()
        rz = float((r * z).sum())
        Ap = np.empty_like(b)
        tol = self.cfg.tolerance * bnorm

        for it in range(1, self.cfg.max_iterations + 1):
            self.apply(p, Ap)
            alpha = rz / float((p * Ap).sum())
            x += alpha * p
            r -= alpha * Ap
            rnorm = float(np.linalg.norm(r))
            if residual_history is not None:
                residual_history.append((it, rnorm / bnorm))
            if rnorm <= tol:
                if self._masked:
                    x[self._fluid] -= x[self._fluid].mean()
                    x[~self._fluid] = 0.0
                else:
                    x -= x.mean()
                return ScalarField(self.spec, x)
            z = self._precondition(r)
            rz_new = float((r * z).sum())
            beta = rz_new / rz
            p = z + beta * p
            rz = rz_new
        raise NonConvergence(rnorm / bnorm, self.cfg.max_iterations)


def solve_poisson(rhs: ScalarField, bc: BoundarySpec, cfg: PoissonConfig,
                  residual_history: list | None = None) -> ScalarField:
    return PoissonSolver(rhs.spec, cfg, bc).solve(rhs, residual_history)


def enforce_no_through(vel: VectorField, bc: BoundarySpec) -> None:
    """Zero the wall-normal (and solid-adjacent) face velocities in place."""
    vel.u[0, :] = 0.0
    vel.u[-1, :] = 0.0
    vel.v[:, 0] = 0.0
    vel.v[:, -1] = 0.0
    if bc.has_mask():
        solid = bc.solid_mask
        vel.u[1:-1, :][solid[:-1, :] | solid[1:, :]] = 0.0
        vel.v[:, 1:-1][solid[:, :-1] | solid[:, 1:]] = 0.0


def project(vel: VectorField, bc: BoundarySpec, solver: PoissonSolver
            ) -> tuple[VectorField, ScalarField]:
    """Remove the divergent part of vel.  Returns the projected field and the
    gradient potential q (pressure with dt/rho folded in): out = vel - grad q."""
    out = vel.copy()
    enforce_no_through(out, bc)
    dx = vel.spec.dx
    div = (np.diff(out.u, axis=0) + np.diff(out.v, axis=1)) / dx
    if bc.has_mask():
        div[bc.solid_mask] = 0.0
    # A q = -div with A = -div grad, i.e. div grad q = div
    q = solver.solve(ScalarField(vel.spec, -div))
    out.u[1:-1, :] -= np.diff(q.values, axis=0) / dx
    out.v[:, 1:-1] -= np.diff(q.values, axis=1) / dx
    enforce_no_through(out, bc)
    return out, q
