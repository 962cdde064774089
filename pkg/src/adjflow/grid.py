"""Staggered-grid field containers and binary snapshot IO.

Layout (MAC): velocity u-components live on vertical faces, v-components on
horizontal faces, scalars at cell centers.  With ``origin`` the lower-left
domain corner and ``dx`` the uniform cell size:

    cell center (i, j)  at origin + (i + 1/2, j + 1/2) * dx
    u-face      (i, j)  at origin + (i,       j + 1/2) * dx
    v-face      (i, j)  at origin + (i + 1/2, j      ) * dx

All arrays are float64, indexed [i, j] with i along x.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatch

_MAGIC = b"FMA1"
_KIND_SCALAR = 0
_KIND_VECTOR = 1


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int
    dx: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.nx < 4 or self.ny < 4:
            raise ValueError("grid needs at least 4 cells per side")
        if not self.dx > 0:
            raise ValueError("dx must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def extent(self) -> tuple[float, float]:
        return (self.nx * self.dx, self.ny * self.dx)

    def cell_centers(self) -> np.ndarray:
        """(nx*ny, 2) positions of cell centers, row-major in (i, j)."""
        return _positions(self.nx, self.ny, self.origin[0] + 0.5 * self.dx,
                          self.origin[1] + 0.5 * self.dx, self.dx)

    def u_faces(self) -> np.ndarray:
        return _positions(self.nx + 1, self.ny, self.origin[0],
                          self.origin[1] + 0.5 * self.dx, self.dx)

    def v_faces(self) -> np.ndarray:
        return _positions(self.nx, self.ny + 1, self.origin[0] + 0.5 * self.dx,
                          self.origin[1], self.dx)


def _positions(n0, n1, o0, o1, dx):
    i = np.arange(n0, dtype=np.float64)
    j = np.arange(n1, dtype=np.float64)
    out = np.empty((n0 * n1, 2))
    out[:, 0] = np.repeat(o0 + i * dx, n1)
    out[:, 1] = np.tile(o1 + j * dx, n0)
    return out


@dataclass
class ScalarField:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.spec.nx, self.spec.ny):
            raise ShapeMismatch(
                f"scalar values {self.values.shape} vs grid {self.spec.shape}")

    @classmethod
    def zeros(cls, spec: GridSpec) -> "ScalarField":
        return cls(spec, np.zeros((spec.nx, spec.ny)))

    def copy(self) -> "ScalarField":
        return ScalarField(self.spec, self.values.copy())

    def total(self) -> float:
        """Integral of the field over the domain (sum * dx^2)."""
        return float(self.values.sum()) * self.spec.dx ** 2


@dataclass
class VectorField:
    spec: GridSpec
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        nx, ny = self.spec.nx, self.spec.ny
        if self.u.shape != (nx + 1, ny) or self.v.shape != (nx, ny + 1):
            raise ShapeMismatch(
                f"vector components {self.u.shape}/{self.v.shape} vs grid {nx}x{ny}")

    @classmethod
    def zeros(cls, spec: GridSpec) -> "VectorField":
        return cls(spec, np.zeros((spec.nx + 1, spec.ny)),
                   np.zeros((spec.nx, spec.ny + 1)))

    def copy(self) -> "VectorField":
        return VectorField(self.spec, self.u.copy(), self.v.copy())

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.spec, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.spec, self.u - other.u, self.v - other.v)

    def __mul__(self, a: float) -> "VectorField":
        return VectorField(self.spec, self.u * a, self.v * a)

    __rmul__ = __mul__

    def kinetic_energy(self) -> float:
        """0.5 * sum(|u|^2) * dx^2 over both face families."""
        dx2 = self.spec.dx ** 2
        return 0.5 * dx2 * (float(np.square(self.u).sum()) +
                            float(np.square(self.v).sum()))

    def max_abs(self) -> float:
        return max(float(np.abs(self.u).max()), float(np.abs(self.v).max()))


def add_scaled(a: VectorField, b: VectorField, s: float) -> VectorField:
    """a + s*b without intermediate temporaries."""
    out = a.copy()
    out.u += s * b.u
    out.v += s * b.v
    return out


def dot(a: VectorField, b: VectorField) -> float:
    """Face-wise inner product with dx^2 quadrature weight."""
    dx2 = a.spec.dx ** 2
    return dx2 * (float((a.u * b.u).sum()) + float((a.v * b.v).sum()))


# --- snapshot format ------------------------------------------------------
# little-endian:
#   magic "FMA1" | kind u8 (0 scalar / 1 vector) | nx u32 | ny u32
#   | dx f64 | origin 2*f64 | row-major f64 payload(s)
# Vector payload is the u component array followed by the v component array.

_HEADER = struct.Struct("<4sBIIddd")


def save_field(path, f) -> None:
    if isinstance(f, ScalarField):
        kind, payloads = _KIND_SCALAR, (f.values,)
    elif isinstance(f, VectorField):
        kind, payloads = _KIND_VECTOR, (f.u, f.v)
    else:
        raise TypeError(f"not a field: {type(f)!r}")
    spec = f.spec
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, kind, spec.nx, spec.ny, spec.dx,
                              spec.origin[0], spec.origin[1]))
        for p in payloads:
            fh.write(np.ascontiguousarray(p, dtype="<f8").tobytes())


def load_field(path):
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        magic, kind, nx, ny, dx, ox, oy = _HEADER.unpack(head)
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a field snapshot (bad magic)")
        spec = GridSpec(nx, ny, dx, (ox, oy))
        if kind == _KIND_SCALAR:
            vals = np.frombuffer(fh.read(8 * nx * ny), dtype="<f8")
            return ScalarField(spec, vals.reshape(nx, ny).astype(np.float64))
        if kind == _KIND_VECTOR:
            u = np.frombuffer(fh.read(8 * (nx + 1) * ny), dtype="<f8")
            v = np.frombuffer(fh.read(8 * nx * (ny + 1)), dtype="<f8")
            return VectorField(spec, u.reshape(nx + 1, ny).astype(np.float64),
                               v.reshape(nx, ny + 1).astype(np.float64))
        raise ValueError(f"{path}: unknown field kind {kind}")
