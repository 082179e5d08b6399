"""Periodic Cartesian hexahedral mesh of the cube [-1, 1]^3.

Elements are stored in lexicographic (i, j, k) order with i fastest; each
element is an axis-aligned box of size (hx, hy, hz) mapped affinely from
the reference cube, so the metric terms reduce to the constant Jacobian
J = hx hy hz / 8 and the per-axis scale factors 2/h.
"""

from dataclasses import dataclass, field

import numpy as np

from .operators import NodalOperator

# face order: (-x, +x, -y, +y, -z, +z)
FACE_MINUS = (0, 2, 4)
FACE_PLUS = (1, 3, 5)


@dataclass(frozen=True)
class PeriodicMesh:
    nx: int
    ny: int
    nz: int
    neighbors: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        for name, count in (("nx", self.nx), ("ny", self.ny), ("nz", self.nz)):
            if count < 1:
                raise ValueError(f"element count {name} must be >= 1, got {count}")
        object.__setattr__(self, "neighbors", _neighbor_table(self.nx, self.ny, self.nz))
        self.neighbors.setflags(write=False)

    @property
    def n_elements(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def spacing(self):
        return 2.0 / self.nx, 2.0 / self.ny, 2.0 / self.nz

    @property
    def jacobian(self) -> float:
        hx, hy, hz = self.spacing
        return hx * hy * hz / 8.0

    def element_index(self, i: int, j: int, k: int) -> int:
        return i + self.nx * (j + self.ny * k)

    def element_coords(self, e: int):
        i = e % self.nx
        j = (e // self.nx) % self.ny
        k = e // (self.nx * self.ny)
        return i, j, k

    def element_origin(self, e: int):
        i, j, k = self.element_coords(e)
        hx, hy, hz = self.spacing
        return -1.0 + i * hx, -1.0 + j * hy, -1.0 + k * hz


def _neighbor_table(nx: int, ny: int, nz: int) -> np.ndarray:
    """Periodic face-neighbor indices, shape (n_elements, 6)."""
    idx = np.arange(nx * ny * nz).reshape(nz, ny, nx)  # [k, j, i]
    table = np.empty((nx * ny * nz, 6), dtype=np.int64)
    table[:, 0] = np.roll(idx, 1, axis=2).ravel()
    table[:, 1] = np.roll(idx, -1, axis=2).ravel()
    table[:, 2] = np.roll(idx, 1, axis=1).ravel()
    table[:, 3] = np.roll(idx, -1, axis=1).ravel()
    table[:, 4] = np.roll(idx, 1, axis=0).ravel()
    table[:, 5] = np.roll(idx, -1, axis=0).ravel()
    return table


def build_mesh(nx: int, ny: int, nz: int) -> PeriodicMesh:
    return PeriodicMesh(nx=nx, ny=ny, nz=nz)


def collocation_coordinates(mesh: PeriodicMesh, element: int, op: NodalOperator) -> np.ndarray:
    """Physical node coordinates of one element, shape (n, n, n, 3).

    Index order (i, j, k) maps to (x, y, z); x_i = corner + (xi_i + 1)/2 * h.
    """
    if not 0 <= element < mesh.n_elements:
        raise IndexError(f"element index {element} out of range 0..{mesh.n_elements - 1}")
    ox, oy, oz = mesh.element_origin(element)
    hx, hy, hz = mesh.spacing
    line = (op.nodes + 1.0) / 2.0
    n = op.n_nodes
    xyz = np.empty((n, n, n, 3))
    xyz[..., 0] = (ox + hx * line)[:, None, None]
    xyz[..., 1] = (oy + hy * line)[None, :, None]
    xyz[..., 2] = (oz + hz * line)[None, None, :]
    return xyz


def all_coordinates(mesh: PeriodicMesh, op: NodalOperator) -> np.ndarray:
    """Node coordinates for every element, shape (n_elements, n, n, n, 3)."""
    n = op.n_nodes
    out = np.empty((mesh.n_elements, n, n, n, 3))
    for e in range(mesh.n_elements):
        out[e] = collocation_coordinates(mesh, e, op)
    return out
