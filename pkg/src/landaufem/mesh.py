"""Structured 2-D velocity-space mesh with element-local Gauss-Legendre quadrature.

The velocity domain is the truncated box [-v_max, v_max]^2, tiled by a uniform
n_cells x n_cells grid of rectangles.  All downstream identities are algebraic
in the assembled matrices and hold on any box; the initial condition is the
user's responsibility to keep well decayed inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True, eq=False)
class VelocityMesh:
    """Uniform rectangular tiling of [-v_max, v_max]^2.

    Cells are indexed row-major with the x index fastest:
    cell k = cy * n_cells + cx.
    """

    v_max: float
    n_cells: int
    x_edges: np.ndarray          # (n_cells + 1,), strictly increasing
    y_edges: np.ndarray          # (n_cells + 1,), strictly increasing
    cell_bounds: np.ndarray      # (n_cells^2, 4) columns (x0, y0, x1, y1)
    dimension: int = 2

    @property
    def num_cells(self) -> int:
        return self.n_cells * self.n_cells

    @property
    def cell_size(self) -> float:
        """Nominal side length of every cell (the mesh is uniform)."""
        return 2.0 * self.v_max / self.n_cells

    @property
    def cell_areas(self) -> np.ndarray:
        b = self.cell_bounds
        return (b[:, 2] - b[:, 0]) * (b[:, 3] - b[:, 1])

    @property
    def domain_area(self) -> float:
        return (2.0 * self.v_max) ** 2


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Tensor-product Gauss-Legendre points per cell, in physical coordinates.

    Points are stored cell-major; within a cell the x Gauss index runs fastest.
    The slice of points owned by cell k is [k * order^2, (k + 1) * order^2).
    Because the mesh is uniform, the order^2 weights of every cell are the
    same bit pattern.
    """

    mesh: VelocityMesh
    order: int                   # Gauss points per axis per cell
    points: np.ndarray           # (n_points, 2)
    weights: np.ndarray          # (n_points,)
    cell_index: np.ndarray       # (n_points,) owning cell of each point

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def points_per_cell(self) -> int:
        return self.order * self.order

    def cell_slice(self, cell: int) -> slice:
        npc = self.points_per_cell
        return slice(cell * npc, (cell + 1) * npc)


def build_mesh(v_max: float, n_cells: int) -> VelocityMesh:
    """Build the uniform n_cells x n_cells mesh covering [-v_max, v_max]^2."""
    if not np.isfinite(v_max) or v_max <= 0.0:
        raise ConfigurationError(f"mesh.v_max must be positive and finite, got {v_max}")
    if n_cells < 1:
        raise ConfigurationError(f"mesh.n_cells must be at least 1, got {n_cells}")
    n = int(n_cells)
    edges = np.linspace(-float(v_max), float(v_max), n + 1)
    x0 = np.tile(edges[:-1], n)
    x1 = np.tile(edges[1:], n)
    y0 = np.repeat(edges[:-1], n)
    y1 = np.repeat(edges[1:], n)
    bounds = np.column_stack([x0, y0, x1, y1])
    return VelocityMesh(v_max=float(v_max), n_cells=n, x_edges=edges,
                        y_edges=edges.copy(), cell_bounds=bounds)


def compatible_meshes(a: VelocityMesh, b: VelocityMesh) -> bool:
    return a is b or (a.v_max == b.v_max and a.n_cells == b.n_cells)


def gauss_legendre_1d(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    if order < 1:
        raise ConfigurationError(f"quadrature order must be at least 1, got {order}")
    return np.polynomial.legendre.leggauss(int(order))


def build_quadrature(mesh: VelocityMesh, order: int) -> QuadratureRule:
    """Map the tensor-product Gauss rule onto every cell of the mesh.

    The resulting rule integrates polynomials up to degree 2*order - 1 per
    axis exactly on each cell; weights are positive and sum to the cell area.
    """
    xi, wi = gauss_legendre_1d(order)
    b = mesh.cell_bounds
    half = 0.5 * mesh.cell_size
    xm = 0.5 * (b[:, 0] + b[:, 2])
    ym = 0.5 * (b[:, 1] + b[:, 3])
    # (cells, order_y, order_x) with the x index fastest after flattening
    px = xm[:, None, None] + half * xi[None, None, :]
    py = ym[:, None, None] + half * xi[None, :, None]
    px, py = np.broadcast_arrays(px, py)
    w_cell = (wi[:, None] * wi[None, :]) * half * half
    weights = np.tile(w_cell.ravel(), mesh.num_cells)
    points = np.column_stack([px.ravel(), py.ravel()])
    cell_index = np.repeat(np.arange(mesh.num_cells), order * order)
    return QuadratureRule(mesh=mesh, order=int(order), points=points,
                          weights=weights, cell_index=cell_index)
