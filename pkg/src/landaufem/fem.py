"""Tensor-product Lagrange finite elements on the velocity mesh.

Provides the function space Q_h, basis tabulation at quadrature points, the
mass matrix with a reusable SPD factorization, and the nodal coefficient
vectors that reproduce the monomials 1, v1, v2 and |v|^2 inside Q_h.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import (AssemblyError, CapabilityError, ConfigurationError,
                     DimensionError, StateError)
from .mesh import QuadratureRule, VelocityMesh, compatible_meshes, gauss_legendre_1d


def lagrange_basis_1d(degree: int, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of the 1-D Lagrange basis on [0, 1].

    Nodes are equispaced: {0, 1} for degree 1 and {0, 1/2, 1} for degree 2.
    Returns arrays of shape t.shape + (degree + 1,).
    """
    t = np.asarray(t, dtype=float)
    if degree == 1:
        vals = np.stack([1.0 - t, t], axis=-1)
        derivs = np.stack([np.full_like(t, -1.0), np.full_like(t, 1.0)], axis=-1)
    elif degree == 2:
        vals = np.stack([(2.0 * t - 1.0) * (t - 1.0),
                         4.0 * t * (1.0 - t),
                         t * (2.0 * t - 1.0)], axis=-1)
        derivs = np.stack([4.0 * t - 3.0,
                           4.0 - 8.0 * t,
                           4.0 * t - 1.0], axis=-1)
    else:
        raise ConfigurationError(f"unsupported polynomial degree {degree}; use 1 or 2")
    return vals, derivs


@dataclass(frozen=True, eq=False)
class FunctionSpace:
    """Lagrange space Q_h over a VelocityMesh.

    Global dofs sit on the refined (degree * n_cells + 1)^2 node grid and are
    numbered row-major with the x index fastest.  Local dofs within a cell
    follow the same convention.
    """

    mesh: VelocityMesh
    degree: int
    n_dof: int
    dof_coords: np.ndarray       # (n_dof, 2)
    connectivity: np.ndarray     # (num_cells, (degree + 1)^2) global dof ids
    _tab_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dofs_per_cell(self) -> int:
        return (self.degree + 1) ** 2


@dataclass(frozen=True, eq=False)
class QuadTables:
    """Basis values/gradients of one space tabulated on one quadrature rule.

    The mesh is uniform, so every cell shares the same local tables; only the
    scatter through the connectivity differs.  Global sparse operators map
    coefficient vectors to point values (phi) and gradients (grad_x, grad_y).
    """

    space: FunctionSpace
    quad: QuadratureRule
    phi_local: np.ndarray        # (order^2, dofs_per_cell)
    grad_local: np.ndarray       # (order^2, dofs_per_cell, 2)
    w_local: np.ndarray          # (order^2,) physical weights, equal for all cells
    phi: sp.csr_matrix           # (n_points, n_dof)
    grad_x: sp.csr_matrix
    grad_y: sp.csr_matrix
    _pair_cache: dict = field(default_factory=dict, repr=False, compare=False)


def build_space(mesh: VelocityMesh, degree: int) -> FunctionSpace:
    """Build the tensor-product Lagrange space of the given degree (1 or 2)."""
    if degree not in (1, 2):
        raise ConfigurationError(f"unsupported polynomial degree {degree}; use 1 or 2")
    n = mesh.n_cells
    nx = degree * n + 1
    nodes_1d = np.linspace(-mesh.v_max, mesh.v_max, nx)
    gx, gy = np.meshgrid(nodes_1d, nodes_1d, indexing="xy")
    coords = np.column_stack([gx.ravel(), gy.ravel()])

    nloc1 = degree + 1
    cells = np.arange(n)
    cx = np.tile(cells, n)
    cy = np.repeat(cells, n)
    a = np.arange(nloc1)
    ix = degree * cx[:, None, None] + a[None, None, :]
    iy = degree * cy[:, None, None] + a[None, :, None]
    conn = (iy * nx + ix).reshape(n * n, nloc1 * nloc1)
    return FunctionSpace(mesh=mesh, degree=degree, n_dof=nx * nx,
                         dof_coords=coords, connectivity=conn)


def tabulate(space: FunctionSpace, quad: QuadratureRule) -> QuadTables:
    """Tabulate (and cache) basis values and gradients at the quadrature points."""
    if not compatible_meshes(quad.mesh, space.mesh):
        raise DimensionError("quadrature rule was built on a different mesh")
    cached = space._tab_cache.get(id(quad))
    if cached is not None and cached.quad is quad:
        return cached

    xi, _ = gauss_legendre_1d(quad.order)
    t = 0.5 * (xi + 1.0)                      # reference coordinate in [0, 1]
    vals, ders = lagrange_basis_1d(space.degree, t)
    h = 2.0 * space.mesh.v_max / space.mesh.n_cells
    # local quad point q = j * order + i, local dof l = b * (degree+1) + a
    phi_loc = np.einsum("jb,ia->jiba", vals, vals)
    dphi_dx = np.einsum("jb,ia->jiba", vals, ders) * (2.0 / h)
    dphi_dy = np.einsum("jb,ia->jiba", ders, vals) * (2.0 / h)
    nq = quad.order ** 2
    nl = space.dofs_per_cell
    phi_loc = phi_loc.reshape(nq, nl)
    grad_loc = np.stack([dphi_dx.reshape(nq, nl), dphi_dy.reshape(nq, nl)], axis=-1)
    w_local = quad.weights[:nq].copy()

    num_cells = space.mesh.num_cells
    rows = np.repeat(np.arange(quad.n_points), nl)
    cols = np.broadcast_to(space.connectivity[:, None, :], (num_cells, nq, nl)).ravel()
    shape = (quad.n_points, space.n_dof)
    data_phi = np.broadcast_to(phi_loc[None], (num_cells, nq, nl)).ravel()
    data_gx = np.broadcast_to(grad_loc[None, :, :, 0], (num_cells, nq, nl)).ravel()
    data_gy = np.broadcast_to(grad_loc[None, :, :, 1], (num_cells, nq, nl)).ravel()
    tables = QuadTables(
        space=space, quad=quad, phi_local=phi_loc, grad_local=grad_loc,
        w_local=w_local,
        phi=sp.csr_matrix((data_phi, (rows, cols)), shape=shape),
        grad_x=sp.csr_matrix((data_gx, (rows, cols)), shape=shape),
        grad_y=sp.csr_matrix((data_gy, (rows, cols)), shape=shape),
    )
    space._tab_cache[id(quad)] = tables
    return tables


@dataclass(frozen=True, eq=False)
class MassMatrix:
    """Sparse symmetric mass matrix with a cached dense Cholesky factorization."""

    entries: sp.csr_matrix
    factorization: tuple | None = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Solve M x = b using the SPD factorization."""
        if self.factorization is None:
            raise StateError("mass matrix has no factorization attached")
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.n:
            raise DimensionError(f"mass solve got length {b.shape[0]}, expected {self.n}")
        return sla.cho_solve(self.factorization, b)


def assemble_mass_matrix(space: FunctionSpace, quad: QuadratureRule) -> MassMatrix:
    """Assemble M_jk = ∫ phi_j phi_k dv by quadrature and factorize it.

    Requires a rule exact for products of basis functions (order >= degree + 1).
    Assembly is cell-major with a fixed local dof order, so repeated assembly
    is bit-identical and the matrix equals its transpose exactly.
    """
    if quad.order < space.degree + 1:
        raise ConfigurationError(
            f"quadrature order {quad.order} too low for exact degree-{space.degree} "
            f"mass matrix; need at least {space.degree + 1}")
    tab = tabulate(space, quad)
    m_loc = np.einsum("q,qi,qj->ij", tab.w_local, tab.phi_local, tab.phi_local)
    m_loc = 0.5 * (m_loc + m_loc.T)
    num_cells = space.mesh.num_cells
    nl = space.dofs_per_cell
    rows = np.repeat(space.connectivity, nl, axis=1).ravel()
    cols = np.tile(space.connectivity, (1, nl)).ravel()
    data = np.broadcast_to(m_loc.ravel()[None], (num_cells, nl * nl)).ravel()
    m = sp.csr_matrix((data, (rows, cols)), shape=(space.n_dof, space.n_dof))
    m.sum_duplicates()
    try:
        chol = sla.cho_factor(m.toarray(), lower=True)
    except sla.LinAlgError as exc:
        raise AssemblyError(f"mass matrix factorization failed: {exc}") from exc
    return MassMatrix(entries=m, factorization=chol)


@dataclass(frozen=True, eq=False)
class MonomialCoefficients:
    """Coefficient vectors reproducing 1, v_k and |v|^2 inside Q_h (degree 2)."""

    ones: np.ndarray             # (n_dof,)
    v_hat: np.ndarray            # (n_dof, 2), columns reproduce v1 and v2
    eps_hat: np.ndarray          # (n_dof,), reproduces |v|^2


def interpolate_monomials(space: FunctionSpace) -> MonomialCoefficients:
    """Nodal interpolation vectors for the conserved-moment monomials.

    |v|^2 lies in Q_h only for degree 2; degree-1 spaces cannot track energy.
    """
    if space.degree < 2:
        raise CapabilityError(
            "energy tracking requires degree 2: |v|^2 is not representable in a "
            f"degree-{space.degree} space")
    coords = space.dof_coords
    return MonomialCoefficients(
        ones=np.ones(space.n_dof),
        v_hat=coords.copy(),
        eps_hat=coords[:, 0] ** 2 + coords[:, 1] ** 2,
    )


@dataclass
class DistributionState:
    """Coefficient vector of the discrete distribution plus simulation time."""

    coeffs: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim != 1:
            raise DimensionError("distribution coefficients must be a 1-D vector")


def _as_coeffs(space: FunctionSpace, f) -> np.ndarray:
    coeffs = f.coeffs if isinstance(f, DistributionState) else np.asarray(f, dtype=float)
    if coeffs.shape != (space.n_dof,):
        raise DimensionError(
            f"coefficient vector has length {coeffs.shape[0]}, space has {space.n_dof} dofs")
    return coeffs


def eval_at_quad(space: FunctionSpace, quad: QuadratureRule, f) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate f_h and its velocity gradient at every quadrature point.

    Returns (values, gradients) of shapes (n_points,) and (n_points, 2).
    """
    coeffs = _as_coeffs(space, f)
    tab = tabulate(space, quad)
    values = tab.phi @ coeffs
    grads = np.column_stack([tab.grad_x @ coeffs, tab.grad_y @ coeffs])
    return values, grads


def lift_gradient(mass: MassMatrix, g: np.ndarray) -> np.ndarray:
    """Map a partial derivative vector to primal-basis coefficients: w = M^{-1} g."""
    return mass.solve(g)


def mass_norm(mass: MassMatrix, x: np.ndarray) -> float:
    """The L2-equivalent norm sqrt(x^T M x)."""
    x = np.asarray(x, dtype=float)
    return float(np.sqrt(np.abs(x @ (mass.entries @ x))))
