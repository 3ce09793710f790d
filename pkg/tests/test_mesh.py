import numpy as np
import pytest

from landaufem import ConfigurationError, build_mesh, build_quadrature


def test_single_cell_tiles_box():
    mesh = build_mesh(1.0, 1)
    assert mesh.num_cells == 1
    np.testing.assert_allclose(mesh.cell_bounds[0], [-1.0, -1.0, 1.0, 1.0])
    assert mesh.cell_areas[0] == pytest.approx(4.0, rel=1e-15)


def test_uniform_subdivision():
    mesh = build_mesh(5.0, 8)
    assert mesh.num_cells == 64
    np.testing.assert_allclose(mesh.cell_areas, 1.25 * 1.25, rtol=1e-14)


def test_cell_areas_sum_to_domain():
    mesh = build_mesh(2.0, 4)
    total = np.sum(mesh.cell_areas)
    assert total == pytest.approx(16.0, rel=1e-14)
    assert total == pytest.approx(mesh.domain_area, rel=1e-14)


def test_edges_strictly_increasing():
    mesh = build_mesh(3.7, 5)
    assert np.all(np.diff(mesh.x_edges) > 0)
    assert np.all(np.diff(mesh.y_edges) > 0)
    b = mesh.cell_bounds
    assert np.all(b[:, 2] > b[:, 0]) and np.all(b[:, 3] > b[:, 1])


@pytest.mark.parametrize("v_max,n_cells", [(0.0, 4), (-1.0, 4), (2.0, 0)])
def test_invalid_mesh_configuration(v_max, n_cells):
    with pytest.raises(ConfigurationError):
        build_mesh(v_max, n_cells)


def test_quadrature_order_one_midpoint():
    mesh = build_mesh(1.0, 1)
    quad = build_quadrature(mesh, 1)
    assert quad.n_points == 1
    np.testing.assert_allclose(quad.points[0], [0.0, 0.0], atol=1e-15)
    assert quad.weights[0] == pytest.approx(4.0, rel=1e-15)


def test_quadrature_point_count_and_cells():
    mesh = build_mesh(2.5, 3)
    quad = build_quadrature(mesh, 2)
    assert quad.n_points == 9 * 4
    assert quad.points_per_cell == 4
    np.testing.assert_array_equal(np.bincount(quad.cell_index), np.full(9, 4))


def test_quadrature_weights_positive_and_sum_per_cell():
    mesh = build_mesh(4.0, 3)
    quad = build_quadrature(mesh, 3)
    assert np.all(quad.weights > 0)
    for c in range(mesh.num_cells):
        s = quad.weights[quad.cell_slice(c)].sum()
        assert s == pytest.approx(mesh.cell_areas[c], rel=1e-14)
    assert quad.weights.sum() == pytest.approx(mesh.domain_area, rel=1e-14)


def test_quadrature_degree_exactness_order2():
    # \int_{[-1,1]^2} v1^2 v2^2 dv = (2/3) * (2/3)
    mesh = build_mesh(1.0, 1)
    quad = build_quadrature(mesh, 2)
    val = np.sum(quad.weights * quad.points[:, 0] ** 2 * quad.points[:, 1] ** 2)
    assert val == pytest.approx(4.0 / 9.0, rel=1e-14)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_quadrature_degree_exactness_random_monomials(order):
    rng = np.random.default_rng(20240801 + order)
    mesh = build_mesh(1.5, 3)
    quad = build_quadrature(mesh, order)

    def exact_monomial(p, q):
        # \int_{-L}^{L} v^p dv, separable in x and y
        L = mesh.v_max
        ix = 0.0 if p % 2 else 2.0 * L ** (p + 1) / (p + 1)
        iy = 0.0 if q % 2 else 2.0 * L ** (q + 1) / (q + 1)
        return ix * iy

    for _ in range(10):
        p = int(rng.integers(0, 2 * order))
        q = int(rng.integers(0, 2 * order))
        approx = np.sum(quad.weights * quad.points[:, 0] ** p * quad.points[:, 1] ** q)
        exact = exact_monomial(p, q)
        if exact == 0.0:
            assert abs(approx) <= 1e-12 * mesh.domain_area * mesh.v_max ** (p + q)
        else:
            assert approx == pytest.approx(exact, rel=1e-12)


def test_quadrature_order_zero_rejected():
    mesh = build_mesh(1.0, 2)
    with pytest.raises(ConfigurationError):
        build_quadrature(mesh, 0)
