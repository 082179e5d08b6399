import numpy as np
import pytest

from dgsem.mesh import build_mesh, collocation_coordinates, all_coordinates
from dgsem.operators import GAUSS, LGL, build_operator

OPPOSITE = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4}


def test_single_element_is_its_own_neighbor():
    mesh = build_mesh(1, 1, 1)
    assert np.all(mesh.neighbors == 0)


def test_periodic_wrap_example():
    mesh = build_mesh(4, 4, 1)
    e = mesh.element_index(0, 0, 0)
    assert mesh.neighbors[e, 0] == mesh.element_index(3, 0, 0)
    assert mesh.neighbors[e, 1] == mesh.element_index(1, 0, 0)
    assert mesh.neighbors[e, 2] == mesh.element_index(0, 3, 0)


def test_spacing_example():
    mesh = build_mesh(2, 2, 1)
    assert mesh.spacing == pytest.approx((1.0, 1.0, 2.0))
    assert mesh.jacobian == pytest.approx(0.25)


@pytest.mark.parametrize("counts", [(1, 1, 1), (2, 3, 1), (4, 4, 1), (3, 2, 2), (4, 4, 4)])
def test_neighbor_involution(counts):
    mesh = build_mesh(*counts)
    for e in range(mesh.n_elements):
        for face in range(6):
            other = mesh.neighbors[e, face]
            assert mesh.neighbors[other, OPPOSITE[face]] == e


def test_rejects_bad_counts():
    with pytest.raises(ValueError):
        build_mesh(0, 1, 1)
    with pytest.raises(ValueError):
        build_mesh(2, -1, 1)


def test_single_element_coordinates_are_reference_nodes():
    mesh = build_mesh(1, 1, 1)
    op = build_operator(LGL, 3)
    xyz = collocation_coordinates(mesh, 0, op)
    assert xyz[:, 0, 0, 0] == pytest.approx(op.nodes)
    assert xyz[0, :, 0, 1] == pytest.approx(op.nodes)
    assert xyz[0, 0, :, 2] == pytest.approx(op.nodes)


def test_affine_map_example():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(LGL, 2)
    e = mesh.element_index(1, 0, 0)
    xyz = collocation_coordinates(mesh, e, op)
    # element starts at x = 0; xi = -1 maps there
    assert xyz[0, 0, 0, 0] == pytest.approx(0.0, abs=1e-15)
    assert xyz[-1, 0, 0, 0] == pytest.approx(1.0, abs=1e-15)


def test_coordinates_reject_bad_element():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(LGL, 2)
    with pytest.raises(IndexError):
        collocation_coordinates(mesh, 4, op)


@pytest.mark.parametrize("family", (GAUSS, LGL))
def test_quadrature_of_one_is_domain_volume(family):
    for degree in range(1, 7):
        op = build_operator(family, degree)
        for counts in ((1, 1, 1), (2, 3, 1), (4, 2, 2)):
            mesh = build_mesh(*counts)
            w = op.weights
            cell = w[:, None, None] * w[None, :, None] * w[None, None, :]
            total = mesh.n_elements * mesh.jacobian * cell.sum()
            assert total == pytest.approx(8.0, abs=1e-13)


def test_all_coordinates_cover_domain():
    mesh = build_mesh(3, 2, 1)
    op = build_operator(LGL, 2)
    xyz = all_coordinates(mesh, op)
    assert xyz.shape == (6, 3, 3, 3, 3)
    assert xyz[..., 0].min() == pytest.approx(-1.0)
    assert xyz[..., 0].max() == pytest.approx(1.0)
    assert xyz[..., 2].min() == pytest.approx(-1.0)
    assert xyz[..., 2].max() == pytest.approx(1.0)
