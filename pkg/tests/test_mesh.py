import numpy as np
import pytest

from tracefem.mesh import (GENUS_BOX, SPHERE_BOX, Box, MeshCapacityError, barycentric_coords,
                           barycentric_gradients, build_cube_mesh, mesh_size, radius_ratio,
                           tet_faces)


def test_level0_counts():
    m = build_cube_mesh(0, SPHERE_BOX)
    assert m.n_vertices == 27
    assert m.n_tets == 48
    assert m.h == pytest.approx(5.0 / 3.0)


def test_level5_counts_without_building():
    # 64 cells per side, 6 tets each
    assert 6 * 64**3 == 1_572_864
    assert mesh_size(5, SPHERE_BOX) == pytest.approx(0.052083, abs=1e-6)


@pytest.mark.parametrize("level, box, h", [(0, SPHERE_BOX, 5 / 3), (3, SPHERE_BOX, 10 / 48),
                                           (5, GENUS_BOX, 6 / 64)])
def test_mesh_size(level, box, h):
    assert mesh_size(level, box) == pytest.approx(h, rel=1e-15)


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_tiling_and_orientation(level):
    m = build_cube_mesh(level)
    vol = m.signed_volumes()
    assert np.all(vol > 0)
    assert vol.sum() == pytest.approx(SPHERE_BOX.volume, rel=1e-12)
    n = 2 ** (level + 1)
    assert m.n_vertices == (n + 1) ** 3
    assert m.n_tets == 6 * n**3


@pytest.mark.parametrize("level", [0, 1, 2])
def test_conformity(level):
    m = build_cube_mesh(level)
    faces, counts = np.unique(tet_faces(m.tets), axis=0, return_counts=True)
    assert set(counts.tolist()) <= {1, 2}
    # faces used once lie on the box boundary
    lo, hi = np.array(SPHERE_BOX.lower), np.array(SPHERE_BOX.upper)
    bnd = m.vertices[faces[counts == 1]]
    on = np.any(np.all(np.isclose(bnd, lo), axis=1) | np.all(np.isclose(bnd, hi), axis=1), axis=1)
    assert np.all(on)
    assert np.sum(counts == 1) == 6 * 2 * (2 ** (level + 1)) ** 2


def test_shape_regularity_constant_across_levels():
    r0 = radius_ratio(build_cube_mesh(0).tet_coords())
    r1 = radius_ratio(build_cube_mesh(1).tet_coords())
    assert np.ptp(np.concatenate([r0, r1])) < 1e-10 * r0[0]


def test_capacity_error():
    with pytest.raises(MeshCapacityError):
        build_cube_mesh(12)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        build_cube_mesh(-1)
    with pytest.raises(ValueError):
        Box((0, 0, 0), (1, 0, 1))


def test_barycentric_roundtrip(rng):
    m = build_cube_mesh(1)
    X = m.tet_coords()[:20]
    lam = rng.dirichlet(np.ones(4), size=(20, 5))
    pts = np.einsum("tqk,tkd->tqd", lam, X)
    assert np.allclose(barycentric_coords(X, pts), lam, atol=1e-13)
    G = barycentric_gradients(X)
    assert np.allclose(G.sum(axis=1), 0.0, atol=1e-12)
    # grad lambda_i . (x_j - x_0) = delta_ij - delta_i0
    e = X[:, 1:] - X[:, :1]
    assert np.allclose(np.einsum("tid,tjd->tij", G[:, 1:], e), np.eye(3), atol=1e-12)
