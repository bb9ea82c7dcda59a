import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import disc
from tracefem.geometry import (DegenerateNormalError, EmptySurfaceError, LevelSetField,
                               discrete_normal, discrete_normals, extract_cut_surface,
                               genus_surface_level_set, interpolate_p1, is_watertight,
                               plane_level_set, quadric_sphere_level_set, sphere_level_set,
                               write_surface_vtk)
from tracefem.manufactured import SINK, SOURCE
from tracefem.mesh import SPHERE_BOX, BackgroundMesh, Box, barycentric_coords, build_cube_mesh

REF_TET = np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])


def single_tet_levelset(values, X=REF_TET):
    mesh = BackgroundMesh(np.asarray(X, float), np.array([[0, 1, 2, 3]]), 0, 1.0,
                          Box((0, 0, 0), (1, 1, 1)), 1)
    field = LevelSetField(None, None, "nodal")

    class LS:
        pass

    ls = LS()
    ls.mesh, ls.nodal_values, ls.field = mesh, np.asarray(values, float), field
    return ls


def test_sphere_level_set_values():
    f = sphere_level_set()
    assert f.phi(np.array([1.0, 0, 0])) == 0.0
    assert f.phi(np.zeros(3)) == -1.0
    assert np.allclose(f.grad_phi(np.array([0.0, 2, 0])), [0, 1, 0])


def test_genus_level_set_values():
    f = genus_surface_level_set()
    assert abs(f.phi(SOURCE)) < 1e-10
    assert abs(f.phi(SINK)) < 1e-10
    # 3*16 + 3*1 - 13
    assert f.phi(np.zeros(3)) == pytest.approx(38.0)


def test_genus_gradient_finite_differences(rng):
    f = genus_surface_level_set()
    x = rng.uniform(-3, 3, (100, 3))
    eps = 1e-6
    fd = np.stack([(f.phi(x + eps * e) - f.phi(x - eps * e)) / (2 * eps) for e in np.eye(3)], -1)
    g = f.grad_phi(x)
    assert np.max(np.abs(fd - g) / (np.abs(g) + 1.0)) < 1e-6


def test_interpolate_corner_value():
    ls = interpolate_p1(sphere_level_set(), build_cube_mesh(0))
    v = ls.nodal_values[-1]  # vertex (5/3, 5/3, 5/3)
    assert v == pytest.approx(np.sqrt(3) * 5 / 3 - 1, rel=1e-14)
    assert v == pytest.approx(1.8868, abs=1e-4)


def test_zero_vertex_is_shifted():
    m = build_cube_mesh(0)
    # the unit-radius... use a plane through the x = 0 vertex layer
    ls = interpolate_p1(plane_level_set((1.0, 0, 0), 0.0), m)
    on_plane = np.isclose(m.vertices[:, 0], 0.0)
    assert np.all(ls.nodal_values[on_plane] == 1e-12 * m.h)
    assert not np.any(ls.nodal_values == 0.0)


def test_empty_surface():
    m = build_cube_mesh(0)
    ls = interpolate_p1(sphere_level_set(radius=0.1, center=(0.8, 0.8, 0.8)), m)
    ls.nodal_values[:] = np.abs(ls.nodal_values) + 1.0
    with pytest.raises(EmptySurfaceError):
        extract_cut_surface(ls)
    s, band = extract_cut_surface(ls, allow_empty=True)
    assert s.n_triangles == 0 and len(band) == 0


def test_one_vs_three_midpoint_triangle():
    s, band = extract_cut_surface(single_tet_levelset([-1, 1, 1, 1]))
    assert s.n_triangles == 1
    mids = 0.5 * REF_TET[1:]
    expected = 0.5 * np.linalg.norm(np.cross(mids[1] - mids[0], mids[2] - mids[0]))
    assert s.area == pytest.approx(expected, rel=1e-14)
    assert np.allclose(np.sort(s.points[0], axis=0), np.sort(mids, axis=0))
    # oriented towards increasing phi, i.e. away from vertex 0
    assert np.all(s.normals[0] > 0)


def test_two_vs_two_gives_coplanar_pair():
    s, _ = extract_cut_surface(single_tet_levelset([-1, -1, 1, 1]))
    assert s.n_triangles == 2
    assert np.allclose(s.normals[0], s.normals[1], atol=1e-14)
    # both lie in the plane lambda_0 + lambda_1 = 1/2
    lam = barycentric_coords(REF_TET, s.points.reshape(-1, 3))
    assert np.allclose(lam[:, 0] + lam[:, 1], 0.5)


def _check_cut(values, X=REF_TET):
    s, band = extract_cut_surface(single_tet_levelset(values, X))
    assert s.n_triangles in (1, 2)
    assert np.all(s.areas > 0)
    lam = barycentric_coords(X, s.points.reshape(-1, 3))
    assert lam.min() > -1e-12 and lam.max() < 1 + 1e-12
    # corners are zeros of the linear interpolant
    assert np.allclose(lam @ np.asarray(values, float), 0.0, atol=1e-12)
    # compare with the area of the convex cut polygon
    pts = np.unique(s.points.reshape(-1, 3).round(14), axis=0)
    c = pts.mean(axis=0)
    n = s.normals[0]
    u = np.cross(n, [1.0, 0, 0]) if abs(n[0]) < 0.9 else np.cross(n, [0, 1.0, 0])
    u /= np.linalg.norm(u)
    v = np.cross(n, u)
    ang = np.arctan2((pts - c) @ v, (pts - c) @ u)
    q = pts[np.argsort(ang)]
    poly = 0.5 * np.linalg.norm(sum(np.cross(q[i], q[(i + 1) % len(q)]) for i in range(len(q))))
    assert s.area == pytest.approx(poly, rel=1e-10)
    return s


def test_all_fourteen_sign_patterns():
    seen = 0
    for signs in itertools.product([-1.0, 1.0], repeat=4):
        if len(set(signs)) == 1:
            continue
        vals = np.array(signs) * np.array([0.3, 1.7, 0.9, 2.2])
        s = _check_cut(vals)
        assert s.n_triangles == (2 if sum(np.array(signs) < 0) == 2 else 1)
        seen += 1
    assert seen == 14


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.01, 10.0), min_size=4, max_size=4),
       st.lists(st.booleans(), min_size=4, max_size=4).filter(lambda b: 0 < sum(b) < 4))
def test_marching_tet_property(mags, negs):
    vals = np.where(negs, -1.0, 1.0) * np.array(mags)
    _check_cut(vals)


def test_quad_split_uses_shorter_diagonal():
    s, _ = extract_cut_surface(single_tet_levelset([-1, -3, 1, 2]))
    shared = [p for p in s.points[0] if np.any(np.all(np.isclose(s.points[1], p), axis=1))]
    assert len(shared) == 2
    diag = np.linalg.norm(shared[0] - shared[1])
    quad = np.unique(s.points.reshape(-1, 3).round(14), axis=0)
    other = [p for p in quad if not any(np.allclose(p, q) for q in shared)]
    assert diag <= np.linalg.norm(other[0] - other[1]) + 1e-14


@pytest.mark.parametrize("level", [1, 2, 3])
def test_sphere_surface_invariants(level):
    d = disc(level)
    s, band = d.surface, d.band
    assert is_watertight(s)
    assert np.array_equal(np.unique(s.parent), band.active_tets)
    X = d.mesh.vertices[d.mesh.tets[s.parent]]
    lam = barycentric_coords(X, s.points)
    assert lam.min() > -1e-12 and lam.max() < 1 + 1e-12
    vals = interpolate_p1(sphere_level_set(), d.mesh).nodal_values[d.mesh.tets[s.parent]]
    assert np.max(np.abs(np.einsum("tqk,tk->tq", lam, vals))) < 1e-12 * d.h
    assert s.area == pytest.approx(s.areas.sum(), rel=1e-12)
    # |grad phi| bounded below at surface points
    assert np.min(np.linalg.norm(sphere_level_set().grad_phi(s.points), axis=-1)) > 0.5


def test_genus_surface_watertight():
    d = disc(2, "genus_source_sink")
    assert is_watertight(d.surface)
    assert d.surface.area > 0


def _area_err(level):
    return abs(disc(level).surface.area - 4 * np.pi) / (4 * np.pi)


def test_area_error_shrinks_fourfold():
    e = [_area_err(lv) for lv in (1, 2, 3, 4)]
    ratios = np.array(e[:-1]) / np.array(e[1:])
    assert np.all((ratios > 3.2) & (ratios < 4.8))


@pytest.mark.xfail(strict=True, reason="Gamma_h on this mesh family is 4.6% short of 4 pi at l=2")
def test_area_within_3_percent_at_level_2():
    assert _area_err(2) < 0.03


@pytest.mark.xfail(strict=True, reason="Gamma_h on this mesh family is 1.1% short of 4 pi at l=3")
def test_area_within_1_percent_at_level_3():
    assert _area_err(3) < 0.01


def test_analytic_normal():
    m = build_cube_mesh(2)
    n = discrete_normal(sphere_level_set(), m, np.array([0.0, 0, 1.01]), mode="analytic")
    assert np.allclose(n, [0, 0, 1], atol=1e-15)


def test_p2_normal_reproduces_plane(rng):
    m = build_cube_mesh(1)
    f = plane_level_set((1.0, 2.0, -0.5), 0.3)
    tets = rng.integers(0, m.n_tets, 30)
    lam = rng.dirichlet(np.ones(4), size=(30, 4))
    pts = np.einsum("tqk,tkd->tqd", lam, m.tet_coords(tets))
    n = discrete_normals(f, m, tets, pts)
    assert np.allclose(n, np.array([1.0, 2.0, -0.5]) / np.linalg.norm([1.0, 2.0, -0.5]), atol=1e-13)


def test_p2_normal_exact_for_quadratic_level_set():
    d = disc(2)
    f = quadric_sphere_level_set()
    pts = d.sd.points
    n2 = discrete_normals(f, d.mesh, d.sd.tet_global, pts)
    na = discrete_normals(f, d.mesh, d.sd.tet_global, pts, mode="analytic")
    assert np.max(np.abs(n2 - na)) < 1e-12
    assert np.allclose(np.linalg.norm(n2, axis=-1), 1.0, atol=1e-14)


def _normal_angle_errors(level):
    d = disc(level)
    f = sphere_level_set()
    n2 = discrete_normals(f, d.mesh, d.sd.tet_global, d.sd.points)
    na = discrete_normals(f, d.mesh, d.sd.tet_global, d.sd.points, mode="analytic")
    ang = np.arccos(np.clip(np.sum(n2 * na, -1), -1, 1))
    return ang.max(), np.sqrt(np.sum(d.sd.weights * ang**2))


def test_p2_normal_error_is_second_order():
    (m2, l2), (m3, l3), (m4, _) = (_normal_angle_errors(lv) for lv in (2, 3, 4))
    # mean-square angle already shrinks ~4x from l=2 to l=3; the max
    # is still pre-asymptotic there and is checked one level later
    assert 3.0 < l2 / l3 < 5.0
    assert 3.0 < m3 / m4 < 5.0


def test_degenerate_normal():
    m = build_cube_mesh(0)
    f = LevelSetField(lambda x: np.zeros(np.shape(x)[:-1]), lambda x: np.zeros(np.shape(x)), "flat")
    with pytest.raises(DegenerateNormalError):
        discrete_normal(f, m, np.array([0.1, 0.2, 0.3]))
    with pytest.raises(DegenerateNormalError):
        discrete_normal(f, m, np.array([0.1, 0.2, 0.3]), mode="analytic")


def test_vtk_export(tmp_path):
    d = disc(0)
    path = tmp_path / "g.vtk"
    write_surface_vtk(path, d.surface, {"p": np.ones((d.surface.n_triangles, 3))})
    text = path.read_text().splitlines()
    assert text[0].startswith("# vtk DataFile")
    assert f"POLYGONS {d.surface.n_triangles} {4 * d.surface.n_triangles}" in text
    assert "SCALARS p double 1" in text
