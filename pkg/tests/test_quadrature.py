import numpy as np
import pytest
import sympy as sp

from tracefem.quadrature import surface_quadrature, tet_rule, triangle_rule, volume_quadrature

REF_TRI = np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]])
REF_TET = np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
x, y, z = sp.symbols("x y z")


def _tri_exact(expr):
    return float(sp.integrate(sp.integrate(expr, (y, 0, 1 - x)), (x, 0, 1)))


def _tet_exact(expr):
    return float(sp.integrate(sp.integrate(sp.integrate(expr, (z, 0, 1 - x - y)),
                                           (y, 0, 1 - x)), (x, 0, 1)))


def test_triangle_area():
    r = surface_quadrature(REF_TRI, 2)
    assert r.weights.sum() == pytest.approx(0.5, abs=1e-15)


def test_triangle_x2y2_is_one_over_180():
    r = surface_quadrature(REF_TRI, 4)
    val = np.sum(r.weights * r.points[:, 0] ** 2 * r.points[:, 1] ** 2)
    assert val == pytest.approx(1.0 / 180.0, rel=1e-13)
    assert _tri_exact(x**2 * y**2) == pytest.approx(1.0 / 180.0)


@pytest.mark.parametrize("degree", [2, 4])
def test_triangle_exactness_all_monomials(degree):
    r = surface_quadrature(REF_TRI, degree)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            val = np.sum(r.weights * r.points[:, 0] ** i * r.points[:, 1] ** j)
            assert val == pytest.approx(_tri_exact(x**i * y**j), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("degree", [2, 3])
def test_tet_exactness_all_monomials(degree):
    r = volume_quadrature(REF_TET, degree)
    assert r.weights.sum() == pytest.approx(1.0 / 6.0, rel=1e-14)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            for k in range(degree + 1 - i - j):
                p = r.points
                val = np.sum(r.weights * p[:, 0] ** i * p[:, 1] ** j * p[:, 2] ** k)
                assert val == pytest.approx(_tet_exact(x**i * y**j * z**k), rel=1e-12)


def test_tet_x_is_one_over_24():
    r = volume_quadrature(REF_TET, 2)
    assert np.sum(r.weights * r.points[:, 0]) == pytest.approx(1.0 / 24.0, rel=1e-14)


@pytest.mark.parametrize("rule, deg", [(triangle_rule, 2), (triangle_rule, 4), (tet_rule, 2),
                                       (tet_rule, 3)])
def test_positive_weights(rule, deg):
    bary, w = rule(deg)
    assert np.all(w > 0)
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(bary.sum(axis=1), 1.0)


def test_physical_weights_sum_to_measure(rng):
    tri = rng.standard_normal((10, 3, 3))
    area = 0.5 * np.linalg.norm(np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]), axis=1)
    assert np.allclose(surface_quadrature(tri, 4).weights.sum(axis=1), area, rtol=1e-14)


@pytest.mark.parametrize("fn, deg", [(triangle_rule, 3), (tet_rule, 4)])
def test_unsupported_degree(fn, deg):
    with pytest.raises(ValueError):
        fn(deg)
