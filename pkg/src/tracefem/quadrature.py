"""Quadrature rules on triangles and tetrahedra.

Reference rules are stored in barycentric coordinates with weights that
sum to one; mapping to a physical simplex scales them by its measure.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray  # (..., nq, 3)
    weights: np.ndarray  # (..., nq)


def _sym3(a, w):
    b = 1.0 - 2.0 * a
    return [(a, a, b), (a, b, a), (b, a, a)], [w] * 3


@lru_cache(maxsize=None)
def triangle_rule(degree):
    """Symmetric positive rule on the reference triangle (barycentric)."""
    if degree == 2:
        bary, w = _sym3(1.0 / 6.0, 1.0 / 3.0)
    elif degree == 4:
        b1, w1 = _sym3(0.44594849091596488632, 0.22338158967801146570)
        b2, w2 = _sym3(0.09157621350977074346, 0.10995174365532186764)
        bary, w = b1 + b2, w1 + w2
    else:
        raise ValueError(f"unsupported triangle quadrature degree {degree}")
    bary = np.array(bary)
    w = np.array(w)
    return bary, w / w.sum()


@lru_cache(maxsize=None)
def tet_rule(degree):
    """Positive rule on the reference tet (barycentric).

    Degree 2 is the symmetric 4-point rule; degree 3 is the 8-point
    collapsed Gauss-Jacobi product rule (the symmetric 5-point rule has a
    negative weight).
    """
    if degree == 2:
        a = 0.1381966011250105
        b = 1.0 - 3.0 * a
        bary = np.array([[b, a, a, a], [a, b, a, a], [a, a, b, a], [a, a, a, b]])
        return bary, np.full(4, 0.25)
    if degree == 3:
        # Duffy map of the cube onto {x, y, z >= 0, x + y + z <= 1}
        gx, wx = roots_jacobi(2, 2.0, 0.0)
        gy, wy = roots_jacobi(2, 1.0, 0.0)
        gz, wz = roots_jacobi(2, 0.0, 0.0)
        pts, ws = [], []
        for a, wa in zip(gx, wx):
            for b, wb in zip(gy, wy):
                for c, wc in zip(gz, wz):
                    s = 0.5 * (1 + a)
                    t = 0.5 * (1 + b)
                    u = 0.5 * (1 + c)
                    x = s
                    y = (1 - s) * t
                    z = (1 - s) * (1 - t) * u
                    pts.append((1 - x - y - z, x, y, z))
                    ws.append(wa * wb * wc)
        ws = np.array(ws)
        return np.array(pts), ws / ws.sum()
    raise ValueError(f"unsupported tet quadrature degree {degree}")


def surface_quadrature(triangle, degree=4):
    """Physical quadrature on triangles given as (..., 3, 3) corner arrays."""
    tri = np.asarray(triangle, dtype=float)
    bary, w = triangle_rule(degree)
    area = 0.5 * np.linalg.norm(
        np.cross(tri[..., 1, :] - tri[..., 0, :], tri[..., 2, :] - tri[..., 0, :]), axis=-1
    )
    pts = np.einsum("qk,...kd->...qd", bary, tri)
    return QuadratureRule(pts, area[..., None] * w)


def volume_quadrature(tet, degree=2):
    """Physical quadrature on tets given as (..., 4, 3) corner arrays."""
    X = np.asarray(tet, dtype=float)
    bary, w = tet_rule(degree)
    e = X[..., 1:, :] - X[..., :1, :]
    vol = np.abs(np.linalg.det(e)) / 6.0
    pts = np.einsum("qk,...kd->...qd", bary, X)
    return QuadratureRule(pts, vol[..., None] * w)
