"""Exact solutions and data for the three surface Stokes experiments."""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _manufactured_generated as gen

SOURCE = np.array([-1.0, 1.0, np.sqrt((7.0 + np.sqrt(19.0)) / 3.0)])
SINK = np.array([1.0, -1.0, -np.sqrt((7.0 + np.sqrt(19.0)) / 3.0)])


def _unit(x):
    """x / |x|, with 0 at the origin (a band vertex on coarse meshes)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    return np.divide(x, r, out=np.zeros_like(x), where=r > 0)


def _w(x):
    return np.stack([-x[..., 2] ** 2, x[..., 1], x[..., 0]], axis=-1)


def u_exact(x):
    """P (-x3^2, x2, x1) with P = I - x x^T / |x|^2 (defined off the sphere too)."""
    x = np.asarray(x, dtype=float)
    n = _unit(x)
    w = _w(x)
    return w - n * np.sum(n * w, axis=-1, keepdims=True)


def grad_u_exact(x):
    """Ambient Jacobian d u_a / d x_b of :func:`u_exact`, shape (..., 3, 3)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)[..., None, None]
    n = _unit(x)
    w = _w(x)
    P = np.eye(3) - n[..., :, None] * n[..., None, :]
    Gw = np.zeros(x.shape[:-1] + (3, 3))
    Gw[..., 0, 2] = -2.0 * x[..., 2]
    Gw[..., 1, 1] = 1.0
    Gw[..., 2, 0] = 1.0
    nw = np.sum(n * w, axis=-1)[..., None, None]
    dnw = np.einsum("...cb,...c->...b", P, w) / r[..., 0] + np.einsum("...cb,...c->...b", Gw, n)
    return Gw - nw * P / r - n[..., :, None] * dnw[..., None, :]


def p_exact(x):
    x = np.asarray(x, dtype=float)
    return x[..., 0] * x[..., 1] ** 3 + x[..., 2]


def forcing(x):
    """Momentum forcing for alpha = 1, taken constant along sphere normals."""
    return gen.forcing(_unit(x))


def divergence(x):
    """div_G u*, taken constant along sphere normals."""
    return gen.divergence(_unit(x))


@dataclass(frozen=True)
class ManufacturedData:
    u: Callable
    p: Callable
    f: Callable
    g: Callable
    grad_u: Callable


def manufactured_data_sphere():
    return ManufacturedData(u_exact, p_exact, forcing, divergence, grad_u_exact)


def legendre_zonal(z, k):
    """Unnormalized zonal harmonic P_k(z) for k = 1, 2, 3 and its derivative."""
    if k == 1:
        return z, np.ones_like(z)
    if k == 2:
        return 0.5 * (3 * z**2 - 1), 3 * z
    if k == 3:
        return 0.5 * (5 * z**3 - 3 * z), 0.5 * (15 * z**2 - 3)
    raise ValueError(k)


KILLING_TERMS = ((1, 2), (1, 1), (2, 2), (3, 2))  # (degree, axis): Y1^x3 + Y1^x2 + Y2^x3 + Y3^x3


def killing_velocity_field(x, terms=KILLING_TERMS):
    """n x grad(sum of zonal harmonics) at the closest sphere point."""
    y = _unit(x)
    grad = np.zeros_like(y)
    for k, axis in terms:
        _, dP = legendre_zonal(y[..., axis], k)
        grad[..., axis] += dP
    return np.cross(y, grad)


def source_sink_g(h, a=SOURCE, b=SINK):
    """Gaussian source at ``a`` and sink at ``b`` of width ``h``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def g(r):
        r = np.asarray(r, dtype=float)
        da = np.sum((r - a) ** 2, axis=-1)
        db = np.sum((r - b) ** 2, axis=-1)
        return (np.exp(-da / h**2) - np.exp(-db / h**2)) / h**2

    return g
