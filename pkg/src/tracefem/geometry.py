"""Level-set surfaces, the cut surface Gamma_h and discrete normals.

The discrete surface is the zero set of the piecewise linear nodal
interpolant of the level-set function.  It is extracted tet by tet with
marching tetrahedra; every tet whose nodal values change sign belongs to
the narrow band that carries the finite element unknowns.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import BackgroundMesh, barycentric_coords, barycentric_gradients

ZERO_SHIFT = 1e-12

# the six edges of a tet as local vertex pairs; P2 edge nodes use this order
TET_EDGES = np.array([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])


class EmptySurfaceError(RuntimeError):
    """The zero level set does not cross any tet of the background mesh."""


class DegenerateNormalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LevelSetField:
    phi: Callable[[np.ndarray], np.ndarray]
    grad_phi: Callable[[np.ndarray], np.ndarray]
    name: str


def sphere_level_set(center=(0.0, 0.0, 0.0), radius=1.0):
    c = np.asarray(center, dtype=float)

    def phi(x):
        return np.linalg.norm(np.asarray(x) - c, axis=-1) - radius

    def grad_phi(x):
        d = np.asarray(x) - c
        return d / np.linalg.norm(d, axis=-1, keepdims=True)

    return LevelSetField(phi, grad_phi, "sphere")


def quadric_sphere_level_set(radius=1.0):
    """``|x|^2 - r^2``: same zero set as the sphere, but globally quadratic."""

    def phi(x):
        x = np.asarray(x)
        return np.sum(x * x, axis=-1) - radius**2

    def grad_phi(x):
        return 2.0 * np.asarray(x, dtype=float)

    return LevelSetField(phi, grad_phi, "quadric_sphere")


def plane_level_set(normal=(1.0, 0.0, 0.0), offset=0.0):
    a = np.asarray(normal, dtype=float)

    def phi(x):
        return np.asarray(x) @ a - offset

    def grad_phi(x):
        return np.broadcast_to(a, np.shape(x)).copy()

    return LevelSetField(phi, grad_phi, "plane")


def genus_surface_level_set():
    """Sum-of-quartics surface with strongly varying curvature (zero set of phi)."""

    def phi(x):
        x = np.asarray(x)
        a, b, c = x[..., 0] ** 2, x[..., 1] ** 2, x[..., 2] ** 2
        return (
            (a + b - 4) ** 2 + (b - 1) ** 2 + (b + c - 4) ** 2
            + (a - 1) ** 2 + (a + c - 4) ** 2 + (c - 1) ** 2 - 13
        )

    def grad_phi(x):
        x = np.asarray(x, dtype=float)
        a, b, c = x[..., 0] ** 2, x[..., 1] ** 2, x[..., 2] ** 2
        g1 = 4 * x[..., 0] * ((a + b - 4) + (a - 1) + (a + c - 4))
        g2 = 4 * x[..., 1] * ((a + b - 4) + (b - 1) + (b + c - 4))
        g3 = 4 * x[..., 2] * ((b + c - 4) + (a + c - 4) + (c - 1))
        return np.stack([g1, g2, g3], axis=-1)

    return LevelSetField(phi, grad_phi, "genus")


@dataclass(frozen=True, eq=False)
class P1LevelSet:
    nodal_values: np.ndarray
    mesh: BackgroundMesh
    field: LevelSetField


def interpolate_p1(field, mesh):
    """Nodal interpolant; exact zeros are moved to ``+1e-12 h``."""
    vals = np.asarray(field.phi(mesh.vertices), dtype=float).copy()
    vals[vals == 0.0] = ZERO_SHIFT * mesh.h
    return P1LevelSet(vals, mesh, field)


@dataclass(frozen=True, eq=False)
class CutSurface:
    points: np.ndarray  # (nT, 3, 3) triangle corners
    parent: np.ndarray  # (nT,) background tet index
    normals: np.ndarray  # (nT, 3) unit normal, pointing towards increasing phi
    areas: np.ndarray  # (nT,)
    edge_keys: np.ndarray  # (nT, 3, 2) mesh edge (lo, hi) each corner lies on

    @property
    def n_triangles(self):
        return len(self.parent)

    @property
    def area(self):
        return float(self.areas.sum())


@dataclass(frozen=True, eq=False)
class NarrowBand:
    active_tets: np.ndarray  # sorted tet indices

    def __len__(self):
        return len(self.active_tets)


def _edge_points(X, vals, ids, ea, eb):
    """Zero crossings on tet edges (ea, eb); local indices, arrays (k,)."""
    r = np.arange(len(X))
    ga, gb = ids[r, ea], ids[r, eb]
    # orient every edge from its lower global id so shared edges give
    # bitwise-identical points in all tets that contain them
    swap = ga > gb
    a = np.where(swap, eb, ea)
    b = np.where(swap, ea, eb)
    pa, pb = vals[r, a], vals[r, b]
    t = pa / (pa - pb)
    xa, xb = X[r, a], X[r, b]
    pts = xa + t[:, None] * (xb - xa)
    keys = np.stack([np.minimum(ga, gb), np.maximum(ga, gb)], axis=1)
    return pts, keys


def extract_cut_surface(ls, allow_empty=False):
    """Marching tetrahedra on the P1 level set.

    Returns ``(CutSurface, NarrowBand)``.  Tets with one vertex on the
    other side give one triangle; 2-vs-2 tets give a planar quad split
    along its shorter diagonal.
    """
    mesh = ls.mesh
    vals_all = ls.nodal_values
    if np.any(vals_all == 0.0):
        raise ValueError("nodal level-set values must be nonzero")
    tv = vals_all[mesh.tets]
    active = np.flatnonzero((tv.min(axis=1) < 0) & (tv.max(axis=1) > 0))
    if len(active) == 0:
        if allow_empty:
            empty = np.zeros((0, 3, 3))
            return (
                CutSurface(empty, np.zeros(0, np.int64), np.zeros((0, 3)), np.zeros(0),
                           np.zeros((0, 3, 2), np.int64)),
                NarrowBand(active),
            )
        raise EmptySurfaceError("zero level set does not intersect the mesh")
    ids = mesh.tets[active]
    X = mesh.vertices[ids]
    vals = tv[active]
    neg = vals < 0
    nneg = neg.sum(axis=1)

    tris, parents, keys = [], [], []

    single = np.flatnonzero(nneg != 2)
    if len(single):
        # the vertex alone on its side
        lone_is_neg = nneg[single] == 1
        side = np.where(lone_is_neg[:, None], neg[single], ~neg[single])
        lone = np.argmax(side, axis=1)
        others = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])[lone]
        corner_pts, corner_keys = [], []
        for k in range(3):
            p, kk = _edge_points(X[single], vals[single], ids[single], lone, others[:, k])
            corner_pts.append(p)
            corner_keys.append(kk)
        tris.append(np.stack(corner_pts, axis=1))
        keys.append(np.stack(corner_keys, axis=1))
        parents.append(single)

    quad = np.flatnonzero(nneg == 2)
    if len(quad):
        order = np.argsort(~neg[quad], axis=1, kind="stable")
        a, b, c, d = order.T  # a, b negative; c, d positive
        Xq, vq, iq = X[quad], vals[quad], ids[quad]
        # cyclic order around the quad: ac, ad, bd, bc
        pac, kac = _edge_points(Xq, vq, iq, a, c)
        pad, kad = _edge_points(Xq, vq, iq, a, d)
        pbd, kbd = _edge_points(Xq, vq, iq, b, d)
        pbc, kbc = _edge_points(Xq, vq, iq, b, c)
        d1 = np.linalg.norm(pac - pbd, axis=1)
        d2 = np.linalg.norm(pad - pbc, axis=1)
        use1 = (d1 <= d2)[:, None, None]
        # diagonal ac-bd: (ac, ad, bd), (ac, bd, bc); diagonal ad-bc: (ac, ad, bc), (ad, bd, bc)
        t1 = np.where(use1, np.stack([pac, pad, pbd], 1), np.stack([pac, pad, pbc], 1))
        t2 = np.where(use1, np.stack([pac, pbd, pbc], 1), np.stack([pad, pbd, pbc], 1))
        k1 = np.where(use1, np.stack([kac, kad, kbd], 1), np.stack([kac, kad, kbc], 1))
        k2 = np.where(use1, np.stack([kac, kbd, kbc], 1), np.stack([kad, kbd, kbc], 1))
        tris += [t1, t2]
        keys += [k1, k2]
        parents += [quad, quad]

    tri = np.concatenate(tris)
    key = np.concatenate(keys)
    par_local = np.concatenate(parents)
    order = np.argsort(par_local, kind="stable")
    tri, key, par_local = tri[order], key[order], par_local[order]

    # orient by the gradient of the linear interpolant in the parent tet
    G = barycentric_gradients(X[par_local])
    grad = np.einsum("tk,tkd->td", vals[par_local], G)
    cr = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    flip = np.einsum("td,td->t", cr, grad) < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    key[flip] = key[flip][:, [0, 2, 1]]
    cr[flip] = -cr[flip]
    norm = np.linalg.norm(cr, axis=1)
    areas = 0.5 * norm
    normals = cr / np.where(norm > 0, norm, 1.0)[:, None]
    surface = CutSurface(tri, active[par_local], normals, areas, key)
    return surface, NarrowBand(active)


def is_watertight(surface):
    """Every cut-triangle edge shared by exactly two triangles."""
    k = surface.edge_keys
    ek = k.reshape(-1, 2)
    # encode a mesh edge by its two global vertex ids
    node = ek[:, 0] * (ek.max() + 1) + ek[:, 1]
    node = node.reshape(-1, 3)
    seg = np.stack([node[:, [0, 1]], node[:, [1, 2]], node[:, [2, 0]]], axis=1).reshape(-1, 2)
    seg = np.sort(seg, axis=1)
    _, counts = np.unique(seg, axis=0, return_counts=True)
    return bool(np.all(counts == 2))


def p2_nodes(X):
    """Vertices followed by the six edge midpoints, (..., 10, 3)."""
    mid = 0.5 * (X[..., TET_EDGES[:, 0], :] + X[..., TET_EDGES[:, 1], :])
    return np.concatenate([X, mid], axis=-2)


def p2_gradient(nodal, lam, grad_lam):
    """Gradient of the P2 interpolant with node values ``nodal`` (..., 10).

    ``lam`` holds barycentric coordinates (..., nq, 4), ``grad_lam`` the
    constant barycentric gradients (..., 4, 3).
    """
    vert = nodal[..., None, :4] * (4.0 * lam - 1.0)  # (..., nq, 4)
    g = np.einsum("...qk,...kd->...qd", vert, grad_lam)
    i, j = TET_EDGES[:, 0], TET_EDGES[:, 1]
    w = 4.0 * nodal[..., None, 4:]  # (..., 1, 6)
    g += np.einsum("...qe,...ed->...qd", w * lam[..., j], grad_lam[..., i, :])
    g += np.einsum("...qe,...ed->...qd", w * lam[..., i], grad_lam[..., j, :])
    return g


def _normalize(g):
    nrm = np.linalg.norm(g, axis=-1, keepdims=True)
    if np.any(nrm == 0.0) or not np.all(np.isfinite(nrm)):
        raise DegenerateNormalError("level-set gradient vanishes at a normal evaluation point")
    return g / nrm


def discrete_normals(field, mesh, tet_ids, points, mode="p2_interpolant"):
    """Unit normals at ``points`` (k, nq, 3) lying in tets ``tet_ids`` (k,).

    ``p2_interpolant`` differentiates the quadratic interpolant of phi on the
    containing tet; ``analytic`` normalizes the exact gradient.
    """
    points = np.asarray(points, dtype=float)
    if mode == "analytic":
        return _normalize(field.grad_phi(points))
    if mode != "p2_interpolant":
        raise ValueError(f"unknown normal mode {mode!r}")
    X = mesh.vertices[mesh.tets[tet_ids]]
    nodal = field.phi(p2_nodes(X))
    lam = barycentric_coords(X, points)
    G = barycentric_gradients(X)
    return _normalize(p2_gradient(nodal, lam, G))


def discrete_normal(field, mesh, point, mode="p2_interpolant", tet=None):
    """Normal at a single point; locates the containing tet if not given."""
    point = np.asarray(point, dtype=float)
    if tet is None:
        tet = locate_point(mesh, point)
    return discrete_normals(field, mesh, np.array([tet]), point[None, None], mode)[0, 0]


def locate_point(mesh, point, tol=1e-10):
    """Index of a tet containing ``point`` in the structured background mesh."""
    lo = np.asarray(mesh.box.lower)
    cell = np.floor((np.asarray(point) - lo) / mesh.h).astype(int)
    n = mesh.cells_per_side
    cell = np.clip(cell, 0, n - 1)
    c = (cell[0] * n + cell[1]) * n + cell[2]
    cand = np.arange(6 * c, 6 * c + 6)
    lam = barycentric_coords(mesh.vertices[mesh.tets[cand]], np.broadcast_to(point, (6, 1, 3)))
    inside = np.flatnonzero(lam[:, 0].min(axis=1) >= -tol)
    if len(inside) == 0:
        raise ValueError(f"point {point} is outside the mesh")
    return int(cand[inside[0]])


def write_surface_vtk(path, surface, point_data=None, title="Gamma_h"):
    """Legacy ASCII VTK polydata of the cut triangles.

    ``point_data`` maps names to per-corner arrays of shape (nT, 3) for
    scalars or (nT, 3, 3) for vectors.
    """
    pts = surface.points.reshape(-1, 3)
    nT = surface.n_triangles
    lines = ["# vtk DataFile Version 3.0", title, "ASCII", "DATASET POLYDATA",
             f"POINTS {len(pts)} double"]
    lines += [f"{p[0]:.17g} {p[1]:.17g} {p[2]:.17g}" for p in pts]
    lines.append(f"POLYGONS {nT} {4 * nT}")
    lines += [f"3 {3 * t} {3 * t + 1} {3 * t + 2}" for t in range(nT)]
    if point_data:
        lines.append(f"POINT_DATA {len(pts)}")
        for name, arr in point_data.items():
            arr = np.asarray(arr, dtype=float)
            if arr.ndim == 3:
                lines.append(f"VECTORS {name} double")
                lines += [f"{v[0]:.17g} {v[1]:.17g} {v[2]:.17g}" for v in arr.reshape(-1, 3)]
            else:
                lines.append(f"SCALARS {name} double 1")
                lines.append("LOOKUP_TABLE default")
                lines += [f"{v:.17g}" for v in arr.reshape(-1)]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
