"""P1 finite element spaces on the narrow band."""
from dataclasses import dataclass

import numpy as np

from .mesh import barycentric_coords, barycentric_gradients


class EmptyBandError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TraceSpace:
    """Continuous P1 functions on the active tets.

    Pressure dofs are the active vertices in increasing global order.
    Velocity dofs are interleaved per vertex: dof ``3*i + a`` is component
    ``a`` at active vertex ``i``.
    """

    mesh: object
    band: object
    active_vertices: np.ndarray
    vertex_to_dof: np.ndarray  # global vertex id -> dof, -1 if inactive
    tet_dofs: np.ndarray  # (n_active_tets, 4) pressure dofs per band tet

    @property
    def n_pressure_dofs(self):
        return len(self.active_vertices)

    @property
    def n_velocity_dofs(self):
        return 3 * len(self.active_vertices)

    @property
    def dof_coords(self):
        return self.mesh.vertices[self.active_vertices]

    def local_tet(self, tet_ids):
        """Positions of global tet ids within the band (must be active)."""
        pos = np.searchsorted(self.band.active_tets, tet_ids)
        if np.any(pos >= len(self.band.active_tets)) or np.any(
            self.band.active_tets[np.minimum(pos, len(self.band.active_tets) - 1)] != tet_ids
        ):
            raise ValueError("tet is not in the narrow band")
        return pos

    def velocity_dofs(self, tet_local):
        d = self.tet_dofs[tet_local]
        return (3 * d[..., :, None] + np.arange(3)).reshape(*d.shape[:-1], 12)

    def evaluate(self, coeffs, tet_ids, points):
        """Evaluate a scalar (m,) or interleaved vector (3m,) field at points."""
        loc = self.local_tet(tet_ids)
        X = self.mesh.vertices[self.mesh.tets[tet_ids]]
        lam = barycentric_coords(X, points)
        d = self.tet_dofs[loc]
        c = np.asarray(coeffs)
        if len(c) == self.n_velocity_dofs:
            nod = c.reshape(-1, 3)[d]  # (k, 4, 3)
            return np.einsum("kqi,kid->kqd", lam, nod)
        return np.einsum("kqi,ki->kq", lam, c[d])

    def gradient(self, coeffs, tet_ids):
        """Constant per-tet gradient; (k, 3) for scalars, (k, 3, 3) Jacobians for vectors."""
        loc = self.local_tet(tet_ids)
        G = barycentric_gradients(self.mesh.vertices[self.mesh.tets[tet_ids]])
        d = self.tet_dofs[loc]
        c = np.asarray(coeffs)
        if len(c) == self.n_velocity_dofs:
            nod = c.reshape(-1, 3)[d]
            return np.einsum("kia,kib->kab", nod, G)
        return np.einsum("ki,kib->kb", c[d], G)


def build_space(band, mesh):
    if len(band.active_tets) == 0:
        raise EmptyBandError("narrow band is empty")
    tets = mesh.tets[band.active_tets]
    active = np.unique(tets)
    v2d = np.full(mesh.n_vertices, -1, dtype=np.int64)
    v2d[active] = np.arange(len(active))
    return TraceSpace(mesh, band, active, v2d, v2d[tets])


def eval_basis(tet_coords, point, tol=1e-10):
    """Values and gradients of the four hat functions on one tet."""
    X = np.asarray(tet_coords, dtype=float)
    lam = barycentric_coords(X, np.asarray(point, dtype=float)[None])[0]
    if lam.min() < -tol:
        raise ValueError(f"point {point} lies outside the tet")
    return lam, barycentric_gradients(X)


def interpolate_nodal(f, space):
    """Nodal values of ``f`` at active vertices; vectors come back interleaved."""
    vals = np.asarray(f(space.dof_coords), dtype=float)
    return vals.reshape(-1)
