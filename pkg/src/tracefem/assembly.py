"""Assembly of the stabilized P1-P1 surface Stokes system.

All surface integrals run over the cut triangles of Gamma_h with the
discrete normal evaluated at every quadrature point; volume integrals run
over the narrow band.  Local element matrices are accumulated in COO
form and converted to CSR, with symmetric matrices explicitly symmetrized
so that ``A == A.T`` holds bitwise.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.io
import scipy.sparse as sp

from .geometry import discrete_normals
from .mesh import barycentric_coords, barycentric_gradients
from .quadrature import surface_quadrature, volume_quadrature

CHUNK = 4096


@dataclass(frozen=True)
class FormParams:
    alpha: float
    tau: float
    rho_u: float
    rho_p: float
    c_tau: float = 1.0
    c_u: float = 1.0
    c_p: float = 1.0

    @classmethod
    def scaled(cls, h, alpha=1.0, c_tau=1.0, c_u=1.0, c_p=1.0):
        """tau = c_tau h^-2, rho_u = c_u h, rho_p = c_p h."""
        if min(c_tau, c_u, c_p) <= 0 or h <= 0:
            raise ValueError("stabilization constants and h must be positive")
        if alpha < 0:
            raise ValueError("alpha must be nonnegative")
        return cls(alpha, c_tau / h**2, c_u * h, c_p * h, c_tau, c_u, c_p)


@dataclass(frozen=True, eq=False)
class SurfaceData:
    """Quadrature data on Gamma_h, one row per cut triangle."""

    points: np.ndarray  # (T, nq, 3)
    weights: np.ndarray  # (T, nq)
    normals: np.ndarray  # (T, nq, 3)
    values: np.ndarray  # (T, nq, 4) hat functions of the parent tet
    grads: np.ndarray  # (T, 4, 3)
    tet_local: np.ndarray  # (T,) position of the parent in the band
    tet_global: np.ndarray  # (T,)


@dataclass(frozen=True, eq=False)
class BandData:
    """Volume quadrature data on the band tets."""

    weights: np.ndarray  # (K, nq)
    normals: np.ndarray  # (K, nq, 3)
    grads: np.ndarray  # (K, 4, 3)
    volumes: np.ndarray  # (K,)


def surface_data(space, surface, field, normal_mode="p2_interpolant", degree=4):
    rule = surface_quadrature(surface.points, degree)
    X = space.mesh.vertices[space.mesh.tets[surface.parent]]
    normals = discrete_normals(field, space.mesh, surface.parent, rule.points, normal_mode)
    return SurfaceData(
        points=rule.points,
        weights=rule.weights,
        normals=normals,
        values=barycentric_coords(X, rule.points),
        grads=barycentric_gradients(X),
        tet_local=space.local_tet(surface.parent),
        tet_global=surface.parent,
    )


def band_data(space, field, normal_mode="p2_interpolant", degree=2):
    tets = space.band.active_tets
    X = space.mesh.vertices[space.mesh.tets[tets]]
    rule = volume_quadrature(X, degree)
    normals = discrete_normals(field, space.mesh, tets, rule.points, normal_mode)
    vol = rule.weights.sum(axis=1)
    return BandData(rule.weights, normals, barycentric_gradients(X), vol)


def _chunks(n):
    for s in range(0, n, CHUNK):
        yield slice(s, min(s + CHUNK, n))


def _scatter(rows, cols, vals, shape):
    r = np.broadcast_to(rows[:, :, None], vals.shape).ravel()
    c = np.broadcast_to(cols[:, None, :], vals.shape).ravel()
    return sp.coo_matrix((vals.ravel(), (r, c)), shape=shape).tocsr()


def _symmetrize(M):
    M = (M + M.T) * 0.5
    M.sort_indices()
    return M.tocsr()


def _projectors(normals):
    return np.eye(3) - normals[..., :, None] * normals[..., None, :]


def velocity_surface_local(sd, params, sl):
    """Local 12x12 matrices of the surface part of A for triangles ``sl``."""
    w = sd.weights[sl]
    n = sd.normals[sl]
    P = _projectors(n)
    phi = sd.values[sl]
    gt = np.einsum("tqab,tib->tqia", P, sd.grads[sl])  # projected hat gradients
    S = np.einsum("tqia,tqja->tqij", gt, gt)
    K = 0.5 * np.einsum("tq,tqab,tqij->tiajb", w, P, S)
    K += 0.5 * np.einsum("tq,tqja,tqib->tiajb", w, gt, gt)
    if params.alpha:
        K += params.alpha * np.einsum("tq,tqi,tqj,tqab->tiajb", w, phi, phi, P)
    if params.tau:
        K += params.tau * np.einsum("tq,tqi,tqj,tqa,tqb->tiajb", w, phi, phi, n, n)
    return K.reshape(-1, 12, 12)


def assemble_velocity_form(space, sd, bd, params):
    """A: E_s(u):E_s(v) + alpha Pu.Pv + tau (n.u)(n.v) on Gamma_h plus
    rho_u (grad u n).(grad v n) on the band."""
    if sd.normals is None or not np.all(np.isfinite(sd.normals)):
        raise ValueError("missing normals at surface quadrature points")
    n = space.n_velocity_dofs
    A = sp.csr_matrix((n, n))
    for sl in _chunks(len(sd.weights)):
        dofs = space.velocity_dofs(sd.tet_local[sl])
        A = A + _scatter(dofs, dofs, velocity_surface_local(sd, params, sl), (n, n))
    if params.rho_u:
        dn = np.einsum("kib,kqb->kqi", bd.grads, bd.normals)
        Kn = params.rho_u * np.einsum("kq,kqi,kqj->kij", bd.weights, dn, dn)
        A = A + sp.kron(_scatter(space.tet_dofs, space.tet_dofs, Kn,
                                 (space.n_pressure_dofs,) * 2), sp.eye(3), format="csr")
    return _symmetrize(A)


def assemble_divergence_form(space, sd):
    """B[q, v] = int_{Gamma_h} (P grad q) . v ds, shape (m, n)."""
    m, n = space.n_pressure_dofs, space.n_velocity_dofs
    B = sp.csr_matrix((m, n))
    for sl in _chunks(len(sd.weights)):
        P = _projectors(sd.normals[sl])
        gt = np.einsum("tqab,tjb->tqja", P, sd.grads[sl])
        loc = np.einsum("tq,tqja,tqi->tjia", sd.weights[sl], gt, sd.values[sl]).reshape(-1, 4, 12)
        B = B + _scatter(space.tet_dofs[sd.tet_local[sl]],
                         space.velocity_dofs(sd.tet_local[sl]), loc, (m, n))
    B.sort_indices()
    return B


def tangential_velocity_mass(space, sd):
    """Mt[u, v] = int_{Gamma_h} P_h u . v ds, the alpha part of A for alpha = 1."""
    n = space.n_velocity_dofs
    M = sp.csr_matrix((n, n))
    for sl in _chunks(len(sd.weights)):
        P = _projectors(sd.normals[sl])
        loc = np.einsum("tq,tqi,tqj,tqab->tiajb", sd.weights[sl], sd.values[sl],
                        sd.values[sl], P).reshape(-1, 12, 12)
        dofs = space.velocity_dofs(sd.tet_local[sl])
        M = M + _scatter(dofs, dofs, loc, (n, n))
    return _symmetrize(M)


def band_stiffness(space, bd):
    K = np.einsum("k,kib,kjb->kij", bd.volumes, bd.grads, bd.grads)
    return _symmetrize(_scatter(space.tet_dofs, space.tet_dofs, K, (space.n_pressure_dofs,) * 2))


def band_mass(space, bd):
    loc = (np.ones((4, 4)) + np.eye(4)) / 20.0
    M = bd.volumes[:, None, None] * loc
    return _symmetrize(_scatter(space.tet_dofs, space.tet_dofs, M, (space.n_pressure_dofs,) * 2))


def surface_mass(space, sd):
    M = np.einsum("tq,tqi,tqj->tij", sd.weights, sd.values, sd.values)
    d = space.tet_dofs[sd.tet_local]
    return _symmetrize(_scatter(d, d, M, (space.n_pressure_dofs,) * 2))


def assemble_pressure_stab(space, bd, params):
    """C = rho_p * int_band grad p . grad q dx."""
    return _symmetrize(params.rho_p * band_stiffness(space, bd))


def assemble_mass_and_schur(space, sd, bd, h):
    """Band mass matrices M_u, M_p, the Schur preconditioner S_Q and the
    surface pressure mass Ms_p."""
    Mp = band_mass(space, bd)
    Mu = sp.kron(Mp, sp.eye(3), format="csr")
    Msp = surface_mass(space, sd)
    SQ = _symmetrize(Msp + h * band_stiffness(space, bd))
    return Mu, Mp, SQ, Msp


def assemble_rhs(space, sd, f=None, g=None):
    """Load vectors; ``rhs_p = -(g, q)`` so that the block row B u - C p = rhs_p
    enforces div_G u = g with B u = -(div_G u, q)."""
    n, m = space.n_velocity_dofs, space.n_pressure_dofs
    rhs_u = np.zeros(n)
    rhs_p = np.zeros(m)
    if f is not None:
        fv = np.asarray(f(sd.points), dtype=float)
        loc = np.einsum("tq,tqi,tqa->tia", sd.weights, sd.values, fv).reshape(-1, 12)
        np.add.at(rhs_u, space.velocity_dofs(sd.tet_local), loc)
    if g is not None:
        gv = np.asarray(g(sd.points), dtype=float)
        loc = np.einsum("tq,tqi,tq->ti", sd.weights, sd.values, gv)
        np.add.at(rhs_p, space.tet_dofs[sd.tet_local], -loc)
    return rhs_u, rhs_p


@dataclass(eq=False)
class SaddleSystem:
    A: sp.csr_matrix
    B: sp.csr_matrix
    C: sp.csr_matrix
    rhs_u: np.ndarray
    rhs_p: np.ndarray
    M_u: sp.csr_matrix
    M_p: sp.csr_matrix
    S_Q: sp.csr_matrix
    Ms_p: sp.csr_matrix
    extra: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.C.shape[0]

    def block_matrix(self):
        return sp.bmat([[self.A, self.B.T], [self.B, -self.C]], format="csr")

    def rhs(self):
        return np.concatenate([self.rhs_u, self.rhs_p])

    def surface_velocity_mass(self):
        return sp.kron(self.Ms_p, sp.eye(3), format="csr")


def assemble_system(space, sd, bd, params, h, f=None, g=None):
    A = assemble_velocity_form(space, sd, bd, params)
    B = assemble_divergence_form(space, sd)
    C = assemble_pressure_stab(space, bd, params)
    Mu, Mp, SQ, Msp = assemble_mass_and_schur(space, sd, bd, h)
    rhs_u, rhs_p = assemble_rhs(space, sd, f, g)
    return SaddleSystem(A, B, C, rhs_u, rhs_p, Mu, Mp, SQ, Msp)


def export_matrix_market(system, directory):
    """Write every block as ``<name>.mtx`` into ``directory``."""
    import pathlib

    d = pathlib.Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name in ("A", "B", "C", "M_u", "M_p", "S_Q", "Ms_p"):
        scipy.io.mmwrite(str(d / f"{name}.mtx"), getattr(system, name))
