"""Error norms on Gamma_h, kinetic energy, decay fits and convergence rates."""
from dataclasses import asdict, dataclass

import numpy as np

from .assembly import _projectors


@dataclass(frozen=True)
class ErrorReport:
    l2_u: float
    h1_u: float
    l2_uT: float
    l2_un: float
    l2_p: float

    def as_dict(self):
        return asdict(self)


def _fields_at_quadrature(space, sd, u, p=None):
    """Values of u_h (T, nq, 3), its Jacobian (T, 3, 3) and p_h (T, nq)."""
    d = space.tet_dofs[sd.tet_local]
    nod = u.reshape(-1, 3)[d]  # (T, 4, 3)
    uq = np.einsum("tqi,tia->tqa", sd.values, nod)
    Ju = np.einsum("tia,tib->tab", nod, sd.grads)
    pq = None if p is None else np.einsum("tqi,ti->tq", sd.values, p[d])
    return uq, Ju, pq


def error_norms(space, sd, u, p, u_exact, p_exact, grad_u_exact):
    """L2/H1 errors on Gamma_h against closed-form exact fields.

    The H1 part compares tangential derivatives of the traces,
    ``(grad u* - grad u_h) P_h``, with ``P_h`` built from the discrete normal.
    """
    w = sd.weights
    n = sd.normals
    P = _projectors(n)
    uq, Ju, pq = _fields_at_quadrature(space, sd, u, p)
    ue = u_exact(sd.points)
    pe = p_exact(sd.points)
    Ge = grad_u_exact(sd.points)

    def l2(sq):
        # sq: pointwise squared magnitude, (T, nq)
        return float(np.sqrt(np.sum(w * sq)))

    e = ue - uq
    l2_u = l2(np.sum(e**2, axis=-1))
    dG = np.einsum("tqab,tqbc->tqac", Ge - Ju[:, None], P)
    h1_u = float(np.sqrt(l2_u**2 + l2(np.sum(dG**2, axis=(-1, -2)))**2))
    PuT = np.einsum("tqab,tqb->tqa", P, uq)
    l2_uT = l2(np.sum((ue - PuT) ** 2, axis=-1))
    l2_un = l2(np.sum(uq * n, axis=-1) ** 2)
    l2_p = l2((pe - pq) ** 2)
    return ErrorReport(l2_u, h1_u, l2_uT, l2_un, l2_p)


def surface_l2_norm(space, sd, u):
    uq, _, _ = _fields_at_quadrature(space, sd, u)
    return float(np.sqrt(np.sum(sd.weights * np.sum(uq**2, axis=-1))))


def kinetic_energy(space, sd, u):
    """0.5 * ||u_h||^2 over Gamma_h."""
    return 0.5 * surface_l2_norm(space, sd, u) ** 2


def fit_exponential(times, energies, window=(2.0, 5.0)):
    """Least-squares fit of ``A exp(-lam t)`` to the samples in ``window``.

    Fits a line to ``(t, log E)``; returns ``(A, lam)``.
    """
    t = np.asarray(times, dtype=float)
    E = np.asarray(energies, dtype=float)
    lo, hi = window
    sel = (t >= lo - 1e-12) & (t <= hi + 1e-12)
    if sel.sum() < 3:
        raise ValueError("need at least three samples in the fit window")
    if np.any(E[sel] <= 0):
        raise ValueError("energies in the fit window must be positive")
    slope, intercept = np.polyfit(t[sel], np.log(E[sel]), 1)
    return float(np.exp(intercept)), float(-slope)


def convergence_rates(values):
    """``log2(v_l / v_{l+1})`` for consecutive levels (h halves per level)."""
    v = np.asarray(values, dtype=float)
    if len(v) < 2:
        raise ValueError("need at least two levels")
    if np.any(v <= 0):
        raise ValueError("values must be positive")
    return np.log2(v[:-1] / v[1:])
