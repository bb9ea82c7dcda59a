"""Krylov solvers for the saddle point system.

* SSOR-preconditioned CG (relaxation 1, i.e. symmetric Gauss-Seidel) with a
  compiled inner loop; used for the inner solves of the block preconditioner.
* Preconditioned MINRES with a true-residual (Euclidean) stopping test.
* Lanczos estimates of extreme eigenvalues for condition numbers.
"""
import logging
from dataclasses import dataclass, field

import numba
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

log = logging.getLogger(__name__)


class SolverBreakdown(ArithmeticError):
    pass


@dataclass
class KrylovReport:
    iterations: int
    final_residual: float
    converged: bool
    residual_history: list = field(default_factory=list)
    preconditioned_history: list = field(default_factory=list)


@numba.njit(cache=True)
def _ssor_apply(indptr, indices, data, diag, r, z):
    n = len(r)
    y = np.empty(n)
    for i in range(n):
        s = r[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j < i:
                s -= data[k] * y[j]
        y[i] = s / diag[i]
    for i in range(n - 1, -1, -1):
        s = diag[i] * y[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                s -= data[k] * z[j]
        z[i] = s / diag[i]


@numba.njit(cache=True)
def _csr_matvec(indptr, indices, data, x, out):
    for i in range(len(out)):
        s = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            s += data[k] * x[indices[k]]
        out[i] = s


@numba.njit(cache=True)
def _ssor_pcg(indptr, indices, data, diag, b, reduction, maxiter, hist):
    n = len(b)
    x = np.zeros(n)
    r = b.copy()
    z = np.zeros(n)
    q = np.zeros(n)
    bnorm = np.sqrt(np.dot(b, b))
    hist[0] = bnorm
    if bnorm == 0.0:
        return x, 0, 0.0, 0
    target = bnorm / reduction
    _ssor_apply(indptr, indices, data, diag, r, z)
    p = z.copy()
    rz = np.dot(r, z)
    rnorm = bnorm
    for it in range(1, maxiter + 1):
        _csr_matvec(indptr, indices, data, p, q)
        pq = np.dot(p, q)
        if not np.isfinite(pq) or pq == 0.0:
            return x, it, rnorm, -1
        alpha = rz / pq
        x += alpha * p
        r -= alpha * q
        rnorm = np.sqrt(np.dot(r, r))
        hist[it] = rnorm
        if not np.isfinite(rnorm):
            return x, it, rnorm, -1
        if rnorm <= target:
            return x, it, rnorm, 1
        _ssor_apply(indptr, indices, data, diag, r, z)
        rz_new = np.dot(r, z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    return x, maxiter, rnorm, 0


class SSORCG:
    """Reusable SSOR-CG solver for one SPD CSR matrix."""

    def __init__(self, M, reduction=1e4, max_iters=10000):
        M = sp.csr_matrix(M)
        M.sort_indices()
        self.M = M
        self.diag = M.diagonal().astype(float)
        if np.any(self.diag <= 0):
            raise ValueError("SSOR needs a positive diagonal")
        self.reduction = reduction
        self.max_iters = max_iters
        self.calls = 0
        self.total_iterations = 0

    def solve(self, b):
        b = np.ascontiguousarray(b, dtype=float)
        hist = np.zeros(self.max_iters + 1)
        M = self.M
        x, its, rnorm, flag = _ssor_pcg(M.indptr, M.indices, M.data, self.diag, b,
                                         float(self.reduction), self.max_iters, hist)
        if flag < 0:
            raise SolverBreakdown(f"nonfinite value in SSOR-CG at iteration {its}")
        self.calls += 1
        self.total_iterations += its
        report = KrylovReport(int(its), float(rnorm), flag == 1, hist[: its + 1].tolist())
        return x, report

    @property
    def average_iterations(self):
        return self.total_iterations / self.calls if self.calls else 0.0


def ssor_cg_solve(M, b, reduction=1e4, max_iters=10000):
    """Solve ``M x = b`` until ``|b - M x| <= |b| / reduction``."""
    return SSORCG(M, reduction, max_iters).solve(b)


class DirectSolve:
    """Sparse LU stand-in for an inner solver (testing and small systems)."""

    def __init__(self, M):
        try:
            self.lu = spla.splu(sp.csc_matrix(M))
        except RuntimeError as exc:
            raise SolverBreakdown(f"factorization failed: {exc}") from exc
        self.calls = 0
        self.total_iterations = 0

    def solve(self, b):
        self.calls += 1
        x = self.lu.solve(np.asarray(b, dtype=float))
        return x, KrylovReport(0, 0.0, True)

    @property
    def average_iterations(self):
        return 0.0


@dataclass
class BlockPreconditioner:
    """diag(Q_A, Q_S), each applied through an inner solver."""

    inner_A: object
    inner_S: object
    n: int
    inner_reduction: float = 1e4

    def apply_QA(self, r):
        return self.inner_A.solve(r)[0]

    def apply_QS(self, r):
        return self.inner_S.solve(r)[0]

    def __call__(self, r):
        return np.concatenate([self.apply_QA(r[: self.n]), self.apply_QS(r[self.n:])])

    @property
    def avg_inner_A(self):
        return self.inner_A.average_iterations

    @property
    def avg_inner_S(self):
        return self.inner_S.average_iterations


def make_block_preconditioner(system, mode_A="inner_cg", mode_S="SQ_inner_cg",
                              reduction=1e4, inner_max_iters=10000):
    if mode_A == "inner_cg":
        QA = SSORCG(system.A, reduction, inner_max_iters)
    elif mode_A == "direct":
        QA = DirectSolve(system.A)
    else:
        raise ValueError(f"unknown mode_A {mode_A!r}")
    if mode_S == "SQ_inner_cg":
        QS = SSORCG(system.S_Q, reduction, inner_max_iters)
    elif mode_S == "Mp_inner_cg":
        QS = SSORCG(system.M_p, reduction, inner_max_iters)
    elif mode_S == "direct":
        QS = DirectSolve(system.S_Q)
    else:
        raise ValueError(f"unknown mode_S {mode_S!r}")
    return BlockPreconditioner(QA, QS, system.n, reduction)


def minres(matvec, b, precond=None, tol=1e-8, max_iters=300):
    """Preconditioned MINRES from a zero initial guess.

    Stops when the Euclidean norm of the true residual ``b - K x`` is at
    most ``tol``.  ``residual_history`` holds those norms and
    ``preconditioned_history`` the monotone recurrence norms.
    """
    b = np.asarray(b, dtype=float)
    M = precond if precond is not None else (lambda r: r)
    x = np.zeros_like(b)
    bnorm = np.linalg.norm(b)
    report = KrylovReport(0, bnorm, bnorm <= tol, [bnorm], [])
    if bnorm <= tol:
        return x, report
    r1 = b.copy()
    y = M(r1)
    beta1 = np.dot(r1, y)
    if beta1 <= 0:
        raise SolverBreakdown("preconditioner is not positive definite")
    beta1 = np.sqrt(beta1)
    report.preconditioned_history.append(beta1)
    oldb, beta, dbar, epsln, phibar = 0.0, beta1, 0.0, 0.0, beta1
    cs, sn = -1.0, 0.0
    w = np.zeros_like(b)
    w2 = np.zeros_like(b)
    r2 = r1.copy()
    eps = np.finfo(float).eps
    for itn in range(1, max_iters + 1):
        v = y / beta
        y = matvec(v)
        if itn >= 2:
            y = y - (beta / oldb) * r1
        alfa = np.dot(v, y)
        y = y - (alfa / beta) * r2
        r1, r2 = r2, y
        y = M(r2)
        oldb = beta
        beta2 = np.dot(r2, y)
        if beta2 < 0:
            raise SolverBreakdown("preconditioner is not positive definite")
        beta = np.sqrt(beta2)
        oldeps = epsln
        delta = cs * dbar + sn * alfa
        gbar = sn * dbar - cs * alfa
        epsln = sn * beta
        dbar = -cs * beta
        gamma = max(np.hypot(gbar, beta), eps)
        cs, sn = gbar / gamma, beta / gamma
        phi = cs * phibar
        phibar = sn * phibar
        w1, w2 = w2, w
        w = (v - oldeps * w1 - delta * w2) / gamma
        x = x + phi * w
        res = np.linalg.norm(b - matvec(x))
        if not np.isfinite(res):
            raise SolverBreakdown(f"nonfinite residual at MINRES iteration {itn}")
        report.residual_history.append(res)
        report.preconditioned_history.append(phibar)
        report.iterations = itn
        report.final_residual = res
        if res <= tol:
            report.converged = True
            break
        if beta == 0.0:
            break
    return x, report


def minres_solve(system, precond, tol=1e-8, max_iters=300, project=True):
    """Solve [[A, B^T], [B, -C]] (u, p) = (rhs_u, rhs_p) and fix the
    pressure constant so that its mean over Gamma_h vanishes."""
    K = system.block_matrix()
    n, m = system.n, system.m
    rhs_p = system.rhs_p.copy()
    if project:
        # constants span the kernel; drop that component of the data
        rhs_p -= rhs_p.mean()
    b = np.concatenate([system.rhs_u, rhs_p])
    x, report = minres(K.dot, b, precond, tol, max_iters)
    u, p = x[:n], x[n:]
    p = zero_mean(p, system.Ms_p)
    return u, p, report


def zero_mean(p, Ms):
    ones = np.ones(len(p))
    w = Ms.dot(ones)
    return p - np.dot(w, p) / w.sum()


def lanczos_ritz(apply_M, dim, steps, rng=None, v0=None, deflate=None):
    """Ritz values of a symmetric operator after ``steps`` Lanczos steps.

    Uses full reorthogonalization.  A starting vector that vanishes (e.g.
    after deflation) is replaced by a fresh random one, at most three
    times.  ``deflate`` is an optional orthonormal (dim, k) basis of a
    known invariant subspace to exclude.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    steps = min(steps, dim)

    def project(v):
        if deflate is not None:
            v = v - deflate @ (deflate.T @ v)
        return v

    for attempt in range(4):
        v = project(rng.standard_normal(dim) if (v0 is None or attempt) else np.asarray(v0, float))
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        V = [v / nv]
        alphas, betas = [], []
        for j in range(steps):
            wv = project(apply_M(V[-1]))
            a = np.dot(V[-1], wv)
            alphas.append(a)
            Vm = np.array(V)
            wv = wv - Vm.T @ (Vm @ wv)
            wv = wv - Vm.T @ (Vm @ wv)
            bnext = np.linalg.norm(wv)
            # an invariant subspace: the Ritz values are exact
            if j == steps - 1 or bnext <= 1e-12 * max(1.0, abs(a)):
                break
            betas.append(bnext)
            V.append(wv / bnext)
        k = len(alphas)
        T = np.diag(alphas) + np.diag(betas[: k - 1], 1) + np.diag(betas[: k - 1], -1)
        return np.linalg.eigvalsh(T)
    raise SolverBreakdown("Lanczos broke down after 3 restarts")


def estimate_condition_number(apply_M, dim, steps=80, apply_inv=None, rng=None, deflate=None):
    """kappa = |lambda|_max / |lambda|_min of a symmetric operator.

    The largest magnitude comes from Lanczos on the operator.  The smallest
    comes from Lanczos on ``apply_inv`` when given (1 / largest Ritz value
    of the inverse), else from the smallest Ritz value of the squared
    operator.
    """
    ritz = lanczos_ritz(apply_M, dim, steps, rng, deflate=deflate)
    lam_max = np.max(np.abs(ritz))
    if apply_inv is not None:
        inv = lanczos_ritz(apply_inv, dim, steps, rng, deflate=deflate)
        lam_min = 1.0 / np.max(np.abs(inv))
    else:
        sq = lanczos_ritz(lambda v: apply_M(apply_M(v)), dim, steps, rng, deflate=deflate)
        lam_min = np.sqrt(max(np.min(sq), 0.0))
    return lam_max / lam_min
