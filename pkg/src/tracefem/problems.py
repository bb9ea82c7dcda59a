"""End-to-end drivers for the steady and time-dependent experiments."""
import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import manufactured
from .analysis import error_norms, kinetic_energy
from .assembly import FormParams, assemble_system, band_data, surface_data, tangential_velocity_mass
from .geometry import extract_cut_surface, genus_surface_level_set, interpolate_p1, sphere_level_set
from .mesh import GENUS_BOX, SPHERE_BOX, build_cube_mesh
from .solvers import KrylovReport, estimate_condition_number, make_block_preconditioner, minres, zero_mean
from .space import build_space, interpolate_nodal

log = logging.getLogger(__name__)

CASES = ("sphere_manufactured", "sphere_killing", "genus_source_sink")


@dataclass(frozen=True)
class StokesProblem:
    case: str = "sphere_manufactured"
    level: int = 3
    alpha: float = 1.0
    c_tau: float = None  # 10 for the genus surface, 1 otherwise
    c_u: float = 1.0
    c_p: float = 1.0
    dt: float = 0.1
    t_end: float = 5.0
    tol: float = 1e-8
    max_iters: int = 300
    inner_reduction: float = 1e4
    normal_mode: str = "p2_interpolant"
    surface_degree: int = 4
    volume_degree: int = 2
    center: tuple = (0.0, 0.0, 0.0)
    mode_A: str = "inner_cg"
    mode_S: str = "SQ_inner_cg"

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if self.c_tau is None:
            object.__setattr__(self, "c_tau", 10.0 if self.case == "genus_source_sink" else 1.0)

    @property
    def box(self):
        return GENUS_BOX if self.case == "genus_source_sink" else SPHERE_BOX

    def level_set(self):
        if self.case == "genus_source_sink":
            return genus_surface_level_set()
        return sphere_level_set(center=self.center)


@dataclass(eq=False)
class Discretization:
    """Everything geometric for one problem: mesh, Gamma_h, band, space, quadrature."""

    problem: StokesProblem
    mesh: object
    field: object
    surface: object
    band: object
    space: object
    sd: object
    bd: object

    @property
    def h(self):
        return self.mesh.h


def discretize(problem):
    mesh = build_cube_mesh(problem.level, problem.box)
    field_ = problem.level_set()
    surface, band = extract_cut_surface(interpolate_p1(field_, mesh))
    space = build_space(band, mesh)
    sd = surface_data(space, surface, field_, problem.normal_mode, problem.surface_degree)
    bd = band_data(space, field_, problem.normal_mode, problem.volume_degree)
    return Discretization(problem, mesh, field_, surface, band, space, sd, bd)


@dataclass(eq=False)
class StokesSolution:
    u: np.ndarray
    p: np.ndarray
    report: KrylovReport
    disc: Discretization = None
    system: object = None
    avg_inner_A: float = 0.0
    avg_inner_S: float = 0.0
    wall_seconds: float = 0.0
    errors: object = None


@dataclass(eq=False)
class TimeSeries:
    times: list = field(default_factory=list)
    kinetic_energies: list = field(default_factory=list)
    iteration_counts: list = field(default_factory=list)
    converged: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    residual_histories: list = field(default_factory=list)
    avg_inner_A: float = 0.0
    avg_inner_S: float = 0.0
    wall_seconds: float = 0.0
    disc: Discretization = None
    final: StokesSolution = None


def _params(problem, h, alpha=None):
    a = problem.alpha if alpha is None else alpha
    return FormParams.scaled(h, alpha=a, c_tau=problem.c_tau, c_u=problem.c_u, c_p=problem.c_p)


def _solve(system, problem, rhs_u=None, rhs_p=None, precond=None):
    precond = precond or make_block_preconditioner(
        system, problem.mode_A, problem.mode_S, problem.inner_reduction
    )
    rhs_u = system.rhs_u if rhs_u is None else rhs_u
    rhs_p = system.rhs_p if rhs_p is None else rhs_p
    # constants span the pressure kernel; remove that component of the data
    b = np.concatenate([rhs_u, rhs_p - rhs_p.mean()])
    K = system.extra.get("K")
    if K is None:
        K = system.extra["K"] = system.block_matrix()
    x, report = minres(K.dot, b, precond, problem.tol, problem.max_iters)
    u, p = x[: system.n], zero_mean(x[system.n:], system.Ms_p)
    if not report.converged:
        log.warning("MINRES stopped after %d iterations, residual %.3e",
                    report.iterations, report.final_residual)
    return u, p, report, precond


def solve_steady(problem, disc=None, f=None, g=None):
    """Mesh -> level set -> cut -> space -> assembly -> MINRES.

    For the manufactured sphere case ``f`` and ``g`` default to the closed-form
    data and the returned solution carries its error norms.
    """
    t0 = time.perf_counter()
    disc = disc or discretize(problem)
    data = None
    if problem.case == "sphere_manufactured":
        data = manufactured.manufactured_data_sphere()
        f = data.f if f is None else f
        g = data.g if g is None else g
    elif problem.case == "genus_source_sink" and g is None:
        g = manufactured.source_sink_g(disc.h)
    system = assemble_system(disc.space, disc.sd, disc.bd, _params(problem, disc.h), disc.h, f, g)
    u, p, report, pc = _solve(system, problem)
    sol = StokesSolution(u, p, report, disc, system, pc.avg_inner_A, pc.avg_inner_S,
                         time.perf_counter() - t0)
    if data is not None and problem.alpha == 1.0:
        sol.errors = error_norms(disc.space, disc.sd, u, p, data.u, data.p, data.grad_u)
    return sol


def killing_initial_velocity(space):
    """Nodal interpolant of n x grad_G(Y1^x3 + Y1^x2 + Y2^x3 + Y3^x3)."""
    return interpolate_nodal(manufactured.killing_velocity_field, space)


def backward_euler_run(problem, u0=None, disc=None, snapshot_every=0):
    """Implicit Euler: per step a generalized Stokes solve with alpha = 1/dt and
    load (1/dt) P_h u_prev.  Energy 0.5 ||u_h||^2 on Gamma_h after every step.

    The load is projected like the tangential mass term in A; pairing the
    projected mass with an unprojected load amplifies the normal component
    whenever tau < 1/dt.
    """
    if problem.dt <= 0 or problem.t_end < problem.dt:
        raise ValueError("need dt > 0 and t_end >= dt")
    t0 = time.perf_counter()
    disc = disc or discretize(problem)
    space = disc.space
    if problem.case == "genus_source_sink":
        g = manufactured.source_sink_g(disc.h)
        u_prev = np.zeros(space.n_velocity_dofs) if u0 is None else u0
    else:
        g = None
        u_prev = killing_initial_velocity(space) if u0 is None else u0
    system = assemble_system(space, disc.sd, disc.bd, _params(problem, disc.h, 1.0 / problem.dt),
                             disc.h, None, g)
    Mt = tangential_velocity_mass(space, disc.sd)
    series = TimeSeries(disc=disc)
    series.times.append(0.0)
    series.kinetic_energies.append(kinetic_energy(space, disc.sd, u_prev))
    series.iteration_counts.append(0)
    series.converged.append(True)
    n_steps = int(round(problem.t_end / problem.dt))
    precond = None
    p = np.zeros(space.n_pressure_dofs)
    report = None
    for k in range(1, n_steps + 1):
        rhs_u = Mt.dot(u_prev) / problem.dt
        u, p, report, precond = _solve(system, problem, rhs_u, system.rhs_p, precond)
        series.times.append(k * problem.dt)
        series.kinetic_energies.append(kinetic_energy(space, disc.sd, u))
        series.iteration_counts.append(report.iterations)
        series.converged.append(report.converged)
        series.residual_histories.append(report.residual_history)
        if snapshot_every and k % snapshot_every == 0:
            series.snapshots.append((k * problem.dt, u.copy(), p.copy()))
        if not report.converged:
            log.error("step %d did not converge; aborting run", k)
            break
        u_prev = u
    series.avg_inner_A = precond.avg_inner_A if precond else 0.0
    series.avg_inner_S = precond.avg_inner_S if precond else 0.0
    series.wall_seconds = time.perf_counter() - t0
    series.final = StokesSolution(u_prev, p, report, disc, system)
    return series


def shifted(problem, shift):
    return replace(problem, center=tuple(np.asarray(problem.center) + np.asarray(shift)))


DENSE_LIMIT = 4000


def pressure_kernel(system):
    """Unit vector (0, 1) spanning the kernel of the block matrix."""
    z = np.zeros(system.n + system.m)
    z[system.n:] = 1.0 / np.sqrt(system.m)
    return z


def condition_number(problem, disc=None, steps=120, method="auto", rng=None):
    """cond(block matrix) on the complement of the constant-pressure kernel.

    ``method='dense'`` uses a full symmetric eigensolve; ``'lanczos'`` takes
    |lambda|_max from Lanczos and |lambda|_min from Lanczos on the inverse,
    applied through an LU factorization of the kernel-bordered matrix.
    """
    disc = disc or discretize(problem)
    system = assemble_system(disc.space, disc.sd, disc.bd, _params(problem, disc.h), disc.h)
    K = system.block_matrix()
    z = pressure_kernel(system)
    dim = K.shape[0]
    if method == "auto":
        method = "dense" if dim <= DENSE_LIMIT else "lanczos"
    if method == "dense":
        Kd = K.toarray()
        Q = np.linalg.qr(np.column_stack([z, np.eye(dim)[:, : dim - 1]]))[0]
        ev = np.linalg.eigvalsh(Q[:, 1:].T @ Kd @ Q[:, 1:])
        return float(np.max(np.abs(ev)) / np.min(np.abs(ev)))
    if method != "lanczos":
        raise ValueError(f"unknown method {method!r}")
    bordered = sp.bmat([[K, sp.csr_matrix(z[:, None])], [sp.csr_matrix(z[None, :]), None]], format="csc")
    lu = spla.splu(bordered)

    def apply_inv(v):
        return lu.solve(np.append(v, 0.0))[:dim]

    return float(estimate_condition_number(K.dot, dim, steps, apply_inv=apply_inv, rng=rng,
                                           deflate=z[:, None]))
