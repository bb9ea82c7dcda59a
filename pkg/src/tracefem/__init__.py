"""TraceFEM for the surface Stokes problem on implicitly defined surfaces.

Stabilized P1-P1 trace elements on a tetrahedral background mesh, solved
with block-preconditioned MINRES.
"""
from .analysis import ErrorReport, error_norms, fit_exponential, kinetic_energy
from .assembly import FormParams, SaddleSystem, assemble_system
from .geometry import extract_cut_surface, interpolate_p1, sphere_level_set
from .mesh import BackgroundMesh, build_cube_mesh
from .problems import (StokesProblem, backward_euler_run, condition_number, discretize,
                       solve_steady)
from .solvers import make_block_preconditioner, minres_solve, ssor_cg_solve
from .space import TraceSpace, build_space

__version__ = "0.1.0"

__all__ = [
    "BackgroundMesh", "ErrorReport", "FormParams", "SaddleSystem", "StokesProblem", "TraceSpace",
    "assemble_system", "backward_euler_run", "build_cube_mesh", "build_space", "condition_number",
    "discretize", "error_norms", "extract_cut_surface", "fit_exponential", "interpolate_p1",
    "kinetic_energy", "make_block_preconditioner", "minres_solve", "solve_steady",
    "sphere_level_set", "ssor_cg_solve",
]
