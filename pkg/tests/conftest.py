import functools

import numpy as np
import pytest

from tracefem.problems import StokesProblem, backward_euler_run, discretize, solve_steady


@functools.lru_cache(maxsize=None)
def disc(level, case="sphere_manufactured", center=(0.0, 0.0, 0.0)):
    return discretize(StokesProblem(case=case, level=level, center=center))


@functools.lru_cache(maxsize=None)
def steady(level, c_p=1.0):
    pr = StokesProblem(level=level, c_p=c_p)
    return solve_steady(pr, disc=disc(level))


@functools.lru_cache(maxsize=None)
def killing(level, dt=0.1, t_end=5.0):
    pr = StokesProblem(case="sphere_killing", level=level, dt=dt, t_end=t_end)
    return backward_euler_run(pr, disc=disc(level))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
