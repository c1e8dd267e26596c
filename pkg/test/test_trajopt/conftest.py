# coding=utf-8

import numpy as np
import pytest

from alprox.nlp import PenaltyState
from alprox.random_problems import random_ocp, rng_from_seed
from alprox.trajopt import Trajectory


@pytest.fixture()
def random_instance():
    """Random convex OCP with a perturbed, dynamically infeasible trajectory"""

    def _make(seed: int):
        rng = rng_from_seed(seed)
        problem = random_ocp(rng)
        traj = Trajectory.initial(problem)
        traj = Trajectory(
            [x + 0.1 * rng.standard_normal(x.size) for x in traj.xs],
            [u + 0.02 * rng.standard_normal(u.size) for u in traj.us],
            [0.1 * rng.standard_normal(lam.size) for lam in traj.lams],
            [rng.uniform(0.0, 0.5, nu.size) for nu in traj.nus],
        )
        return problem, traj

    yield _make


@pytest.fixture()
def pen():
    yield PenaltyState(mu_e=1e-2, mu_i=1e-2, rho=1e-3, omega_l=1.0, eps_l=1.0)


@pytest.fixture()
def shifted():
    """Multiplier estimates and proximal center next to a trajectory"""

    def _make(traj: Trajectory, seed: int = 0):
        rng = np.random.default_rng(seed)
        return Trajectory(
            [x + 0.05 * rng.standard_normal(x.size) for x in traj.xs],
            [u + 0.05 * rng.standard_normal(u.size) for u in traj.us],
            [lam + 0.05 * rng.standard_normal(lam.size) for lam in traj.lams],
            [np.abs(nu + 0.05 * rng.standard_normal(nu.size)) for nu in traj.nus],
        )

    yield _make
