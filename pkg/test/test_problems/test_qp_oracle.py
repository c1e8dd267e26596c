# coding=utf-8
import numpy as np
import pytest

from alprox.nlp import BclParams
from alprox.problems import BoundLqrConfig, make_bound_lqr
from alprox.problems.qp_oracle import MAX_VARIABLES, condense, enumerate_active_sets
from alprox.random_problems import random_bound_lqr_config, rng_from_seed
from alprox.trajopt import solve


def _projected_gradient(cfg, controls):
    hess, grad, _, _ = condense(cfg)
    gradient = hess @ controls + grad
    bounds = np.tile(cfg.u_bar, cfg.N)
    at_upper = np.isclose(controls, bounds)
    at_lower = np.isclose(controls, -bounds)
    gradient[at_upper] = np.maximum(gradient[at_upper], 0.0)
    gradient[at_lower] = np.minimum(gradient[at_lower], 0.0)
    return gradient


def test_condensed_states_follow_the_dynamics():
    cfg = BoundLqrConfig.rotational(N=4)
    _, _, s_u, s_x = condense(cfg)
    controls = np.linspace(-0.3, 0.3, 8)
    states = (s_u @ controls + s_x).reshape(5, 2)
    np.testing.assert_array_equal(states[0], cfg.x0)
    for k in range(4):
        np.testing.assert_allclose(states[k + 1], cfg.A @ states[k] + cfg.B @ controls[2 * k:2 * k + 2] + cfg.c)


def test_loose_bounds_give_the_unconstrained_solution():
    cfg = BoundLqrConfig.rotational(N=3, u_bar=100.0)
    solution = enumerate_active_sets(cfg)
    hess, grad, _, _ = condense(cfg)
    np.testing.assert_allclose(solution.us.reshape(-1), np.linalg.solve(hess, -grad))
    assert solution.pattern == (0,) * 6
    assert solution.xs.shape == (4, 2)


@pytest.mark.parametrize('seed', range(6))
def test_solution_is_optimal(seed):
    cfg = random_bound_lqr_config(rng_from_seed(seed))
    solution = enumerate_active_sets(cfg)
    controls = solution.us.reshape(-1)
    assert np.all(np.abs(controls) <= np.tile(cfg.u_bar, cfg.N) + 1e-9)
    np.testing.assert_allclose(_projected_gradient(cfg, controls), 0.0, atol=1e-7)


def test_too_many_variables():
    with pytest.raises(ValueError):
        enumerate_active_sets(BoundLqrConfig.rotational(N=MAX_VARIABLES))


@pytest.mark.parametrize('seed', range(3))
def test_ddp_matches_the_oracle(seed):
    cfg = random_bound_lqr_config(rng_from_seed(seed))
    traj, report = solve(make_bound_lqr(cfg), bcl=BclParams(eps_abs=1e-9))
    assert report.converged, report.status
    reference = enumerate_active_sets(cfg)
    np.testing.assert_allclose(traj.controls, reference.us, atol=1e-5)
    np.testing.assert_allclose(traj.states, reference.xs, atol=1e-5)
