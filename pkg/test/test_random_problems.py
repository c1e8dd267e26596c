# coding=utf-8
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alprox.random_problems import (
    random_bound_lqr_config, random_convex_qp, random_equality_qp, random_nlp, random_ocp, rng_from_seed,
)


@given(seed=st.integers(0, 2 ** 32 - 1))
@settings(max_examples=25, deadline=None)
def test_convex_qp_feasible_point(seed):
    problem, feasible = random_convex_qp(rng_from_seed(seed), 5, 2, 3)
    np.testing.assert_allclose(problem.eval_c(feasible), 0.0, atol=1e-12)
    assert np.all(problem.eval_h(feasible) < 0.0)
    assert np.min(np.linalg.eigvalsh(problem.eval_lag_hess(feasible, np.zeros(2), np.zeros(3)))) > 0.0


def test_equality_qp_dimensions():
    problem = random_equality_qp(rng_from_seed(0), 4, 3)
    assert (problem.n, problem.ne, problem.ni) == (4, 3, 0)


def test_too_many_equalities():
    with pytest.raises(ValueError):
        random_convex_qp(rng_from_seed(0), 3, 3)


@pytest.mark.parametrize('seed', range(4))
def test_nlp_hessian_matches_finite_differences(seed):
    rng = rng_from_seed(seed)
    problem = random_nlp(rng, 4, 2, 3)
    x, lam, nu = rng.standard_normal(4), rng.standard_normal(2), rng.uniform(0.0, 1.0, 3)

    def lag_grad(point):
        return (problem.eval_grad_f(point) + problem.eval_jac_c(point).T @ lam
                + problem.eval_jac_h(point).T @ nu)

    step = 1e-6
    numeric = np.column_stack([(lag_grad(x + step * e) - lag_grad(x - step * e)) / (2 * step) for e in np.eye(4)])
    np.testing.assert_allclose(problem.eval_lag_hess(x, lam, nu), numeric, atol=1e-6)


@pytest.mark.parametrize('seed', range(4))
def test_nlp_jacobians_match_finite_differences(seed):
    rng = rng_from_seed(seed)
    problem = random_nlp(rng, 3, 2, 2)
    x, step = rng.standard_normal(3), 1e-6
    for value, jacobian in ((problem.eval_c, problem.eval_jac_c), (problem.eval_h, problem.eval_jac_h)):
        numeric = np.column_stack([(value(x + step * e) - value(x - step * e)) / (2 * step) for e in np.eye(3)])
        np.testing.assert_allclose(jacobian(x), numeric, atol=1e-7)


@pytest.mark.parametrize('seed', range(10))
def test_bound_lqr_config_is_small(seed):
    cfg = random_bound_lqr_config(rng_from_seed(seed))
    assert cfg.N * cfg.nu <= 8
    assert cfg.N >= 2
    assert np.all(cfg.u_bar > 0)


@pytest.mark.parametrize('seed', range(10))
def test_ocp_is_feasible_with_zero_controls(seed):
    problem = random_ocp(rng_from_seed(seed))
    state = problem.x0_bar
    for stage in problem.stages:
        zero = np.zeros(stage.nu)
        assert np.all(stage.constraints_value(state, zero) < 0.0)
        state = stage.dynamics_value(state, zero, np.zeros(stage.nx_next))
    assert np.all(problem.terminal.constraints_value(state) < 0.0)


def test_ocp_dimensions():
    problem = random_ocp(rng_from_seed(0), horizon=3, nx=2, nu=1)
    assert problem.horizon == 3
    assert problem.state_dims == [2] * 4
    assert problem.control_dims == [1] * 3


def test_same_seed_same_instance():
    first, again = random_ocp(rng_from_seed(5)), random_ocp(rng_from_seed(5))
    np.testing.assert_array_equal(first.x0_bar, again.x0_bar)
    np.testing.assert_array_equal(first.stages[0].A, again.stages[0].A)
