# coding=utf-8
"""
The trajectory solver against the same problem seen as one flat NLP
"""
import numpy as np
import pytest

from alprox import nlp
from alprox.nlp import HessianMode, NlpIterate, PenaltyState
from alprox.problems import BoundLqrConfig, make_bound_lqr
from alprox.trajopt import (
    Trajectory, backward_pass, linear_rollout, stack_trajectory, stacked_nlp_view, traj_activation_steps,
    traj_kkt_residuals, traj_merit, traj_merit_slope, traj_primal_infeasibility, traj_rl_residual, unstack,
)


def _stacked_center(problem, estimates):
    point = stack_trajectory(problem, estimates)
    return NlpIterate(point.x, point.lam, point.nu)


@pytest.mark.parametrize('seed', range(6))
def test_merit_and_residuals(seed, random_instance, shifted, pen):
    problem, traj = random_instance(seed)
    estimates = shifted(traj, seed)
    prob = stacked_nlp_view(problem)
    point = stack_trajectory(problem, traj)
    center = _stacked_center(problem, estimates)

    assert traj_merit(problem, traj, estimates, pen) == pytest.approx(
        nlp.merit_value(prob, point.x, point.lam, point.nu, center, pen), rel=1e-12)
    assert traj_rl_residual(problem, traj, estimates, pen) == pytest.approx(
        nlp.rl_residual(prob, point.x, point.lam, point.nu, center, pen)[1], rel=1e-12)
    dual_inf, primal_inf = traj_kkt_residuals(problem, traj)
    assert (dual_inf, primal_inf) == pytest.approx(nlp.kkt_residuals(prob, point.x, point.lam, point.nu), rel=1e-12)
    assert traj_primal_infeasibility(problem, traj) == pytest.approx(primal_inf)


@pytest.mark.parametrize('seed', range(6))
def test_activation_steps_match_the_stacked_rows(seed, random_instance, shifted, pen):
    problem, traj = random_instance(seed)
    estimates = shifted(traj, seed)
    direction = linear_rollout(problem, traj, backward_pass(problem, traj, estimates, pen))

    prob = stacked_nlp_view(problem)
    point = stack_trajectory(problem, traj)
    d_point = stack_trajectory(problem, direction)
    expected = nlp.activation_steps(prob.h(point.x) + pen.mu_i * stack_trajectory(problem, estimates).nu,
                                    prob.jac_h(point.x) @ d_point.x)
    steps = traj_activation_steps(problem, traj, direction, estimates, pen)
    np.testing.assert_allclose(np.sort(steps), np.sort(expected), rtol=1e-10)


@pytest.mark.parametrize('hess_mode', [HessianMode.GAUSS_NEWTON, HessianMode.EXACT])
@pytest.mark.parametrize('seed', range(6))
def test_ddp_direction_matches_stacked_newton_step(seed, hess_mode, random_instance, shifted, pen):
    problem, traj = random_instance(seed)
    estimates = shifted(traj, seed)
    backward = backward_pass(problem, traj, estimates, pen, estimates, hess_mode)
    direction = linear_rollout(problem, traj, backward)

    prob = stacked_nlp_view(problem)
    point = stack_trajectory(problem, traj)
    step = nlp.pd_newton_step(prob, point.x, point.lam, point.nu, _stacked_center(problem, estimates), pen,
                              hess_mode)
    assert backward.regularizations == 0
    assert step.inertia.delta == 0.0

    stacked_direction = stack_trajectory(problem, direction)
    np.testing.assert_allclose(stacked_direction.x, step.dx, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(stacked_direction.lam, step.dlam, rtol=1e-6, atol=1e-7)
    np.testing.assert_allclose(stacked_direction.nu, step.dnu, rtol=1e-6, atol=1e-7)


@pytest.mark.parametrize('seed', range(4))
def test_merit_slope(seed, random_instance, shifted, pen):
    problem, traj = random_instance(seed)
    estimates = shifted(traj, seed)
    direction = linear_rollout(problem, traj, backward_pass(problem, traj, estimates, pen))

    prob = stacked_nlp_view(problem)
    point = stack_trajectory(problem, traj)
    grad = nlp.merit_gradient(prob, point.x, point.lam, point.nu, _stacked_center(problem, estimates), pen)
    stacked_direction = stack_trajectory(problem, direction)
    expected = grad @ np.concatenate([stacked_direction.x, stacked_direction.lam, stacked_direction.nu])
    slope = traj_merit_slope(problem, traj, direction, estimates, pen)
    assert slope == pytest.approx(expected, rel=1e-9, abs=1e-12)
    assert slope < 0.0


def test_unstack_restores_the_trajectory(random_instance):
    problem, traj = random_instance(0)
    point = stack_trajectory(problem, traj)
    restored = unstack(problem, point.x, point.lam, point.nu)
    for left, right in zip(traj.xs + traj.us + traj.lams + traj.nus,
                           restored.xs + restored.us + restored.lams + restored.nus):
        np.testing.assert_array_equal(left, right)


def test_unstack_checks_the_size(random_instance):
    problem, _ = random_instance(0)
    with pytest.raises(ValueError):
        unstack(problem, np.zeros(1))


def _riccati(cfg):
    """Gains and cost-to-go Hessians of the unconstrained LQR, from node N down to 0"""
    p_mat = cfg.QN
    gains, hessians = [], [p_mat]
    for _ in range(cfg.N):
        gain = -np.linalg.solve(cfg.R + cfg.B.T @ p_mat @ cfg.B, cfg.B.T @ p_mat @ cfg.A)
        p_mat = cfg.Q + cfg.A.T @ p_mat @ (cfg.A + cfg.B @ gain)
        gains.append(gain)
        hessians.append(0.5 * (p_mat + p_mat.T))
    return gains[::-1], hessians[::-1]


@pytest.mark.parametrize('config', [
    BoundLqrConfig.rotational(u_bar=np.inf, N=25),
    BoundLqrConfig.unstable(u_bar=np.inf, N=25, Q=1.0, R=0.1, QN=10.0),
], ids=['rotational', 'unstable'])
def test_feedback_gains_match_riccati_recursion(config):
    problem = make_bound_lqr(config)
    traj = Trajectory.initial(problem)
    pen = PenaltyState(mu_e=1e-9, mu_i=1e-9, rho=0.0, omega_l=1.0, eps_l=1.0)
    backward = backward_pass(problem, traj, traj, pen, hess_mode=HessianMode.GAUSS_NEWTON)
    assert backward.regularizations == 0

    gains, hessians = _riccati(config)
    for stage_gains, expected in zip(backward.gains, gains):
        assert nlp.inf_norm(stage_gains.K_fb - expected) <= 1e-6 * (1.0 + nlp.inf_norm(expected))
    for value, expected in zip(backward.values, hessians):
        assert nlp.inf_norm(value.Vxx - expected) <= 1e-6 * (1.0 + nlp.inf_norm(expected))
