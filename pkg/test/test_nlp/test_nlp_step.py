# coding=utf-8
import numpy as np
import pytest

from alprox.kkt import Regularizer
from alprox.nlp import (
    HessianMode, NlpIterate, inf_norm, merit_gradient, pd_newton_step, quadratic_program, rl_residual,
)
from alprox.random_problems import random_convex_qp, random_equality_qp, rng_from_seed


@pytest.mark.parametrize('seed', range(5))
def test_step_solves_equality_qp_subproblem(seed, penalty):
    rng = rng_from_seed(seed)
    prob = random_equality_qp(rng, 5, 2)
    center = NlpIterate(rng.standard_normal(5), rng.standard_normal(2), np.zeros(0))
    pen = penalty(mu_e=1e-2, rho=1e-1)
    step = pd_newton_step(prob, center.x, center.lam, center.nu, center, pen, HessianMode.EXACT)
    _, norm = rl_residual(prob, center.x + step.dx, center.lam + step.dlam, center.nu, center, pen)
    assert norm < 1e-9
    assert step.inertia.matches((5, 2, 0))


@pytest.mark.parametrize('seed', range(50))
def test_step_matches_condensed_primal_system(seed, penalty):
    rng = rng_from_seed(seed)
    n = int(rng.integers(2, 9))
    ne = int(rng.integers(1, n))
    prob = random_equality_qp(rng, n, ne)
    x, lam = rng.standard_normal(n), rng.standard_normal(ne)
    center = NlpIterate(rng.standard_normal(n), rng.standard_normal(ne), np.zeros(0))
    pen = penalty(mu_e=0.05, rho=0.3)
    step = pd_newton_step(prob, x, lam, np.zeros(0), center, pen, HessianMode.EXACT)

    # eliminating dλ leaves (H + ρI + JᵀJ/μe)·dx = −(r_x + Jᵀw/μe)
    jac = prob.jac_c(x)
    hess = prob.lag_hess(x, lam, np.zeros(0), HessianMode.EXACT) + pen.rho * np.eye(n)
    r_x = prob.grad_f(x) + jac.T @ lam + pen.rho * (x - center.x)
    w = prob.c(x) + pen.mu_e * (center.lam - lam)
    dx = np.linalg.solve(hess + jac.T @ jac / pen.mu_e, -(r_x + jac.T @ w / pen.mu_e))
    dlam = (jac @ dx + w) / pen.mu_e
    assert inf_norm(step.dx - dx) <= 1e-10 * (1.0 + inf_norm(dx))
    assert inf_norm(step.dlam - dlam) <= 1e-10 * (1.0 + inf_norm(dlam))


def test_inactive_rows_are_zeroed(penalty):
    prob = quadratic_program(np.eye(2), np.array([-1.0, 0.0]), a_in=np.array([[1.0, 0.0], [0.0, 1.0]]),
                             b_in=np.array([10.0, 0.5]))
    x = np.array([0.0, 1.0])
    nu = np.array([0.5, 0.2])
    center = NlpIterate(x, np.zeros(0), np.zeros(2))
    step = pd_newton_step(prob, x, np.zeros(0), nu, center, penalty())
    assert tuple(step.active) == (1,)
    assert step.dnu[0] == -0.5
    assert step.stacked.shape == (4,)


@pytest.mark.parametrize('seed', range(5))
def test_step_is_a_descent_direction_for_convex_qp(seed, penalty):
    rng = rng_from_seed(seed)
    prob, _ = random_convex_qp(rng, 4, 1, 3)
    center = NlpIterate(rng.standard_normal(4), rng.standard_normal(1), rng.uniform(0.0, 1.0, 3))
    x, lam, nu = center.x + rng.standard_normal(4), rng.standard_normal(1), rng.uniform(0.0, 1.0, 3)
    pen = penalty(mu_e=1e-2, mu_i=1e-2, rho=1e-4)
    step = pd_newton_step(prob, x, lam, nu, center, pen, HessianMode.GAUSS_NEWTON)
    assert float(merit_gradient(prob, x, lam, nu, center, pen) @ step.stacked) < 0.0


def test_indefinite_hessian_is_regularized(penalty):
    prob = quadratic_program(np.diag([-1.0, 1.0]), np.ones(2))
    center = NlpIterate(np.zeros(2), np.zeros(0), np.zeros(0))
    regularizer = Regularizer()
    step = pd_newton_step(prob, np.zeros(2), np.zeros(0), np.zeros(0), center, penalty(rho=0.0),
                          HessianMode.EXACT, regularizer)
    assert step.inertia.delta > 1.0
    assert regularizer.corrections == 1


def test_identity_mode_ignores_the_hessian(penalty):
    prob = quadratic_program(np.diag([4.0, 9.0]), np.array([1.0, 1.0]))
    center = NlpIterate(np.zeros(2), np.zeros(0), np.zeros(0))
    step = pd_newton_step(prob, np.zeros(2), np.zeros(0), np.zeros(0), center, penalty(rho=0.0),
                          HessianMode.IDENTITY)
    np.testing.assert_allclose(step.dx, [-1.0, -1.0])
