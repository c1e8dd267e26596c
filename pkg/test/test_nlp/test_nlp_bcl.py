# coding=utf-8
import math

import numpy as np
import pytest

from alprox.nlp import BclParams, PenaltyState, bcl_update, multiplier_update, quadratic_program


@pytest.fixture()
def start():
    yield PenaltyState(mu_e=1e-2, mu_i=1e-2, rho=0.0, omega_l=1.0, eps_l=1.0)


def test_accept_tightens_tolerances(start):
    pen, accepted = bcl_update(start, BclParams(), 0.5)
    assert accepted
    assert pen.mu_e == start.mu_e
    assert pen.mu_i == start.mu_i
    assert pen.eps_l == pytest.approx(1e-2 ** 0.9)
    assert pen.omega_l == pytest.approx(1e-2)
    assert pen.eta_l == 0.5


def test_reject_stiffens_penalties(start):
    pen, accepted = bcl_update(start, BclParams(), 2.0)
    assert not accepted
    assert pen.mu_e == pytest.approx(1e-3)
    assert pen.mu_i == pytest.approx(1e-3)
    assert pen.eps_l == pytest.approx(1e-3 ** 0.1)
    assert pen.omega_l == pytest.approx(1e-3)


def test_reject_at_tolerance(start):
    _, accepted = bcl_update(start, BclParams(), start.eps_l)
    assert not accepted


def test_penalty_floors():
    bcl = BclParams(mu_e_floor=1e-6, mu_i_floor=1e-5)
    pen = PenaltyState(mu_e=1e-6, mu_i=1e-5, rho=0.0, omega_l=1.0, eps_l=1e-3)
    pen, _ = bcl_update(pen, bcl, 1.0)
    assert pen.mu_e == 1e-6
    assert pen.mu_i == 1e-5


def test_tolerance_floors(start):
    bcl = BclParams(eps_abs=1e-4)
    pen = start
    for _ in range(10):
        pen, accepted = bcl_update(pen, bcl, 0.0)
        assert accepted
    assert pen.eps_l == bcl.eps_abs
    assert pen.omega_l == pytest.approx(bcl.omega_floor)


def test_multiplier_update():
    prob = quadratic_program(np.eye(2), np.zeros(2), a_eq=[[1.0, 1.0]], b_eq=[1.0],
                             a_in=[[1.0, 0.0], [0.0, 1.0]], b_in=[0.0, 5.0])
    x_new = np.array([0.5, 1.0])
    lam, nu = multiplier_update(prob, x_new, np.array([1.0]), np.array([0.2, 0.3]),
                                np.array([2.0]), np.array([1.0, 0.0]), 0.5, 0.25)
    # c = 0.5, h = (0.5, -4): λ̂ = 2 + 0.5/0.5 = 3, ν̂ = [1 + 2, 0 − 16]+ = (3, 0)
    np.testing.assert_allclose(lam, [5.0])
    np.testing.assert_allclose(nu, [5.8, 0.0])


@pytest.mark.parametrize(
    'changes',
    [
        dict(mu_f=1.0), dict(alpha_bcl=0.0), dict(beta_bcl=1.5), dict(eps_abs=0.0), dict(mu_e0=-1.0),
        dict(rho0=-1e-6), dict(max_outer_iters=0), dict(max_inner_iters=0),
    ],
)
def test_invalid_bcl_params(changes):
    with pytest.raises(ValueError):
        BclParams(**changes)


def test_initial_penalty():
    bcl = BclParams(mu_e0=1e-12, mu_e_floor=1e-9, omega0=1e-9, eps_abs=1e-6, rho0=0.0)
    pen = bcl.initial_penalty()
    assert pen.mu_e == 1e-9
    assert pen.omega_l == pytest.approx(1e-7)
    assert pen.eps_l == 1.0
    assert pen.rho == 0.0
    assert math.isinf(pen.eta_l)


@pytest.mark.parametrize(
    'changes', [dict(mu_e=0.0), dict(mu_i=-1.0), dict(rho=-1.0), dict(omega_l=0.0), dict(eps_l=0.0)],
)
def test_invalid_penalty_state(start, changes):
    with pytest.raises(ValueError):
        start.replace(**changes)
