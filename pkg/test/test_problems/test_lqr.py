# coding=utf-8
import numpy as np
import pytest

from alprox.problems import BoundLqrConfig, QuadraticTerminal, make_bound_lqr


def test_rotational_defaults():
    cfg = BoundLqrConfig.rotational()
    assert (cfg.nx, cfg.nu, cfg.N, cfg.dt) == (2, 2, 60, 0.05)
    np.testing.assert_array_equal(cfg.u_bar, [0.4, 0.4])
    np.testing.assert_array_equal(cfg.x0, [0.5, 0.5])
    np.testing.assert_allclose(cfg.Q, 1e-2 * np.eye(2))
    np.testing.assert_allclose(cfg.QN, 100.0 * np.eye(2))


def test_bound_lqr_dimensions():
    problem = make_bound_lqr(BoundLqrConfig.rotational(N=7))
    assert problem.horizon == 7
    assert problem.constraint_dims == [4] * 7 + [0]
    assert problem.state_dims == [2] * 8
    assert problem.control_dims == [2] * 7


def test_partially_bounded_controls():
    problem = make_bound_lqr(BoundLqrConfig.rotational(N=3, u_bar=(0.4, np.inf)))
    stage = problem.stages[0]
    con = stage.constraints(np.zeros(2), np.array([0.5, 100.0]))
    np.testing.assert_allclose(con.value, [0.1, -0.9])
    np.testing.assert_array_equal(con.hu, [[1.0, 0.0], [-1.0, 0.0]])


def test_stage_derivatives():
    cfg = BoundLqrConfig.rotational(N=2)
    stage = make_bound_lqr(cfg).stages[0]
    x, u, y = np.array([0.1, -0.2]), np.array([0.3, 0.0]), np.array([1.0, 1.0])
    cost = stage.cost(x, u)
    assert cost.value == pytest.approx(0.5 * 1e-2 * (0.05 + 0.09))
    np.testing.assert_allclose(cost.lx, 1e-2 * x)
    np.testing.assert_allclose(cost.lu, 1e-2 * u)
    dyn = stage.dynamics(x, u, y)
    np.testing.assert_allclose(dyn.value, cfg.A @ x + cfg.B @ u + cfg.c - y)
    np.testing.assert_array_equal(dyn.fy, -np.eye(2))


def test_terminal_without_rows():
    cfg = BoundLqrConfig.rotational(N=2)
    terminal = QuadraticTerminal(cfg)
    assert terminal.nh == 0
    assert terminal.cost(np.array([1.0, 0.0])).value == pytest.approx(50.0)


@pytest.mark.parametrize(
    'kwargs',
    [dict(N=0), dict(Q=-1.0), dict(R=((1.0, 2.0), (0.0, 1.0))), dict(u_bar=-0.1), dict(x0=(0.0, 0.0, 0.0))],
    ids=['horizon', 'q', 'asymmetric', 'bound', 'x0'],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        BoundLqrConfig.rotational(**kwargs)


def test_scalar_and_diagonal_weights():
    cfg = BoundLqrConfig(np.eye(2), np.eye(2), np.zeros(2), (1.0, 2.0), 3.0, 1.0, 1.0, np.zeros(2), 4)
    np.testing.assert_array_equal(cfg.Q, np.diag([1.0, 2.0]))
    np.testing.assert_array_equal(cfg.R, 3.0 * np.eye(2))
    assert cfg.dt == 1.0
