# coding=utf-8
import math

import numpy as np
import pytest

from alprox.problems import PARKING_START, CarParkConfig, KinematicCarStage, car_step, make_car_park


def _jacobians(x, u, step=1e-6):
    fx, fu = np.zeros((4, 4)), np.zeros((4, 2))
    for index in range(4):
        shift = np.zeros(4)
        shift[index] = step
        fx[:, index] = (car_step(x + shift, u, 2.0, 0.03).value - car_step(x - shift, u, 2.0, 0.03).value) / (2 * step)
    for index in range(2):
        shift = np.zeros(2)
        shift[index] = step
        fu[:, index] = (car_step(x, u + shift, 2.0, 0.03).value - car_step(x, u - shift, 2.0, 0.03).value) / (2 * step)
    return fx, fu


@pytest.mark.parametrize(
    'x,u',
    [
        ((1.0, 1.0, 1.5 * math.pi, 2.0), (0.3, 1.0)),
        ((-0.5, 2.0, 0.2, -3.0), (-0.4, -2.0)),
        ((0.0, 0.0, 0.0, 0.0), (0.2, 0.5)),
        ((0.3, -0.1, 1.0, 5.0), (0.0, 0.0)),
    ],
    ids=['parking start', 'reverse', 'at rest', 'straight'],
)
def test_jacobians_match_finite_differences(x, u):
    x, u = np.array(x), np.array(u)
    step = car_step(x, u, 2.0, 0.03)
    fx, fu = _jacobians(x, u)
    np.testing.assert_allclose(step.fx, fx, atol=1e-7)
    np.testing.assert_allclose(step.fu, fu, atol=1e-7)


def test_straight_line_motion():
    step = car_step(np.array([0.0, 0.0, 0.0, 2.0]), np.array([0.0, 1.0]), 2.0, 0.1)
    np.testing.assert_allclose(step.value, [0.2, 0.0, 0.0, 2.1], atol=1e-14)


def test_at_rest_only_speed_changes():
    step = car_step(np.array([1.0, 1.0, 0.5, 0.0]), np.array([0.4, 3.0]), 2.0, 0.03)
    np.testing.assert_allclose(step.value, [1.0, 1.0, 0.5, 0.09], atol=1e-14)


def test_step_outside_the_model_domain():
    with pytest.raises(ValueError):
        car_step(np.array([0.0, 0.0, 0.0, 1000.0]), np.array([0.5, 0.0]), 2.0, 0.03)


def test_default_config():
    cfg = CarParkConfig()
    assert cfg.N == 500
    np.testing.assert_array_equal(cfg.u_bar, [0.5, 10.0])
    np.testing.assert_array_equal(cfg.x0, PARKING_START)


@pytest.mark.parametrize(
    'kwargs',
    [dict(dt=0.0), dict(T=1.0, dt=0.3), dict(x0=(0.0, 0.0)), dict(w_state=(1.0, 1.0, -1.0, 1.0)), dict(a_max=-1.0)],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        CarParkConfig(**kwargs)


def test_stage_bounds():
    stage = KinematicCarStage(CarParkConfig())
    con = stage.constraints(np.zeros(4), np.array([0.6, 0.0]))
    np.testing.assert_allclose(con.value, [0.1, -10.0, -1.1, -10.0])
    np.testing.assert_array_equal(con.hu, [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    assert not np.any(con.hx)


def test_stage_dynamics_defect():
    stage = KinematicCarStage(CarParkConfig())
    x, u = np.array(PARKING_START), np.array([0.1, 1.0])
    following = car_step(x, u, 2.0, 0.03).value
    dyn = stage.checked_dynamics(x, u, following)
    np.testing.assert_allclose(dyn.value, 0.0, atol=1e-15)
    np.testing.assert_array_equal(dyn.fy, -np.eye(4))


def test_make_car_park():
    problem = make_car_park(CarParkConfig(T=0.3))
    assert problem.horizon == 10
    assert problem.constraint_dims == [4] * 10 + [0]
    np.testing.assert_array_equal(problem.x0_bar, PARKING_START)
