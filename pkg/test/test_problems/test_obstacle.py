# coding=utf-8
import numpy as np
import pytest

from alprox.problems import BoundLqrConfig, LinearQuadraticStage, PolyhedralObstacle, make_obstacle_lqr, obstacle_scenario


@pytest.fixture(name='box')
def _box():
    return PolyhedralObstacle.box((-0.6, -0.2), (-0.3, 0.2))


def test_box_rows(box):
    np.testing.assert_array_equal(box.C, [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    np.testing.assert_array_equal(box.d, [-0.3, 0.2, 0.6, 0.2])
    assert box.nx == 2


@pytest.mark.parametrize(
    'point,value,gradient',
    [
        ((-0.4, 0.0), 0.1, (-1.0, 0.0)),
        ((0.0, 0.0), -0.3, (-1.0, 0.0)),
        ((-0.45, 1.0), -0.8, (0.0, -1.0)),
        ((-1.0, 0.05), -0.4, (1.0, 0.0)),
    ],
    ids=['inside', 'right', 'above', 'left'],
)
def test_value_and_gradient(box, point, value, gradient):
    point = np.array(point)
    assert box.value(point) == pytest.approx(value)
    np.testing.assert_array_equal(box.gradient(point), gradient)


def test_gradient_matches_finite_differences(box):
    point, step = np.array([0.4, -0.1]), 1e-6
    numeric = [(box.value(point + step * e) - box.value(point - step * e)) / (2 * step) for e in np.eye(2)]
    np.testing.assert_allclose(box.gradient(point), numeric, atol=1e-8)


def test_value_does_not_depend_on_row_order(box):
    order = [2, 0, 3, 1]
    shuffled = PolyhedralObstacle(box.C[order], box.d[order])
    for point in ([0.0, 0.0], [-0.45, 0.1], [-0.5, -3.0]):
        assert shuffled.value(np.array(point)) == pytest.approx(box.value(np.array(point)))


def test_first_maximizing_row_gives_the_gradient():
    square = PolyhedralObstacle.box((-1.0, -1.0), (1.0, 1.0))
    np.testing.assert_array_equal(square.gradient(np.zeros(2)), -square.C[0])


@pytest.mark.parametrize(
    'normals,offsets',
    [(np.zeros((0, 2)), np.zeros(0)), (np.eye(2), np.zeros(3))],
    ids=['empty', 'offsets'],
)
def test_invalid_obstacle(normals, offsets):
    with pytest.raises(ValueError):
        PolyhedralObstacle(normals, offsets)


def test_invalid_box():
    with pytest.raises(ValueError):
        PolyhedralObstacle.box((0.0, 1.0), (1.0, 0.0))


def test_scenario_dimensions():
    cfg, obstacles = obstacle_scenario()
    problem = make_obstacle_lqr(cfg, obstacles)
    assert problem.horizon == 40
    assert problem.constraint_dims == [5] * 40 + [1]
    np.testing.assert_array_equal(problem.x0_bar, [-1.0, 0.3])


def test_stage_rows(box):
    cfg = BoundLqrConfig.from_continuous(np.zeros((2, 2)), np.zeros(2), u_bar=0.6, N=3)
    stage = LinearQuadraticStage(cfg, [box])
    x, u = np.array([0.0, 0.1]), np.array([0.2, -0.7])
    con = stage.constraints(x, u)
    np.testing.assert_allclose(con.value, [-0.4, -1.3, -0.8, 0.1, box.value(x)])
    np.testing.assert_array_equal(con.hx[-1], box.gradient(x))
    assert not np.any(con.hx[:4])
    assert not np.any(con.hu[-1])


def test_dimension_mismatch(box):
    cfg = BoundLqrConfig(np.eye(3), np.eye(3), np.zeros(3), 1.0, 1.0, 1.0, 1.0, np.zeros(3), 2)
    with pytest.raises(ValueError):
        make_obstacle_lqr(cfg, [box])
