# coding=utf-8
from pathlib import Path

import numpy as np
import pytest

from alprox.problems import REGISTRY, get_problem, list_problems


def test_order():
    assert [entry.name for entry in list_problems()] == [
        'lqr-rot', 'lqr-unstable', 'lqr-obstacle', 'car-park', 'random-lqr', 'random-ocp']


def test_unknown_problem():
    with pytest.raises(KeyError):
        get_problem('nosuch')


@pytest.mark.parametrize('name', sorted(REGISTRY))
def test_build(name):
    instance = get_problem(name).build(None, 0)
    instance.initial.check(instance.problem)
    np.testing.assert_array_equal(instance.initial.xs[0], instance.problem.x0_bar)
    assert instance.dt > 0


@pytest.mark.parametrize('name', ['random-lqr', 'random-ocp'])
def test_randomized_entries_follow_the_seed(name):
    entry = get_problem(name)
    first, again, other = entry.build(None, 3), entry.build(None, 3), entry.build(None, 4)
    np.testing.assert_array_equal(first.problem.x0_bar, again.problem.x0_bar)
    assert first.problem.x0_bar.shape != other.problem.x0_bar.shape or not np.array_equal(
        first.problem.x0_bar, other.problem.x0_bar)


def test_bounds_metadata():
    instance = get_problem('car-park').build(None, 0)
    np.testing.assert_array_equal(instance.u_upper, [0.5, 10.0])
    np.testing.assert_array_equal(instance.u_lower, [-0.5, -10.0])
    assert instance.dt == pytest.approx(0.03)
    assert get_problem('random-ocp').build(None, 0).u_lower is None


def test_build_from_config_file():
    Path('lqr.ini').write_text('[main]\nn = 5\n', encoding='utf8')
    assert get_problem('lqr-rot').build('lqr.ini', 0).problem.horizon == 5
    assert get_problem('lqr-unstable').build('lqr.ini', 0).problem.horizon == 5


def test_obstacle_config_keeps_the_default_obstacle():
    Path('obstacle.yml').write_text('n: 10\n', encoding='utf8')
    problem = get_problem('lqr-obstacle').build('obstacle.yml', 0).problem
    assert problem.horizon == 10
    assert problem.constraint_dims[-1] == 1


def test_randomized_entries_ignore_config_files():
    Path('lqr.ini').write_text('[main]\nn = 5\n', encoding='utf8')
    with_file = get_problem('random-lqr').build('lqr.ini', 1)
    without = get_problem('random-lqr').build(None, 1)
    assert with_file.problem.horizon == without.problem.horizon


def test_problem_defaults():
    assert get_problem('car-park').defaults['mu0'] == 100.0
    assert get_problem('random-ocp').defaults['hessian'] == 'exact'
    assert all('tol' in entry.defaults for entry in list_problems())
