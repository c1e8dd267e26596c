# coding=utf-8
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from alprox.nlp import ActiveSet, LineSearchParams, activation_steps, armijo_backtrack, trial_steps


def test_full_step_accepted():
    alpha, value = armijo_backtrack(lambda a: (1.0 - a) ** 2, 1.0, -2.0, LineSearchParams())
    assert alpha == 1.0
    assert value == 0.0


def test_backtracks_until_sufficient_decrease():
    # φ(α) = (1 − 4α)²: α = 1 and α = 0.5 increase φ, α = 0.25 reaches the minimum
    alpha, value = armijo_backtrack(lambda a: (1.0 - 4.0 * a) ** 2, 1.0, -8.0, LineSearchParams())
    assert alpha == 0.25
    assert value == 0.0


def test_non_finite_values_are_rejected():
    def _phi(alpha):
        return math.nan if alpha > 0.5 else 1.0 - alpha

    alpha, _ = armijo_backtrack(_phi, 1.0, -1.0, LineSearchParams())
    assert alpha == 0.5


def test_failure_returns_none():
    alpha, value = armijo_backtrack(lambda a: 1.0 + a, 1.0, -1.0, LineSearchParams(alpha_min=1e-3))
    assert alpha is None
    assert value == 1.0


def _kinked(alpha):
    # slope −1 up to the kink at 0.3, then a stiff penalty
    if alpha <= 0.3:
        return -alpha
    return -alpha + 1e4 * (alpha - 0.3) ** 2


def test_stops_on_the_kink():
    assert armijo_backtrack(_kinked, 0.0, -1.0, LineSearchParams())[0] == 0.25
    alpha, value = armijo_backtrack(_kinked, 0.0, -1.0, LineSearchParams(), breakpoints=[0.3])
    assert alpha == 0.3
    assert value == -0.3


def test_trial_steps_without_breakpoints():
    assert trial_steps(LineSearchParams(alpha_min=0.1)) == [1.0, 0.5, 0.25, 0.125]


def test_trial_steps_keep_extreme_breakpoints_between_powers():
    steps = trial_steps(LineSearchParams(alpha_min=0.1), [0.9, 0.7, 0.8, 0.3, 2.0, 0.05, 0.5])
    assert steps == [1.0, 0.9, 0.7, 0.5, 0.3, 0.25, 0.125]


def test_activation_steps():
    shifted = np.array([-1.0, -1.0, 0.5, -2.0, 0.0])
    d_shifted = np.array([2.0, -1.0, 1.0, 0.5, 1.0])
    steps = activation_steps(shifted, d_shifted)
    np.testing.assert_allclose(steps, [0.5, 4.0], rtol=1e-8)
    assert np.all(np.array([-1.0, -2.0]) + steps * np.array([2.0, 0.5]) > 0.0)


@pytest.mark.parametrize(
    'changes', [dict(c1=0.0), dict(c1=1.0), dict(backtrack_factor=1.0), dict(alpha_min=0.0), dict(roundoff=-1.0)],
)
def test_invalid_params(changes):
    with pytest.raises(ValueError):
        LineSearchParams(**changes)


@given(mask=st.lists(st.booleans(), max_size=12))
def test_active_set_from_mask(mask):
    active = ActiveSet.from_mask(np.array(mask, dtype=bool))
    assert len(active) == sum(mask)
    np.testing.assert_array_equal(active.mask, np.array(mask, dtype=bool))
    assert all(mask[index] for index in active)


@pytest.mark.parametrize('indices,size', [((2, 1), 3), ((1, 1), 3), ((3,), 3), ((-1,), 3)])
def test_invalid_active_set(indices, size):
    with pytest.raises(ValueError):
        ActiveSet(indices, size)


def test_active_set_membership():
    active = ActiveSet((0, 2), 4)
    assert 2 in active
    assert 1 not in active
    assert list(active) == [0, 2]
