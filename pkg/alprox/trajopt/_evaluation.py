# coding=utf-8
"""
Node-wise evaluation of a trajectory
"""
import typing

import numpy as np

from ._model import ConstraintJacobians, CostDerivatives, DynamicsJacobians, TrajOptProblem
from ._trajectory import Trajectory


class StageData(typing.NamedTuple):
    """Derivatives of stage k at the trajectory"""
    cost: CostDerivatives
    dyn: DynamicsJacobians
    con: ConstraintJacobians


class TrajectoryData(typing.NamedTuple):
    """
    Derivatives at every node; `initial` is the residual x_0 − x̄_0
    """
    initial: np.ndarray
    stages: typing.List[StageData]
    terminal_cost: CostDerivatives
    terminal_con: ConstraintJacobians


class TrajectoryValues(typing.NamedTuple):
    """
    Values only, as needed by the merit function
    """
    initial: np.ndarray
    costs: typing.List[float]
    defects: typing.List[np.ndarray]
    constraints: typing.List[np.ndarray]
    terminal_cost: float

    @property
    def total_cost(self) -> float:
        """Σℓ_k + ℓ_N"""
        return float(sum(self.costs)) + self.terminal_cost


def evaluate(problem: TrajOptProblem, traj: Trajectory) -> TrajectoryData:
    """
    Evaluates costs, dynamics and constraints with their derivatives at every node

    Raises:
        ValueError: a model rejected the point or returned wrongly shaped data
    """
    xs, us = traj.xs, traj.us
    stages = [
        StageData(
            stage.checked_cost(xs[k], us[k]),
            stage.checked_dynamics(xs[k], us[k], xs[k + 1]),
            stage.checked_constraints(xs[k], us[k]),
        )
        for k, stage in enumerate(problem.stages)
    ]
    terminal = problem.terminal
    return TrajectoryData(
        xs[0] - problem.x0_bar,
        stages,
        terminal.checked_cost(xs[-1]),
        terminal.checked_constraints(xs[-1]),
    )


def evaluate_values(problem: TrajOptProblem, traj: Trajectory) -> TrajectoryValues:
    """
    Evaluates node values only

    Raises:
        ValueError: a model rejected the point
    """
    xs, us = traj.xs, traj.us
    costs, defects, constraints = [], [], []
    for k, stage in enumerate(problem.stages):
        costs.append(stage.cost_value(xs[k], us[k]))
        defects.append(np.asarray(stage.dynamics_value(xs[k], us[k], xs[k + 1]), dtype=float))
        constraints.append(np.asarray(stage.constraints_value(xs[k], us[k]), dtype=float))
    constraints.append(np.asarray(problem.terminal.constraints_value(xs[-1]), dtype=float))
    return TrajectoryValues(xs[0] - problem.x0_bar, costs, defects, constraints,
                            problem.terminal.cost_value(xs[-1]))


def values_of(data: TrajectoryData) -> TrajectoryValues:
    """Values contained in already evaluated derivative data"""
    return TrajectoryValues(
        data.initial,
        [stage.cost.value for stage in data.stages],
        [stage.dyn.value for stage in data.stages],
        [stage.con.value for stage in data.stages] + [data.terminal_con.value],
        data.terminal_cost.value,
    )
