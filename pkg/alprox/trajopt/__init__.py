# coding=utf-8
"""
Constrained differential dynamic programming on the primal-dual augmented Lagrangian
"""

from ._backward import (
    BackwardResult, InitialStep, QParams, StageGains, TerminalGains, ValueModel, backward_pass, stage_q_params,
    terminal_value,
)
from ._evaluation import StageData, TrajectoryData, TrajectoryValues, evaluate, evaluate_values
from ._forward import forward_linear_rollout, linear_rollout
from ._merit import (
    shifted_estimates, traj_activation_steps, traj_complementarity, traj_kkt_residuals, traj_lagrangian_gradient,
    traj_merit, traj_merit_slope, traj_multiplier_update, traj_primal_infeasibility, traj_rl_residual,
)
from ._model import (
    ConstraintJacobians, CostDerivatives, DynamicsJacobians, StageCurvature, StageModel, TerminalModel,
    TrajOptProblem,
)
from ._solver import LineSearchResult, TrajSolveReport, linesearch_and_accept, solve
from ._stacked import stack_trajectory, stacked_nlp_view, unstack
from ._trajectory import Trajectory
