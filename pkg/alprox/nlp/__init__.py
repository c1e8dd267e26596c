# coding=utf-8
"""
Generic constrained NLP solver: primal-dual augmented Lagrangian inner loop, BCL outer loop
"""

from ._bcl import bcl_update, multiplier_update
from ._linesearch import activation_steps, armijo_backtrack, trial_steps
from ._merit import (
    equality_estimate, equality_merit, equality_merit_grad, equality_merit_slope, inequality_active,
    inequality_estimate, inequality_merit, inequality_merit_grad, inequality_merit_slope, inf_norm,
    negative_part, positive_part,
)
from ._params import ActiveSet, BclParams, LineSearchParams, PenaltyState
from ._problem import HessianMode, NlpIterate, NlpProblem, SolveStatus, quadratic_program
from ._residuals import (
    active_set, complementarity, kkt_residuals, lagrangian, lagrangian_gradient, merit_gradient, merit_value,
    primal_infeasibility, rl_residual, shifted_multipliers, shifted_slack,
)
from ._solver import InnerSolution, InnerStep, SolveReport, inner_solve, solve
from ._step import NewtonStep, pd_newton_step
