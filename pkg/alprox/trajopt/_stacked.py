# coding=utf-8
"""
Flat NLP view of a trajectory problem

Variables are ordered (x_0, ..., x_N, u_0, ..., u_{N-1}); equalities (x_0 − x̄_0, f_0, ..., f_{N-1});
inequalities (h_0, ..., h_{N-1}, h_N). Multipliers stack in the same order as `Trajectory.lams`
and `Trajectory.nus`.
"""
import typing

import numpy as np

from alprox.nlp import NlpIterate, NlpProblem

from ._model import TrajOptProblem
from ._trajectory import Trajectory


class _Layout:

    def __init__(self, problem: TrajOptProblem):
        self.x_dims = problem.state_dims
        self.u_dims = problem.control_dims
        self.h_dims = problem.constraint_dims
        self.x_offsets = np.concatenate([[0], np.cumsum(self.x_dims)]).astype(int)
        n_states = int(self.x_offsets[-1])
        self.u_offsets = (n_states + np.concatenate([[0], np.cumsum(self.u_dims)])).astype(int)
        self.n = int(self.u_offsets[-1])
        self.c_offsets = np.concatenate([[0], np.cumsum(self.x_dims)]).astype(int)
        self.h_offsets = np.concatenate([[0], np.cumsum(self.h_dims)]).astype(int)
        self.ne = int(self.c_offsets[-1])
        self.ni = int(self.h_offsets[-1])

    def x(self, k: int) -> slice:
        return slice(self.x_offsets[k], self.x_offsets[k + 1])

    def u(self, k: int) -> slice:
        return slice(self.u_offsets[k], self.u_offsets[k + 1])

    def c(self, j: int) -> slice:
        return slice(self.c_offsets[j], self.c_offsets[j + 1])

    def h(self, j: int) -> slice:
        return slice(self.h_offsets[j], self.h_offsets[j + 1])

    def split(self, z: np.ndarray) -> typing.Tuple[typing.List[np.ndarray], typing.List[np.ndarray]]:
        xs = [z[self.x(k)] for k in range(len(self.x_dims))]
        us = [z[self.u(k)] for k in range(len(self.u_dims))]
        return xs, us


def stacked_nlp_view(problem: TrajOptProblem) -> NlpProblem:
    """
    :return: the equivalent NlpProblem over all states and controls
    """
    layout = _Layout(problem)
    stages, terminal = problem.stages, problem.terminal

    def eval_f(z):
        xs, us = layout.split(z)
        return sum(stage.cost_value(xs[k], us[k]) for k, stage in enumerate(stages)) + terminal.cost_value(xs[-1])

    def eval_grad_f(z):
        xs, us = layout.split(z)
        grad = np.zeros(layout.n)
        for k, stage in enumerate(stages):
            cost = stage.checked_cost(xs[k], us[k])
            grad[layout.x(k)] += cost.lx
            grad[layout.u(k)] += cost.lu
        grad[layout.x(problem.horizon)] += terminal.checked_cost(xs[-1]).lx
        return grad

    def eval_c(z):
        xs, us = layout.split(z)
        defects = [stage.dynamics_value(xs[k], us[k], xs[k + 1]) for k, stage in enumerate(stages)]
        return np.concatenate([xs[0] - problem.x0_bar] + defects)

    def eval_h(z):
        xs, us = layout.split(z)
        values = [stage.constraints_value(xs[k], us[k]) for k, stage in enumerate(stages)]
        return np.concatenate(values + [terminal.constraints_value(xs[-1])])

    def eval_jac_c(z):
        xs, us = layout.split(z)
        jac = np.zeros((layout.ne, layout.n))
        jac[layout.c(0), layout.x(0)] = np.eye(layout.x_dims[0])
        for k, stage in enumerate(stages):
            dyn = stage.checked_dynamics(xs[k], us[k], xs[k + 1])
            rows = layout.c(k + 1)
            jac[rows, layout.x(k)] = dyn.fx
            jac[rows, layout.u(k)] = dyn.fu
            jac[rows, layout.x(k + 1)] = dyn.fy
        return jac

    def eval_jac_h(z):
        xs, us = layout.split(z)
        jac = np.zeros((layout.ni, layout.n))
        for k, stage in enumerate(stages):
            con = stage.checked_constraints(xs[k], us[k])
            jac[layout.h(k), layout.x(k)] = con.hx
            jac[layout.h(k), layout.u(k)] = con.hu
        jac[layout.h(problem.horizon), layout.x(problem.horizon)] = terminal.checked_constraints(xs[-1]).hx
        return jac

    def eval_lag_hess(z, lam, nu):
        xs, us = layout.split(z)
        hess = np.zeros((layout.n, layout.n))
        for k, stage in enumerate(stages):
            cost = stage.checked_cost(xs[k], us[k])
            curvature = stage.curvature(xs[k], us[k], xs[k + 1], lam[layout.c(k + 1)], nu[layout.h(k)])
            rows_x, rows_u = layout.x(k), layout.u(k)
            hess[rows_x, rows_x] += cost.lxx + curvature.hxx
            hess[rows_x, rows_u] += cost.lxu + curvature.hxu
            hess[rows_u, rows_x] += (cost.lxu + curvature.hxu).T
            hess[rows_u, rows_u] += cost.luu + curvature.huu
        last = layout.x(problem.horizon)
        hess[last, last] += (terminal.checked_cost(xs[-1]).lxx
                             + terminal.curvature(xs[-1], nu[layout.h(problem.horizon)]))
        return hess

    return NlpProblem(
        n=layout.n,
        ne=layout.ne,
        ni=layout.ni,
        eval_f=eval_f,
        eval_grad_f=eval_grad_f,
        eval_c=eval_c,
        eval_h=eval_h,
        eval_jac_c=eval_jac_c,
        eval_jac_h=eval_jac_h if layout.ni else None,
        eval_lag_hess=eval_lag_hess,
    )


def stack_trajectory(problem: TrajOptProblem, traj: Trajectory) -> NlpIterate:
    """
    :return: the trajectory as a point of `stacked_nlp_view(problem)`
    """
    traj.check(problem)
    z = np.concatenate(traj.xs + traj.us)
    return NlpIterate(z, np.concatenate(traj.lams), np.concatenate(traj.nus))


def unstack(problem: TrajOptProblem, z, lam=None, nu=None) -> Trajectory:
    """
    :return: the Trajectory corresponding to a point of `stacked_nlp_view(problem)`
    """
    layout = _Layout(problem)
    z = np.asarray(z, dtype=float)
    if z.shape != (layout.n,):
        raise ValueError(f'stacked point has shape {z.shape}, expected ({layout.n},)')
    lam = np.zeros(layout.ne) if lam is None else np.asarray(lam, dtype=float)
    nu = np.zeros(layout.ni) if nu is None else np.asarray(nu, dtype=float)
    xs, us = layout.split(z)
    return Trajectory(
        [x.copy() for x in xs],
        [u.copy() for u in us],
        [lam[layout.c(j)].copy() for j in range(len(layout.x_dims))],
        [nu[layout.h(j)].copy() for j in range(len(layout.h_dims))],
    )
