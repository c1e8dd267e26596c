# coding=utf-8
"""
Trajectory merit function, residuals and multiplier estimates, computed node by node
"""
import typing

import numpy as np

from alprox.nlp import (
    PenaltyState, activation_steps, equality_estimate, equality_merit, equality_merit_slope, inequality_estimate,
    inequality_merit, inequality_merit_slope, inf_norm, positive_part,
)

from ._evaluation import TrajectoryData, TrajectoryValues, evaluate, evaluate_values, values_of
from ._model import TrajOptProblem
from ._trajectory import Trajectory

Arrays = typing.List[np.ndarray]


def _values(problem, traj, values) -> TrajectoryValues:
    if values is None:
        return evaluate_values(problem, traj)
    if isinstance(values, TrajectoryData):
        return values_of(values)
    return values


def _equalities(values: TrajectoryValues) -> Arrays:
    return [values.initial] + list(values.defects)


def _prox_distance(traj: Trajectory, center: Trajectory) -> float:
    total = 0.0
    for current, anchor in zip(traj.xs + traj.us, center.xs + center.us):
        diff = current - anchor
        total += float(diff @ diff)
    return total


def traj_merit(problem: TrajOptProblem, traj: Trajectory, estimates: Trajectory, pen: PenaltyState,
               prox_center: typing.Optional[Trajectory] = None,
               values: typing.Union[TrajectoryValues, TrajectoryData, None] = None) -> float:
    """
    Sum over nodes of the primal-dual merit terms plus (ρ/2)·Σ‖w − w_center‖² over states and controls

    Args:
        problem: problem
        traj: point to evaluate
        estimates: multiplier estimates (λ_l, ν_l), taken from its `lams` and `nus`
        pen: penalty state
        prox_center: proximal center, `estimates` when None
        values: node values at `traj` if already known

    Raises:
        ValueError: a model rejected the point
    """
    prox_center = estimates if prox_center is None else prox_center
    values = _values(problem, traj, values)
    total = values.total_cost
    for c_value, lam, lam_l in zip(_equalities(values), traj.lams, estimates.lams):
        total += equality_merit(c_value, lam, lam_l, pen.mu_e)
    for h_value, nu, nu_l in zip(values.constraints, traj.nus, estimates.nus):
        total += inequality_merit(h_value, nu, nu_l, pen.mu_i)
    return total + 0.5 * pen.rho * _prox_distance(traj, prox_center)


def traj_merit_slope(problem: TrajOptProblem, traj: Trajectory, direction: Trajectory, estimates: Trajectory,
                     pen: PenaltyState, prox_center: typing.Optional[Trajectory] = None,
                     data: typing.Optional[TrajectoryData] = None) -> float:
    """
    Directional derivative φ′(0) of `traj_merit` along `direction`, active sets frozen at `traj`
    """
    prox_center = estimates if prox_center is None else prox_center
    data = evaluate(problem, traj) if data is None else data
    xs, us, dxs, dus = traj.xs, traj.us, direction.xs, direction.us

    slope = equality_merit_slope(data.initial, traj.lams[0], estimates.lams[0], pen.mu_e,
                                 dxs[0], direction.lams[0])
    for k, stage in enumerate(data.stages):
        cost, dyn, con = stage
        slope += float(cost.lx @ dxs[k] + cost.lu @ dus[k])
        slope += pen.rho * float((xs[k] - prox_center.xs[k]) @ dxs[k] + (us[k] - prox_center.us[k]) @ dus[k])
        d_defect = dyn.fx @ dxs[k] + dyn.fu @ dus[k] + dyn.fy @ dxs[k + 1]
        slope += equality_merit_slope(dyn.value, traj.lams[k + 1], estimates.lams[k + 1], pen.mu_e,
                                      d_defect, direction.lams[k + 1])
        d_con = con.hx @ dxs[k] + con.hu @ dus[k]
        slope += inequality_merit_slope(con.value, traj.nus[k], estimates.nus[k], pen.mu_i, d_con, direction.nus[k])

    slope += float(data.terminal_cost.lx @ dxs[-1])
    slope += pen.rho * float((xs[-1] - prox_center.xs[-1]) @ dxs[-1])
    slope += inequality_merit_slope(data.terminal_con.value, traj.nus[-1], estimates.nus[-1], pen.mu_i,
                                    data.terminal_con.hx @ dxs[-1], direction.nus[-1])
    return slope


def traj_lagrangian_gradient(problem: TrajOptProblem, traj: Trajectory,
                             data: typing.Optional[TrajectoryData] = None) -> typing.Tuple[Arrays, Arrays]:
    """
    Gradient of the Lagrangian with respect to every state and control

    :return: (gradients w.r.t. x_0..x_N, gradients w.r.t. u_0..u_{N-1})
    """
    data = evaluate(problem, traj) if data is None else data
    lams, nus = traj.lams, traj.nus
    grad_xs = [np.zeros(nx) for nx in problem.state_dims]
    grad_us = []
    grad_xs[0] += lams[0]
    for k, (cost, dyn, con) in enumerate(data.stages):
        grad_xs[k] += cost.lx + dyn.fx.T @ lams[k + 1] + con.hx.T @ nus[k]
        grad_xs[k + 1] += dyn.fy.T @ lams[k + 1]
        grad_us.append(cost.lu + dyn.fu.T @ lams[k + 1] + con.hu.T @ nus[k])
    grad_xs[-1] += data.terminal_cost.lx + data.terminal_con.hx.T @ nus[-1]
    return grad_xs, grad_us


def traj_kkt_residuals(problem: TrajOptProblem, traj: Trajectory,
                       data: typing.Optional[TrajectoryData] = None) -> typing.Tuple[float, float]:
    """
    :return: (‖∇L‖∞, primal infeasibility), maximum over all nodes
    """
    data = evaluate(problem, traj) if data is None else data
    grad_xs, grad_us = traj_lagrangian_gradient(problem, traj, data)
    return inf_norm(*grad_xs, *grad_us), traj_primal_infeasibility(problem, traj, data)


def traj_primal_infeasibility(problem: TrajOptProblem, traj: Trajectory,
                              values: typing.Union[TrajectoryValues, TrajectoryData, None] = None) -> float:
    """
    max over nodes of ‖x_0 − x̄_0‖∞, ‖f_k‖∞ and ‖[h_k]+‖∞
    """
    values = _values(problem, traj, values)
    return inf_norm(*_equalities(values), *(positive_part(h_value) for h_value in values.constraints))


def traj_complementarity(problem: TrajOptProblem, traj: Trajectory,
                         values: typing.Union[TrajectoryValues, TrajectoryData, None] = None) -> float:
    """
    max over nodes and rows of |ν_j·h_j| / (1 + |ν_j|)
    """
    values = _values(problem, traj, values)
    return inf_norm(*(nu * h_value / (1.0 + np.abs(nu)) for nu, h_value in zip(traj.nus, values.constraints)))


def shifted_estimates(problem: TrajOptProblem, traj: Trajectory, estimates: Trajectory, pen: PenaltyState,
                      values: typing.Union[TrajectoryValues, TrajectoryData, None] = None) -> typing.Tuple[Arrays, Arrays]:
    """
    :return: (λ̂ per equality block, ν̂ per inequality block) at `traj`
    """
    values = _values(problem, traj, values)
    lam_hats = [equality_estimate(c_value, lam_l, pen.mu_e)
                for c_value, lam_l in zip(_equalities(values), estimates.lams)]
    nu_hats = [inequality_estimate(h_value, nu_l, pen.mu_i)
               for h_value, nu_l in zip(values.constraints, estimates.nus)]
    return lam_hats, nu_hats


def traj_rl_residual(problem: TrajOptProblem, traj: Trajectory, estimates: Trajectory, pen: PenaltyState,
                     prox_center: typing.Optional[Trajectory] = None,
                     data: typing.Optional[TrajectoryData] = None) -> float:
    """
    ‖r_l‖∞ stacked over nodes: ∇L + ρ(w − w_center), μ_e(λ̂ − λ) and μ_i(ν̂ − ν)
    """
    prox_center = estimates if prox_center is None else prox_center
    data = evaluate(problem, traj) if data is None else data
    grad_xs, grad_us = traj_lagrangian_gradient(problem, traj, data)
    lam_hats, nu_hats = shifted_estimates(problem, traj, estimates, pen, data)
    return inf_norm(
        *(grad + pen.rho * (x - anchor) for grad, x, anchor in zip(grad_xs, traj.xs, prox_center.xs)),
        *(grad + pen.rho * (u - anchor) for grad, u, anchor in zip(grad_us, traj.us, prox_center.us)),
        *(pen.mu_e * (lam_hat - lam) for lam_hat, lam in zip(lam_hats, traj.lams)),
        *(pen.mu_i * (nu_hat - nu) for nu_hat, nu in zip(nu_hats, traj.nus)),
    )


def traj_multiplier_update(problem: TrajOptProblem, traj: Trajectory, estimates: Trajectory,
                           pen: PenaltyState) -> typing.Tuple[Arrays, Arrays]:
    """
    Node-wise λ ← 2λ̂ − λ̃ and ν ← [2ν̂ − ν̃]+ at the inner solution `traj`
    """
    lam_hats, nu_hats = shifted_estimates(problem, traj, estimates, pen)
    lams = [2.0 * lam_hat - lam for lam_hat, lam in zip(lam_hats, traj.lams)]
    nus = [positive_part(2.0 * nu_hat - nu) for nu_hat, nu in zip(nu_hats, traj.nus)]
    return lams, nus


def traj_activation_steps(problem: TrajOptProblem, traj: Trajectory, direction: Trajectory, estimates: Trajectory,
                          pen: PenaltyState, data: typing.Optional[TrajectoryData] = None) -> np.ndarray:
    """
    Step lengths along `direction` where inactive inequality rows of any node enter the shifted
    active set, from the constraint linearizations at `traj`
    """
    data = evaluate(problem, traj) if data is None else data
    steps = [activation_steps(con.value + pen.mu_i * nu_l, con.hx @ dx + con.hu @ du)
             for (_, _, con), nu_l, dx, du in zip(data.stages, estimates.nus, direction.xs, direction.us)]
    terminal = data.terminal_con
    steps.append(activation_steps(terminal.value + pen.mu_i * estimates.nus[-1], terminal.hx @ direction.xs[-1]))
    return np.concatenate(steps)
