# coding=utf-8
"""
Backward pass: stage saddle systems and value-model propagation

At stage k the primal-dual Q-function is expanded around (x_k, u_k, x_{k+1}, λ_{k+1}, ν_k) and the
stage system::

    [ Quu    Quy    fuᵀ    h_uAᵀ ] [δu    ]     [ Qu                   ]   [ Qux  ]
    [ Qyu    Qyy    fyᵀ    0     ] [δx′   ] = − [ Qy                   ] − [ Qyx  ] δx
    [ fu     fy    −μe·I   0     ] [δλ′   ]     [ f + μe(λ′_l − λ′)    ]   [ fx   ]
    [ h_uA   0      0     −μi·I  ] [δν_A  ]     [ h_A + μi(ν_l − ν)_A  ]   [ h_xA ]

is solved for the feedforward column and the feedback block at once. Substituting the affine
solution into the Q-function gives the value model at node k.
"""
import logging
import typing

import numpy as np

from alprox.kkt import InertiaRecord, Regularizer, SaddleSystem, regularize_until_correct
from alprox.nlp import HessianMode, PenaltyState, equality_estimate, inequality_active, inequality_estimate

from ._evaluation import StageData, TrajectoryData, evaluate
from ._model import CostDerivatives, StageModel, TerminalModel, TrajOptProblem
from ._trajectory import Trajectory

LOGGER = logging.getLogger('alprox')


class StageGains(typing.NamedTuple):
    """
    Affine policies of stage k in δx_k; zeta/Z act on the active rows of h_k only
    """
    k_ff: np.ndarray
    K_fb: np.ndarray
    a_ff: np.ndarray
    A_fb: np.ndarray
    xi_ff: np.ndarray
    Xi_fb: np.ndarray
    zeta_ff: np.ndarray
    Z_fb: np.ndarray
    active: np.ndarray
    inertia: InertiaRecord


class ValueModel(typing.NamedTuple):
    """
    Quadratic model of the value function at a node
    """
    Vx: np.ndarray
    Vxx: np.ndarray


class TerminalGains(typing.NamedTuple):
    """δν_N on the active rows of h_N: zeta + Z·δx_N"""
    zeta_ff: np.ndarray
    Z_fb: np.ndarray
    active: np.ndarray


class InitialStep(typing.NamedTuple):
    """Solution of the initial-condition block"""
    dx: np.ndarray
    dlam: np.ndarray
    inertia: InertiaRecord


class QParams(typing.NamedTuple):
    """
    Expansion of the stage Q-function; the x′ blocks absorb the next value model
    """
    qx: np.ndarray
    qu: np.ndarray
    qy: np.ndarray
    qxx: np.ndarray
    qux: np.ndarray
    quu: np.ndarray
    quy: np.ndarray
    qyy: np.ndarray
    qyx: np.ndarray
    active: np.ndarray


class BackwardResult(typing.NamedTuple):
    """
    Output of `backward_pass`; `values[k]` is the value model at node k
    """
    gains: typing.List[StageGains]
    values: typing.List[ValueModel]
    initial: InitialStep
    terminal: TerminalGains
    regularizations: int
    max_delta: float
    max_residual: float


def _cost_hessians(cost: CostDerivatives, hess_mode: HessianMode) -> typing.Tuple[np.ndarray, ...]:
    if hess_mode is HessianMode.IDENTITY:
        return np.eye(cost.lxx.shape[0]), np.zeros_like(cost.lxu), np.eye(cost.luu.shape[0])
    return cost.lxx, cost.lxu, cost.luu


def stage_q_params(stage: StageModel, data: StageData, next_value: ValueModel, traj: Trajectory, k: int,
                   estimates: Trajectory, pen: PenaltyState, prox_center: typing.Optional[Trajectory] = None,
                   hess_mode: HessianMode = HessianMode.GAUSS_NEWTON) -> QParams:
    """
    Q-function expansion at stage k

    Args:
        stage: stage model
        data: stage derivatives at the trajectory
        next_value: value model at node k+1
        traj: current trajectory
        k: stage index
        estimates: multiplier estimates
        pen: penalty state
        prox_center: proximal center, `estimates` when None
        hess_mode: Gauss-Newton drops constraint curvature, exact adds `stage.curvature`
    """
    prox_center = estimates if prox_center is None else prox_center
    cost, dyn, con = data
    x, u, y = traj.xs[k], traj.us[k], traj.xs[k + 1]
    lam, nu = traj.lams[k + 1], traj.nus[k]
    active = inequality_active(con.value, estimates.nus[k], pen.mu_i)
    hx_a, hu_a, nu_a = con.hx[active], con.hu[active], nu[active]

    lxx, lxu, luu = _cost_hessians(cost, hess_mode)
    if hess_mode is HessianMode.EXACT:
        lam_weights = 2.0 * equality_estimate(dyn.value, estimates.lams[k + 1], pen.mu_e) - lam
        nu_weights = np.where(active, 2.0 * inequality_estimate(con.value, estimates.nus[k], pen.mu_i) - nu, 0.0)
        curvature = stage.curvature(x, u, y, lam_weights, nu_weights)
        lxx, lxu, luu = lxx + curvature.hxx, lxu + curvature.hxu, luu + curvature.huu

    nx, nu_dim, ny = stage.nx, stage.nu, stage.nx_next
    return QParams(
        qx=cost.lx + pen.rho * (x - prox_center.xs[k]) + dyn.fx.T @ lam + hx_a.T @ nu_a,
        qu=cost.lu + pen.rho * (u - prox_center.us[k]) + dyn.fu.T @ lam + hu_a.T @ nu_a,
        qy=next_value.Vx + dyn.fy.T @ lam,
        qxx=lxx + pen.rho * np.eye(nx),
        qux=lxu.T,
        quu=luu + pen.rho * np.eye(nu_dim),
        quy=np.zeros((nu_dim, ny)),
        qyy=next_value.Vxx,
        qyx=np.zeros((ny, nx)),
        active=active,
    )


def _stage_solve(stage: StageModel, data: StageData, q_params: QParams, traj: Trajectory, k: int,
                 estimates: Trajectory, pen: PenaltyState,
                 regularizer: Regularizer) -> typing.Tuple[StageGains, ValueModel]:
    _, dyn, con = data
    active = q_params.active
    nu_dim, ny, na = stage.nu, stage.nx_next, int(active.sum())
    hx_a, hu_a = con.hx[active], con.hu[active]

    hess = np.block([[q_params.quu, q_params.quy], [q_params.quy.T, q_params.qyy]])
    jac_eq = np.hstack([dyn.fu, dyn.fy])
    jac_in = np.hstack([hu_a, np.zeros((na, ny))])
    feedforward = np.concatenate([
        q_params.qu,
        q_params.qy,
        dyn.value + pen.mu_e * (estimates.lams[k + 1] - traj.lams[k + 1]),
        con.value[active] + pen.mu_i * (estimates.nus[k] - traj.nus[k])[active],
    ])
    feedback = np.vstack([q_params.qux, q_params.qyx, dyn.fx, hx_a])
    rhs = -np.column_stack([feedforward, feedback])

    system = SaddleSystem(0.5 * (hess + hess.T), jac_eq, jac_in, pen.mu_e, pen.mu_i, rhs)
    _, solution, record = regularize_until_correct(system, regularizer=regularizer)

    splits = np.cumsum([nu_dim, ny, ny])
    ctrl, nxt, costate, mult = np.split(solution, splits)
    gains = StageGains(ctrl[:, 0], ctrl[:, 1:], nxt[:, 0], nxt[:, 1:], costate[:, 0], costate[:, 1:],
                       mult[:, 0], mult[:, 1:], active, record)

    vx = (q_params.qx + q_params.qux.T @ gains.k_ff + q_params.qyx.T @ gains.a_ff
          + dyn.fx.T @ gains.xi_ff + hx_a.T @ gains.zeta_ff)
    vxx = (q_params.qxx + q_params.qux.T @ gains.K_fb + q_params.qyx.T @ gains.A_fb
           + dyn.fx.T @ gains.Xi_fb + hx_a.T @ gains.Z_fb)
    return gains, ValueModel(vx, 0.5 * (vxx + vxx.T))


def terminal_value(terminal: TerminalModel, data: TrajectoryData, traj: Trajectory, estimates: Trajectory,
                   pen: PenaltyState, prox_center: typing.Optional[Trajectory] = None,
                   hess_mode: HessianMode = HessianMode.GAUSS_NEWTON) -> typing.Tuple[ValueModel, TerminalGains]:
    """
    Value model at node N, from ℓ_N and the ν̂-weighted terminal constraint
    """
    prox_center = estimates if prox_center is None else prox_center
    cost, con = data.terminal_cost, data.terminal_con
    x, nu, nu_l = traj.xs[-1], traj.nus[-1], estimates.nus[-1]
    active = inequality_active(con.value, nu_l, pen.mu_i)
    hx_a = con.hx[active]

    lxx = np.eye(terminal.nx) if hess_mode is HessianMode.IDENTITY else cost.lxx
    if hess_mode is HessianMode.EXACT:
        nu_weights = np.where(active, 2.0 * inequality_estimate(con.value, nu_l, pen.mu_i) - nu, 0.0)
        lxx = lxx + terminal.curvature(x, nu_weights)

    zeta = (con.value[active] + pen.mu_i * (nu_l - nu)[active]) / pen.mu_i
    gains = TerminalGains(zeta, hx_a / pen.mu_i, active)
    vx = cost.lx + pen.rho * (x - prox_center.xs[-1]) + hx_a.T @ (nu[active] + zeta)
    vxx = lxx + pen.rho * np.eye(terminal.nx) + hx_a.T @ hx_a / pen.mu_i
    return ValueModel(vx, 0.5 * (vxx + vxx.T)), gains


def _initial_solve(problem: TrajOptProblem, data: TrajectoryData, value: ValueModel, traj: Trajectory,
                   estimates: Trajectory, pen: PenaltyState, regularizer: Regularizer) -> InitialStep:
    nx = problem.x0_bar.size
    rhs = -np.concatenate([
        value.Vx + traj.lams[0],
        data.initial + pen.mu_e * (estimates.lams[0] - traj.lams[0]),
    ])
    system = SaddleSystem(value.Vxx, np.eye(nx), None, pen.mu_e, pen.mu_i, rhs)
    _, solution, record = regularize_until_correct(system, regularizer=regularizer)
    return InitialStep(solution[:nx], solution[nx:], record)


def backward_pass(problem: TrajOptProblem, traj: Trajectory, estimates: Trajectory, pen: PenaltyState,
                  prox_center: typing.Optional[Trajectory] = None,
                  hess_mode: HessianMode = HessianMode.GAUSS_NEWTON,
                  regularizer: typing.Optional[Regularizer] = None,
                  data: typing.Optional[TrajectoryData] = None) -> BackwardResult:
    """
    Sweeps k = N-1..0 solving the stage systems with inertia correction, then the initial-condition block

    Args:
        problem: problem
        traj: current trajectory
        estimates: multiplier estimates (λ_l, ν_l)
        pen: penalty state
        prox_center: proximal center, `estimates` when None
        hess_mode: primal blocks
        regularizer: inertia-correction schedule of the calling solver
        data: node derivatives at `traj` if already evaluated

    Raises:
        InertiaCorrectionError: a stage system could not be regularized
    """
    prox_center = estimates if prox_center is None else prox_center
    regularizer = Regularizer() if regularizer is None else regularizer
    data = evaluate(problem, traj) if data is None else data
    corrections_before = regularizer.corrections

    value, terminal_gains = terminal_value(problem.terminal, data, traj, estimates, pen, prox_center, hess_mode)
    values = [value]
    gains: typing.List[StageGains] = []
    for k in reversed(range(problem.horizon)):
        stage = problem.stages[k]
        q_params = stage_q_params(stage, data.stages[k], value, traj, k, estimates, pen, prox_center, hess_mode)
        stage_gains, value = _stage_solve(stage, data.stages[k], q_params, traj, k, estimates, pen, regularizer)
        gains.append(stage_gains)
        values.append(value)
    gains.reverse()
    values.reverse()

    initial = _initial_solve(problem, data, values[0], traj, estimates, pen, regularizer)
    records = [stage_gains.inertia for stage_gains in gains] + [initial.inertia]
    max_delta = max(record.delta for record in records)
    max_residual = max(record.residual for record in records)
    LOGGER.debug('backward pass: max delta=%s, max residual=%s', max_delta, max_residual)
    return BackwardResult(gains, values, initial, terminal_gains, regularizer.corrections - corrections_before,
                          max_delta, max_residual)
