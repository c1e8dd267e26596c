# coding=utf-8
"""
Constrained DDP: backward pass, linear rollout and Armijo line search inside a BCL outer loop
"""
import dataclasses
import logging
import math
import typing

from alprox.kkt import InertiaCorrectionError, Regularizer
from alprox.nlp import BclParams, HessianMode, LineSearchParams, PenaltyState, SolveStatus, armijo_backtrack, bcl_update
from alprox.trace import TraceRecord

from ._backward import BackwardResult, backward_pass
from ._evaluation import TrajectoryData, evaluate
from ._forward import linear_rollout
from ._merit import (
    traj_activation_steps, traj_complementarity, traj_kkt_residuals, traj_merit, traj_merit_slope,
    traj_multiplier_update, traj_primal_infeasibility, traj_rl_residual,
)
from ._model import TrajOptProblem
from ._trajectory import Trajectory

LOGGER = logging.getLogger('alprox')

RHO_GROWTH = 10.0
RHO_MAX = 1e4
RHO_DECAY = 0.5


class LineSearchResult(typing.NamedTuple):
    """
    Outcome of `linesearch_and_accept`; alpha is None when no step was accepted
    """
    trajectory: Trajectory
    alpha: typing.Optional[float]
    merit: float
    slope: float


@dataclasses.dataclass
class TrajSolveReport:
    """
    Outcome of `solve`
    """
    status: SolveStatus
    outer_iters: int
    total_inner_iters: int
    dual_inf: float
    primal_inf: float
    complementarity: float
    trajectory: Trajectory
    penalty: PenaltyState
    trace: typing.List[TraceRecord] = dataclasses.field(default_factory=list)
    regularizations: int = 0
    rho_escalations: int = 0
    max_kkt_residual: float = 0.0

    @property
    def converged(self) -> bool:
        """True if the stopping criterion was met"""
        return self.status is SolveStatus.CONVERGED

    @property
    def alphas(self) -> typing.List[float]:
        """Step lengths of the accepted steps"""
        return [record.alpha for record in self.trace if record.alpha > 0]


def _safe_merit(problem, traj, estimates, pen, prox_center) -> float:
    try:
        return traj_merit(problem, traj, estimates, pen, prox_center)
    except ValueError as exc:
        LOGGER.debug('candidate rejected by the model: %s', exc)
        return math.inf


def linesearch_and_accept(problem: TrajOptProblem, traj: Trajectory, gains: BackwardResult, ls: LineSearchParams,
                          pen: PenaltyState, estimates: Trajectory,
                          prox_center: typing.Optional[Trajectory] = None,
                          data: typing.Optional[TrajectoryData] = None,
                          direction: typing.Optional[Trajectory] = None) -> LineSearchResult:
    """
    Armijo backtracking on `traj_merit` along the rollout direction

    Besides the powers of the backtracking factor, the step lengths where inequality rows enter the
    active set are tried. Candidates the models cannot evaluate count as infinitely bad. A direction
    that is not a descent direction is returned unaccepted (alpha None) without evaluating any
    candidate.
    """
    prox_center = estimates if prox_center is None else prox_center
    data = evaluate(problem, traj) if data is None else data
    direction = linear_rollout(problem, traj, gains) if direction is None else direction
    slope = traj_merit_slope(problem, traj, direction, estimates, pen, prox_center, data)
    phi0 = traj_merit(problem, traj, estimates, pen, prox_center, data)
    if not slope < 0.0:
        return LineSearchResult(traj, None, phi0, slope)

    def _phi(alpha):
        return _safe_merit(problem, traj.axpy(alpha, direction), estimates, pen, prox_center)

    breakpoints = traj_activation_steps(problem, traj, direction, estimates, pen, data)
    alpha, value = armijo_backtrack(_phi, phi0, slope, ls, breakpoints)
    if alpha is None:
        return LineSearchResult(traj, None, phi0, slope)
    return LineSearchResult(traj.axpy(alpha, direction), alpha, value, slope)


class _Stopping:

    def __init__(self, problem: TrajOptProblem, eps_abs: float):
        self.problem = problem
        self.eps_abs = eps_abs
        self.dual_inf = self.primal_inf = self.complementarity = math.inf

    def check(self, traj: Trajectory, data: typing.Optional[TrajectoryData] = None) -> bool:
        data = evaluate(self.problem, traj) if data is None else data
        self.dual_inf, self.primal_inf = traj_kkt_residuals(self.problem, traj, data)
        self.complementarity = traj_complementarity(self.problem, traj, data)
        return max(self.dual_inf, self.primal_inf, self.complementarity) <= self.eps_abs


class _Workspace:
    """
    Mutable state of one solve
    """

    def __init__(self, problem: TrajOptProblem, bcl: BclParams, traj: Trajectory,
                 trace: typing.Optional[typing.List[TraceRecord]] = None):
        self.problem = problem
        self.bcl = bcl
        self.traj = traj
        self.regularizer = Regularizer()
        self.stopping = _Stopping(problem, bcl.eps_abs)
        self.trace: typing.List[TraceRecord] = [] if trace is None else trace
        self.total_inner = 0
        self.rho_escalations = 0
        self.max_kkt_residual = 0.0
        self.pen = bcl.initial_penalty()

    def escalate_rho(self, reason: str) -> bool:
        rho = max(self.pen.rho, self.bcl.rho0, 1e-8) * RHO_GROWTH
        if rho > RHO_MAX:
            LOGGER.error('%s and rho would exceed %s', reason, RHO_MAX)
            return False
        LOGGER.debug('%s, rho -> %s', reason, rho)
        self.pen = self.pen.replace(rho=rho)
        self.rho_escalations += 1
        return True

    def report(self, status: SolveStatus, outer_iters: int) -> TrajSolveReport:
        LOGGER.info('trajectory solve finished: %s after %s outer / %s inner iterations',
                    status.value, outer_iters, self.total_inner)
        return TrajSolveReport(status, outer_iters, self.total_inner, self.stopping.dual_inf,
                               self.stopping.primal_inf, self.stopping.complementarity, self.traj, self.pen,
                               self.trace, self.regularizer.corrections, self.rho_escalations,
                               self.max_kkt_residual)


def _inner_loop(ws: _Workspace, outer: int, center: Trajectory, data: TrajectoryData, ls: LineSearchParams,
                hess_mode: HessianMode) -> typing.Tuple[SolveStatus, TrajectoryData]:
    problem = ws.problem
    previous_full_step = False
    for _ in range(ws.bcl.max_inner_iters):
        if traj_rl_residual(problem, ws.traj, center, ws.pen, data=data) <= ws.pen.omega_l:
            return SolveStatus.CONVERGED, data

        try:
            backward = backward_pass(problem, ws.traj, center, ws.pen, None, hess_mode, ws.regularizer, data)
        except InertiaCorrectionError:
            if not ws.escalate_rho('inertia correction failed'):
                return SolveStatus.LINE_SEARCH_FAILURE, data
            continue
        ws.max_kkt_residual = max(ws.max_kkt_residual, backward.max_residual)

        result = linesearch_and_accept(problem, ws.traj, backward, ls, ws.pen, center, None, data)
        if not result.slope < 0.0:
            if not ws.escalate_rho(f'non-descent direction (slope={result.slope})'):
                return SolveStatus.LINE_SEARCH_FAILURE, data
            continue
        if result.alpha is None:
            if not ws.escalate_rho('line search failed'):
                return SolveStatus.LINE_SEARCH_FAILURE, data
            previous_full_step = False
            continue

        ws.traj = result.trajectory
        data = evaluate(problem, ws.traj)
        ws.total_inner += 1
        dual_inf, primal_inf = traj_kkt_residuals(problem, ws.traj, data)
        active = sum(int(gains.active.sum()) for gains in backward.gains) + int(backward.terminal.active.sum())
        ws.trace.append(TraceRecord(outer, ws.total_inner, result.merit, primal_inf, dual_inf, ws.pen.mu_e,
                                    ws.pen.mu_i, ws.pen.rho, result.alpha, active, backward.max_delta))
        LOGGER.debug('inner %s: merit=%s, alpha=%s, rho=%s', ws.total_inner, result.merit, result.alpha, ws.pen.rho)

        full_step = result.alpha == 1.0
        if full_step and previous_full_step and ws.pen.rho > ws.bcl.rho0:
            ws.pen = ws.pen.replace(rho=max(ws.bcl.rho0, RHO_DECAY * ws.pen.rho))
        previous_full_step = full_step

    if traj_rl_residual(problem, ws.traj, center, ws.pen, data=data) <= ws.pen.omega_l:
        return SolveStatus.CONVERGED, data
    LOGGER.warning('inner loop hit max_inner_iters=%s', ws.bcl.max_inner_iters)
    return SolveStatus.MAX_ITERS, data


def solve(problem: TrajOptProblem, initial_traj: typing.Optional[Trajectory] = None,
          bcl: typing.Optional[BclParams] = None, ls: typing.Optional[LineSearchParams] = None,
          hess_mode: HessianMode = HessianMode.GAUSS_NEWTON,
          trace: typing.Optional[typing.List[TraceRecord]] = None) -> typing.Tuple[Trajectory, TrajSolveReport]:
    """
    Solves the trajectory problem

    The stopping criterion (stationarity, feasibility and complementarity ≤ eps_abs over all nodes)
    is tested at every outer iterate and at every inner solution with ν projected on ν ≥ 0.

    Args:
        problem: problem
        initial_traj: starting trajectory, may be dynamically infeasible (default: `Trajectory.initial`)
        bcl: BCL schedule
        ls: line-search constants
        hess_mode: primal blocks of the stage systems
        trace: list receiving the trace records as they are produced (a new list when None)

    Returns: (final trajectory, report)
    """
    bcl = bcl or BclParams()
    ls = ls or LineSearchParams()
    traj = Trajectory.initial(problem) if initial_traj is None else initial_traj.copy()
    traj.check(problem)
    ws = _Workspace(problem, bcl, traj, trace)

    try:
        data = evaluate(problem, ws.traj)
    except ValueError as exc:
        LOGGER.error('cannot evaluate the initial trajectory: %s', exc)
        return ws.traj, ws.report(SolveStatus.LINE_SEARCH_FAILURE, 0)
    ws.pen = ws.pen.replace(eta_l=traj_primal_infeasibility(problem, ws.traj, data))

    for outer in range(bcl.max_outer_iters):
        if ws.stopping.check(ws.traj, data):
            return ws.traj, ws.report(SolveStatus.CONVERGED, outer)

        center = ws.traj.copy()
        records_before = len(ws.trace)
        try:
            status, data = _inner_loop(ws, outer, center, data, ls, hess_mode)
        except ValueError as exc:
            LOGGER.error('model evaluation failed: %s', exc)
            return ws.traj, ws.report(SolveStatus.LINE_SEARCH_FAILURE, outer + 1)
        if len(ws.trace) == records_before:
            dual_inf, primal_inf = traj_kkt_residuals(problem, ws.traj, data)
            ws.trace.append(TraceRecord(outer, ws.total_inner, traj_merit(problem, ws.traj, center, ws.pen),
                                        primal_inf, dual_inf, ws.pen.mu_e, ws.pen.mu_i, ws.pen.rho, 0.0, 0, 0.0))
        if status is SolveStatus.LINE_SEARCH_FAILURE:
            ws.stopping.check(ws.traj, data)
            return ws.traj, ws.report(status, outer + 1)

        projected = ws.traj.projected()
        if ws.stopping.check(projected):
            ws.traj = projected
            return ws.traj, ws.report(SolveStatus.CONVERGED, outer + 1)

        eta = traj_primal_infeasibility(problem, ws.traj, data)
        old_pen = ws.pen
        ws.pen, accepted = bcl_update(ws.pen, bcl, eta)
        if accepted:
            lams, nus = traj_multiplier_update(problem, ws.traj, center, old_pen)
        else:
            lams, nus = center.lams, center.nus
        ws.traj = ws.traj.with_multipliers(lams, nus)

    ws.stopping.check(ws.traj, data)
    return ws.traj, ws.report(SolveStatus.MAX_ITERS, bcl.max_outer_iters)
