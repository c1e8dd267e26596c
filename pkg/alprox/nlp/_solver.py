# coding=utf-8
"""
Primal-dual augmented Lagrangian solver with BCL globalization
"""
import dataclasses
import logging
import typing

import numpy as np

from alprox.kkt import InertiaCorrectionError, Regularizer
from alprox.trace import TraceRecord

from ._bcl import bcl_update, multiplier_update
from ._linesearch import activation_steps, armijo_backtrack
from ._merit import positive_part
from ._params import BclParams, LineSearchParams, PenaltyState
from ._problem import HessianMode, NlpIterate, NlpProblem, SolveStatus
from ._residuals import (
    complementarity, kkt_residuals, merit_gradient, merit_value, primal_infeasibility, rl_residual,
)
from ._step import NewtonStep, pd_newton_step

LOGGER = logging.getLogger('alprox')

StepCallback = typing.Callable[['InnerStep'], None]


class InnerStep(typing.NamedTuple):
    """
    Accepted inner step, as reported to `inner_solve` callbacks
    """
    inner_iter: int
    x: np.ndarray
    lam: np.ndarray
    nu: np.ndarray
    merit: float
    alpha: float
    active_set_size: int
    regularization: float


class InnerSolution(typing.NamedTuple):
    """
    Result of `inner_solve`
    """
    x: np.ndarray
    lam: np.ndarray
    nu: np.ndarray
    inner_iters: int
    status: SolveStatus


@dataclasses.dataclass
class SolveReport:
    """
    Outcome of `solve`
    """
    status: SolveStatus
    outer_iters: int
    total_inner_iters: int
    dual_inf: float
    primal_inf: float
    complementarity: float
    solution: NlpIterate
    penalty: PenaltyState
    trace: typing.List[TraceRecord] = dataclasses.field(default_factory=list)
    regularizations: int = 0

    @property
    def converged(self) -> bool:
        """True if the stopping criterion was met"""
        return self.status is SolveStatus.CONVERGED


def _descent_step(prob, x, lam, nu, center, pen, hess_mode, regularizer) -> typing.Tuple[NewtonStep, float]:
    min_delta = 0.0
    while True:
        step = pd_newton_step(prob, x, lam, nu, center, pen, hess_mode, regularizer, min_delta)
        slope = float(merit_gradient(prob, x, lam, nu, center, pen) @ step.stacked)
        if slope < 0.0:
            return step, slope
        # numerically non-descent despite the correct inertia
        min_delta = max(regularizer.delta0, step.inertia.delta * regularizer.growth)
        LOGGER.debug('non-descent direction (slope=%s), retrying with delta=%s', slope, min_delta)
        if min_delta > regularizer.delta_max:
            raise InertiaCorrectionError(f'no descent direction below delta_max={regularizer.delta_max}')


def inner_solve(prob: NlpProblem, iterate_center: NlpIterate, pen: PenaltyState, ls: LineSearchParams,
                hess_mode: HessianMode = HessianMode.GAUSS_NEWTON, max_iters: int = 100,
                regularizer: typing.Optional[Regularizer] = None,
                on_step: typing.Optional[StepCallback] = None) -> InnerSolution:
    """
    Minimizes the merit function of the subproblem centered at `iterate_center`, starting from it

    Each iteration takes a primal-dual Newton step and backtracks on the merit until the Armijo
    test passes. Stops when ‖r_l‖∞ ≤ ω_l.

    Args:
        prob: problem
        iterate_center: estimates (x_l, λ_l, ν_l), also the starting point
        pen: penalty state
        ls: line-search constants
        hess_mode: primal block of the Newton systems
        max_iters: iteration cap
        regularizer: inertia-correction schedule of the calling solver
        on_step: called after every accepted step

    Returns: the inner solution with its status (converged, max_iters or line_search_failure)
    """
    if regularizer is None:
        regularizer = Regularizer()
    x = np.array(iterate_center.x, dtype=float)
    lam = np.array(iterate_center.lam, dtype=float)
    nu = np.array(iterate_center.nu, dtype=float)

    for iteration in range(max_iters):
        _, rl_norm = rl_residual(prob, x, lam, nu, iterate_center, pen)
        if rl_norm <= pen.omega_l:
            return InnerSolution(x, lam, nu, iteration, SolveStatus.CONVERGED)

        try:
            step, slope = _descent_step(prob, x, lam, nu, iterate_center, pen, hess_mode, regularizer)
        except InertiaCorrectionError as exc:
            LOGGER.error('inner solve aborted: %s', exc)
            return InnerSolution(x, lam, nu, iteration, SolveStatus.LINE_SEARCH_FAILURE)

        def _phi(alpha, step=step):
            return merit_value(prob, x + alpha * step.dx, lam + alpha * step.dlam, nu + alpha * step.dnu,
                               iterate_center, pen)

        phi0 = merit_value(prob, x, lam, nu, iterate_center, pen)
        breakpoints = activation_steps(prob.h(x) + pen.mu_i * iterate_center.nu, prob.jac_h(x) @ step.dx)
        alpha, value = armijo_backtrack(_phi, phi0, slope, ls, breakpoints)
        if alpha is None:
            return InnerSolution(x, lam, nu, iteration, SolveStatus.LINE_SEARCH_FAILURE)

        x = x + alpha * step.dx
        lam = lam + alpha * step.dlam
        nu = nu + alpha * step.dnu
        LOGGER.debug('inner %s: merit=%s, alpha=%s, |r_l|=%s', iteration, value, alpha, rl_norm)
        if on_step is not None:
            on_step(InnerStep(iteration + 1, x, lam, nu, value, alpha, len(step.active), step.inertia.delta))

    _, rl_norm = rl_residual(prob, x, lam, nu, iterate_center, pen)
    status = SolveStatus.CONVERGED if rl_norm <= pen.omega_l else SolveStatus.MAX_ITERS
    return InnerSolution(x, lam, nu, max_iters, status)


class _Stopping:

    def __init__(self, prob: NlpProblem, eps_abs: float):
        self.prob = prob
        self.eps_abs = eps_abs
        self.dual_inf = self.primal_inf = self.complementarity = np.inf

    def check(self, x, lam, nu) -> bool:
        self.dual_inf, self.primal_inf = kkt_residuals(self.prob, x, lam, nu)
        self.complementarity = complementarity(self.prob, x, nu)
        return max(self.dual_inf, self.primal_inf, self.complementarity) <= self.eps_abs


def solve(prob: NlpProblem, x0, lam0=None, nu0=None, bcl: typing.Optional[BclParams] = None,
          ls: typing.Optional[LineSearchParams] = None,
          hess_mode: HessianMode = HessianMode.GAUSS_NEWTON,
          trace: typing.Optional[typing.List[TraceRecord]] = None) -> SolveReport:
    """
    Outer BCL loop around `inner_solve`

    The stopping criterion (‖∇ₓL‖∞, primal infeasibility and complementarity all ≤ eps_abs) is
    tested at every outer iterate and at every inner solution (x̃, λ̃, [ν̃]+).

    Args:
        prob: problem
        x0: initial primal point
        lam0: initial equality multipliers (zeros by default)
        nu0: initial inequality multipliers, non-negative (zeros by default)
        bcl: BCL schedule
        ls: line-search constants
        hess_mode: primal block of the Newton systems
        trace: list receiving the trace records as they are produced (a new list when None)

    Returns: solve report; the final point is `report.solution`
    """
    bcl = bcl or BclParams()
    ls = ls or LineSearchParams()
    x = np.array(x0, dtype=float)
    lam = np.zeros(prob.ne) if lam0 is None else np.array(lam0, dtype=float)
    nu = np.zeros(prob.ni) if nu0 is None else np.array(nu0, dtype=float)
    prob.check_point(x, lam, nu)
    if np.any(nu < 0):
        raise ValueError('initial inequality multipliers must be non-negative')

    pen = bcl.initial_penalty(primal_infeasibility(prob, x))
    regularizer = Regularizer()
    stopping = _Stopping(prob, bcl.eps_abs)
    trace = [] if trace is None else trace
    total_inner = 0

    def _report(status, outer_iters, point):
        solution = NlpIterate(point[0], point[1], point[2], None, stopping.dual_inf, stopping.primal_inf)
        LOGGER.info('solve finished: %s after %s outer / %s inner iterations', status.value, outer_iters, total_inner)
        return SolveReport(status, outer_iters, total_inner, stopping.dual_inf, stopping.primal_inf,
                           stopping.complementarity, solution, pen, trace, regularizer.corrections)

    for outer in range(bcl.max_outer_iters):
        if stopping.check(x, lam, nu):
            return _report(SolveStatus.CONVERGED, outer, (x, lam, nu))

        center = NlpIterate(x, lam, nu, x_prev=x)
        records_before = len(trace)

        def _on_step(step: InnerStep, outer=outer, pen=pen):
            dual_inf, primal_inf = kkt_residuals(prob, step.x, step.lam, step.nu)
            trace.append(TraceRecord(outer, total_inner + step.inner_iter, step.merit, primal_inf, dual_inf,
                                     pen.mu_e, pen.mu_i, pen.rho, step.alpha, step.active_set_size,
                                     step.regularization))

        inner = inner_solve(prob, center, pen, ls, hess_mode, bcl.max_inner_iters, regularizer, _on_step)
        total_inner += inner.inner_iters
        if len(trace) == records_before:
            dual_inf, primal_inf = kkt_residuals(prob, inner.x, inner.lam, inner.nu)
            trace.append(TraceRecord(outer, total_inner, merit_value(prob, inner.x, inner.lam, inner.nu, center, pen),
                                     primal_inf, dual_inf, pen.mu_e, pen.mu_i, pen.rho, 0.0, 0, 0.0))

        if inner.status is SolveStatus.LINE_SEARCH_FAILURE:
            stopping.check(inner.x, inner.lam, positive_part(inner.nu))
            return _report(SolveStatus.LINE_SEARCH_FAILURE, outer + 1, (inner.x, inner.lam, positive_part(inner.nu)))
        if inner.status is SolveStatus.MAX_ITERS:
            LOGGER.warning('inner solve hit max_inner_iters=%s', bcl.max_inner_iters)

        if stopping.check(inner.x, inner.lam, positive_part(inner.nu)):
            return _report(SolveStatus.CONVERGED, outer + 1, (inner.x, inner.lam, positive_part(inner.nu)))

        eta = primal_infeasibility(prob, inner.x)
        mu_e, mu_i = pen.mu_e, pen.mu_i
        pen, accepted = bcl_update(pen, bcl, eta)
        if accepted:
            lam, nu = multiplier_update(prob, inner.x, inner.lam, inner.nu, center.lam, center.nu, mu_e, mu_i)
        x = inner.x

    stopping.check(x, lam, nu)
    return _report(SolveStatus.MAX_ITERS, bcl.max_outer_iters, (x, lam, nu))
