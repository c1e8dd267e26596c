# coding=utf-8
"""
Brute-force reference solution of small bound-constrained LQR problems

The states are eliminated (x = S_u·u + s_x) and every assignment of each control component to
{free, lower bound, upper bound} is tried. The pattern whose equality-constrained QP solution is
feasible and has correctly signed bound multipliers is the solution.
"""
import itertools
import logging
import typing

import numpy as np

from ._lqr import BoundLqrConfig

LOGGER = logging.getLogger('alprox')

MAX_VARIABLES = 10

_FREE, _LOWER, _UPPER = 0, 1, 2


class OracleSolution(typing.NamedTuple):
    """
    Optimal states and controls, with the bound pattern that produced them
    """
    xs: np.ndarray
    us: np.ndarray
    pattern: typing.Tuple[int, ...]


def condense(cfg: BoundLqrConfig) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Eliminates the states

    :return: (H, g, S_u, s_x) with cost ½uᵀHu + gᵀu + const and stacked states S_u·u + s_x
    """
    nx, nu, horizon = cfg.nx, cfg.nu, cfg.N
    s_u = np.zeros((nx * (horizon + 1), nu * horizon))
    s_x = np.zeros(nx * (horizon + 1))
    s_x[:nx] = cfg.x0
    for k in range(horizon):
        rows, next_rows = slice(k * nx, (k + 1) * nx), slice((k + 1) * nx, (k + 2) * nx)
        s_x[next_rows] = cfg.A @ s_x[rows] + cfg.c
        s_u[next_rows] = cfg.A @ s_u[rows]
        s_u[next_rows, k * nu:(k + 1) * nu] = cfg.B
    q_big = np.zeros((nx * (horizon + 1),) * 2)
    for k in range(horizon):
        q_big[k * nx:(k + 1) * nx, k * nx:(k + 1) * nx] = cfg.Q
    q_big[horizon * nx:, horizon * nx:] = cfg.QN
    r_big = np.kron(np.eye(horizon), cfg.R)
    hess = s_u.T @ q_big @ s_u + r_big
    return 0.5 * (hess + hess.T), s_u.T @ q_big @ s_x, s_u, s_x


def _choices(bound: float) -> typing.Tuple[int, ...]:
    return (_FREE, _LOWER, _UPPER) if np.isfinite(bound) else (_FREE,)


def enumerate_active_sets(cfg: BoundLqrConfig, tol: float = 1e-9) -> OracleSolution:
    """
    Solves the bound LQR by enumerating all 3^(N·nu) bound patterns

    :param cfg: problem with at most MAX_VARIABLES controls in total and a positive definite
        condensed Hessian
    :param tol: feasibility and multiplier sign tolerance, relative to the data scale
    :raises ValueError: too many controls
    :raises RuntimeError: no pattern satisfies the optimality conditions
    """
    n_vars = cfg.nu * cfg.N
    if n_vars > MAX_VARIABLES:
        raise ValueError(f'{n_vars} controls is too many to enumerate (max {MAX_VARIABLES})')
    hess, grad, s_u, s_x = condense(cfg)
    bounds = np.tile(cfg.u_bar, cfg.N)
    scale = tol * (1.0 + float(np.max(np.abs(grad), initial=0.0)) + float(np.max(np.abs(hess))))

    for pattern in itertools.product(*(_choices(bound) for bound in bounds)):
        pattern_arr = np.asarray(pattern)
        free = pattern_arr == _FREE
        controls = np.where(pattern_arr == _UPPER, bounds, np.where(pattern_arr == _LOWER, -bounds, 0.0))
        if np.any(free):
            fixed = ~free
            rhs = -(grad[free] + hess[np.ix_(free, fixed)] @ controls[fixed])
            try:
                controls[free] = np.linalg.solve(hess[np.ix_(free, free)], rhs)
            except np.linalg.LinAlgError:
                continue
            if np.any(np.abs(controls[free]) > bounds[free] + scale):
                continue
        gradient = hess @ controls + grad
        if np.any(gradient[pattern_arr == _UPPER] > scale) or np.any(gradient[pattern_arr == _LOWER] < -scale):
            continue
        LOGGER.debug('oracle pattern: %s', pattern)
        states = (s_u @ controls + s_x).reshape(cfg.N + 1, cfg.nx)
        return OracleSolution(states, controls.reshape(cfg.N, cfg.nu), tuple(pattern))

    raise RuntimeError('no bound pattern satisfies the optimality conditions')
