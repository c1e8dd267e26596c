# coding=utf-8
"""
Saddle-point systems: dense symmetric-indefinite factorization with inertia control

A saddle system has the block structure::

    [ H      Jeqᵀ     Jinᵀ  ]
    [ Jeq   -μe·I     0     ]
    [ Jin    0       -μi·I  ]

Its inertia is correct when it has exactly as many positive eigenvalues as primal rows, as many
negative eigenvalues as dual rows and no zero eigenvalue.
"""
import dataclasses
import logging
import typing

import numpy as np
import scipy.linalg

LOGGER = logging.getLogger('alprox')

ZERO_PIVOT_TOLERANCE = 1e-12
REFINEMENT_THRESHOLD = 1e-9


class InertiaCorrectionError(RuntimeError):
    """
    Raised when the primal regularization needed to reach the target inertia exceeds its maximum
    """


class InertiaRecord(typing.NamedTuple):
    """
    Inertia of a factored matrix, and the regularization that was added to its primal block
    """
    n_pos: int
    n_neg: int
    n_zero: int
    delta: float = 0.0
    residual: float = 0.0

    @property
    def dim(self) -> int:
        """Dimension of the factored matrix"""
        return self.n_pos + self.n_neg + self.n_zero

    def matches(self, target: typing.Tuple[int, int, int]) -> bool:
        """
        :param target: expected (n_pos, n_neg, n_zero)
        :return: True if this inertia equals the target
        """
        return (self.n_pos, self.n_neg, self.n_zero) == tuple(target)


def _as_rows(matrix: typing.Optional[np.ndarray], n_cols: int) -> np.ndarray:
    if matrix is None:
        return np.zeros((0, n_cols))
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return np.zeros((0, n_cols))
    return np.atleast_2d(matrix)


@dataclasses.dataclass(frozen=True, eq=False)
class SaddleSystem:
    """
    Regularized KKT system

    Args:
        hess: symmetric primal block (already includes any proximal term)
        jac_eq: equality rows (constraints and/or dynamics)
        jac_in: active inequality rows
        mu_e: equality dual regularization
        mu_i: inequality dual regularization
        rhs: right-hand side, one vector or one column per right-hand side
    """
    hess: np.ndarray
    jac_eq: np.ndarray
    jac_in: np.ndarray
    mu_e: float
    mu_i: float
    rhs: np.ndarray

    def __post_init__(self):
        hess = np.atleast_2d(np.asarray(self.hess, dtype=float))
        if hess.shape[0] != hess.shape[1]:
            raise ValueError(f'primal block must be square, got {hess.shape}')
        n_primal = hess.shape[0]
        jac_eq = _as_rows(self.jac_eq, n_primal)
        jac_in = _as_rows(self.jac_in, n_primal)
        for name, jac in (('jac_eq', jac_eq), ('jac_in', jac_in)):
            if jac.shape[1] != n_primal:
                raise ValueError(f'{name} has {jac.shape[1]} columns, expected {n_primal}')
        if jac_eq.shape[0] and self.mu_e <= 0:
            raise ValueError(f'mu_e must be positive, got {self.mu_e}')
        if jac_in.shape[0] and self.mu_i <= 0:
            raise ValueError(f'mu_i must be positive, got {self.mu_i}')
        rhs = np.asarray(self.rhs, dtype=float)
        dim = n_primal + jac_eq.shape[0] + jac_in.shape[0]
        if rhs.shape[0] != dim:
            raise ValueError(f'rhs has {rhs.shape[0]} rows, expected {dim}')
        object.__setattr__(self, 'hess', hess)
        object.__setattr__(self, 'jac_eq', jac_eq)
        object.__setattr__(self, 'jac_in', jac_in)
        object.__setattr__(self, 'rhs', rhs)

    @property
    def n_primal(self) -> int:
        """Number of primal rows"""
        return self.hess.shape[0]

    @property
    def n_dual(self) -> int:
        """Number of dual rows (equality and active inequality)"""
        return self.jac_eq.shape[0] + self.jac_in.shape[0]

    @property
    def dim(self) -> int:
        """Dimension of the full matrix"""
        return self.n_primal + self.n_dual

    @property
    def target_inertia(self) -> typing.Tuple[int, int, int]:
        """Inertia of a correctly regularized system"""
        return self.n_primal, self.n_dual, 0

    def matrix(self, delta: float = 0.0) -> np.ndarray:
        """
        Assembles the dense symmetric matrix

        :param delta: extra regularization added to the primal diagonal
        """
        n_primal, n_eq = self.n_primal, self.jac_eq.shape[0]
        jac = np.vstack([self.jac_eq, self.jac_in])
        dual_diag = np.concatenate([np.full(n_eq, -self.mu_e), np.full(self.jac_in.shape[0], -self.mu_i)])
        kkt = np.zeros((self.dim, self.dim))
        kkt[:n_primal, :n_primal] = self.hess + delta * np.eye(n_primal)
        kkt[n_primal:, :n_primal] = jac
        kkt[:n_primal, n_primal:] = jac.T
        kkt[n_primal:, n_primal:] = np.diag(dual_diag)
        return kkt

    def regularized(self, delta: float) -> 'SaddleSystem':
        """
        :param delta: regularization added to the primal block
        :return: a new system whose primal block is H + δI
        """
        if delta == 0.0:
            return self
        return dataclasses.replace(self, hess=self.hess + delta * np.eye(self.n_primal))


def _inertia_of(d_factor: np.ndarray, scale: float) -> typing.Tuple[int, int, int]:
    # d is block diagonal (1x1 and 2x2 pivots) and congruent to the factored matrix
    eigenvalues = scipy.linalg.eigvalsh(d_factor)
    tol = ZERO_PIVOT_TOLERANCE * scale
    n_pos = int(np.sum(eigenvalues > tol))
    n_neg = int(np.sum(eigenvalues < -tol))
    return n_pos, n_neg, eigenvalues.size - n_pos - n_neg


def _ldl_solve(lu: np.ndarray, d_factor: np.ndarray, perm: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    lower = lu[perm]
    forward = scipy.linalg.solve_triangular(lower, rhs[perm], lower=True, unit_diagonal=True)
    middle = scipy.linalg.solve(d_factor, forward, assume_a='sym')
    backward = scipy.linalg.solve_triangular(lower.T, middle, lower=False, unit_diagonal=True)
    solution = np.empty_like(backward)
    solution[perm] = backward
    return solution


def factor_and_solve(system: SaddleSystem,
                     delta: float = 0.0) -> typing.Tuple[typing.Optional[np.ndarray], InertiaRecord]:
    """
    Factors K + δ·diag(I, 0) as L·D·Lᵀ (Bunch-Kaufman pivoting) and solves for every right-hand side

    The solution is checked by multiplying back; when the residual exceeds 1e-9·(1 + ‖rhs‖∞) one
    step of iterative refinement is applied. The recorded residual is relative: ‖K·w − rhs‖∞ / (1 + ‖rhs‖∞).

    :param system: saddle system
    :param delta: primal regularization
    :return: (solution, inertia); solution is None when the matrix is numerically singular
    """
    if system.dim == 0:
        return np.zeros_like(system.rhs), InertiaRecord(0, 0, 0, delta, 0.0)

    kkt = system.matrix(delta)
    lu, d_factor, perm = scipy.linalg.ldl(kkt, lower=True, hermitian=True)
    scale = max(float(np.max(np.abs(np.diag(kkt)))), 1.0)
    n_pos, n_neg, n_zero = _inertia_of(d_factor, scale)
    if n_zero:
        LOGGER.debug('singular saddle system (delta=%s, zero pivots=%s)', delta, n_zero)
        return None, InertiaRecord(n_pos, n_neg, n_zero, delta, np.inf)

    rhs = system.rhs
    rhs_norm = float(np.max(np.abs(rhs))) if rhs.size else 0.0
    solution = _ldl_solve(lu, d_factor, perm, rhs)
    residual = kkt @ solution - rhs
    error = float(np.max(np.abs(residual))) if residual.size else 0.0
    if error > REFINEMENT_THRESHOLD * (1.0 + rhs_norm):
        solution = solution - _ldl_solve(lu, d_factor, perm, residual)
        residual = kkt @ solution - rhs
        error = float(np.max(np.abs(residual))) if residual.size else 0.0
        LOGGER.debug('refined saddle solve, residual: %s', error)
    return solution, InertiaRecord(n_pos, n_neg, n_zero, delta, error / (1.0 + rhs_norm))


class Regularizer:
    """
    Primal regularization schedule

    The first attempt uses no regularization (or `min_delta`). On failure δ starts at
    max(delta0, last_delta / growth) and is multiplied by `growth` until the inertia is correct
    or δ exceeds `delta_max`. The last successful δ seeds the next solve.

    One instance belongs to a single solver workspace.
    """

    def __init__(self, delta0: float = 1e-9, growth: float = 8.0, delta_max: float = 1e6) -> None:
        if delta0 <= 0 or growth <= 1 or delta_max < delta0:
            raise ValueError(f'invalid regularization schedule: delta0={delta0}, growth={growth}, '
                             f'delta_max={delta_max}')
        self.delta0 = delta0
        self.growth = growth
        self.delta_max = delta_max
        self.last_delta = 0.0
        self.corrections = 0

    def candidates(self, min_delta: float = 0.0) -> typing.Iterator[float]:
        """
        :param min_delta: smallest regularization to try
        :return: non-decreasing sequence of δ values to try
        """
        yield min_delta
        delta = max(self.delta0, self.last_delta / self.growth, min_delta)
        if delta == min_delta:
            delta *= self.growth
        while delta <= self.delta_max:
            yield delta
            delta *= self.growth

    def succeeded(self, delta: float, min_delta: float = 0.0) -> None:
        """Records the δ that produced the target inertia"""
        if delta > min_delta:
            self.corrections += 1
        self.last_delta = delta


def regularize_until_correct(
        system: SaddleSystem,
        target_inertia: typing.Optional[typing.Tuple[int, int, int]] = None,
        regularizer: typing.Optional[Regularizer] = None,
        min_delta: float = 0.0,
) -> typing.Tuple[SaddleSystem, np.ndarray, InertiaRecord]:
    """
    Adds δI to the primal block, growing δ geometrically, until the factorization has the target inertia

    Args:
        system: saddle system
        target_inertia: expected inertia, defaults to (n_primal, n_dual, 0)
        regularizer: schedule to use (and update); a fresh one when None
        min_delta: regularization of the first attempt

    Returns: (regularized system, its solution, inertia record)

    Raises:
        InertiaCorrectionError: δ exceeded the schedule's maximum
    """
    if target_inertia is None:
        target_inertia = system.target_inertia
    if regularizer is None:
        regularizer = Regularizer()

    record = None
    for delta in regularizer.candidates(min_delta):
        solution, record = factor_and_solve(system, delta)
        if solution is not None and record.matches(target_inertia):
            regularizer.succeeded(delta, min_delta)
            if delta > min_delta:
                LOGGER.debug('inertia corrected with delta=%s', delta)
            return system.regularized(delta), solution, record

    LOGGER.warning('inertia correction failed, last inertia: %s', record)
    raise InertiaCorrectionError(f'regularization exceeded {regularizer.delta_max} '
                                 f'without reaching inertia {target_inertia}')
