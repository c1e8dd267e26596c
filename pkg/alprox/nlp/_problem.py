# coding=utf-8
"""
Problem and iterate types
"""
import dataclasses
import enum
import typing

import numpy as np

Vector = np.ndarray
Matrix = np.ndarray


class HessianMode(enum.Enum):
    """
    Primal block used by the Newton systems
    """
    EXACT = 'exact'
    GAUSS_NEWTON = 'gauss_newton'
    IDENTITY = 'identity'


class SolveStatus(enum.Enum):
    """
    Outcome of a solve
    """
    CONVERGED = 'converged'
    MAX_ITERS = 'max_iters'
    LINE_SEARCH_FAILURE = 'line_search_failure'


def _empty_vector(_x: Vector) -> Vector:
    return np.zeros(0)


@dataclasses.dataclass(frozen=True, eq=False)
class NlpProblem:
    """
    min f(x) subject to c(x) = 0 and h(x) ≤ 0

    Evaluators receive a float vector of size n. `eval_lag_hess(x, lam, nu)` returns the Hessian
    of f + λᵀc + νᵀh; in Gauss-Newton mode it is called with zero multipliers.

    The evaluator wrappers (`f`, `c`, `h`, ...) check output dimensions and raise ValueError.
    """
    n: int
    eval_f: typing.Callable[[Vector], float]
    eval_grad_f: typing.Callable[[Vector], Vector]
    ne: int = 0
    ni: int = 0
    eval_c: typing.Callable[[Vector], Vector] = _empty_vector
    eval_h: typing.Callable[[Vector], Vector] = _empty_vector
    eval_jac_c: typing.Optional[typing.Callable[[Vector], Matrix]] = None
    eval_jac_h: typing.Optional[typing.Callable[[Vector], Matrix]] = None
    eval_lag_hess: typing.Optional[typing.Callable[[Vector, Vector, Vector], Matrix]] = None
    identity_scale: float = 1.0

    def __post_init__(self):
        if self.n <= 0 or self.ne < 0 or self.ni < 0:
            raise ValueError(f'invalid dimensions: n={self.n}, ne={self.ne}, ni={self.ni}')
        if self.ne and self.eval_jac_c is None:
            raise ValueError('eval_jac_c is required when ne > 0')
        if self.ni and self.eval_jac_h is None:
            raise ValueError('eval_jac_h is required when ni > 0')

    def check_point(self, x: Vector, lam: typing.Optional[Vector] = None,
                    nu: typing.Optional[Vector] = None) -> None:
        """
        Raises ValueError if (x, lam, nu) do not match the problem dimensions
        """
        for name, value, size in (('x', x, self.n), ('lam', lam, self.ne), ('nu', nu, self.ni)):
            if value is not None and np.shape(value) != (size,):
                raise ValueError(f'{name} has shape {np.shape(value)}, expected ({size},)')

    @staticmethod
    def _checked(name: str, value, shape: typing.Tuple[int, ...]) -> np.ndarray:
        value = np.asarray(value, dtype=float)
        if value.size == 0 and 0 in shape:
            return value.reshape(shape)
        if value.shape != shape:
            raise ValueError(f'{name} returned shape {value.shape}, expected {shape}')
        return value

    def f(self, x: Vector) -> float:
        """Objective value"""
        return float(self.eval_f(x))

    def grad_f(self, x: Vector) -> Vector:
        """Objective gradient"""
        return self._checked('eval_grad_f', self.eval_grad_f(x), (self.n,))

    def c(self, x: Vector) -> Vector:
        """Equality constraint values"""
        return self._checked('eval_c', self.eval_c(x), (self.ne,))

    def h(self, x: Vector) -> Vector:
        """Inequality constraint values"""
        return self._checked('eval_h', self.eval_h(x), (self.ni,))

    def jac_c(self, x: Vector) -> Matrix:
        """Equality Jacobian"""
        if not self.ne:
            return np.zeros((0, self.n))
        return self._checked('eval_jac_c', self.eval_jac_c(x), (self.ne, self.n))

    def jac_h(self, x: Vector) -> Matrix:
        """Inequality Jacobian"""
        if not self.ni:
            return np.zeros((0, self.n))
        return self._checked('eval_jac_h', self.eval_jac_h(x), (self.ni, self.n))

    def lag_hess(self, x: Vector, lam: Vector, nu: Vector, mode: HessianMode) -> Matrix:
        """
        Primal Hessian block for the requested mode

        :param x: primal point
        :param lam: equality weights
        :param nu: inequality weights
        :param mode: exact, Gauss-Newton (constraint curvature dropped) or scaled identity
        """
        if mode is HessianMode.IDENTITY:
            return self.identity_scale * np.eye(self.n)
        if self.eval_lag_hess is None:
            raise ValueError(f'{mode.value} Hessian requested but eval_lag_hess is not provided')
        if mode is HessianMode.GAUSS_NEWTON:
            lam, nu = np.zeros(self.ne), np.zeros(self.ni)
        hess = self._checked('eval_lag_hess', self.eval_lag_hess(x, lam, nu), (self.n, self.n))
        return 0.5 * (hess + hess.T)


@dataclasses.dataclass(frozen=True, eq=False)
class NlpIterate:
    """
    Primal-dual point

    When used as the center of a subproblem, (x, lam, nu) are the estimates (x_l, λ_l, ν_l) and
    `x_prev` the proximal center (x itself when not given).
    """
    x: Vector
    lam: Vector
    nu: Vector
    x_prev: typing.Optional[Vector] = None
    dual_inf: typing.Optional[float] = None
    primal_inf: typing.Optional[float] = None

    @property
    def prox_center(self) -> Vector:
        """Proximal center x_l"""
        return self.x if self.x_prev is None else self.x_prev

    def copy(self) -> 'NlpIterate':
        """Deep copy of the vectors"""
        return NlpIterate(
            np.array(self.x, dtype=float),
            np.array(self.lam, dtype=float),
            np.array(self.nu, dtype=float),
            None if self.x_prev is None else np.array(self.x_prev, dtype=float),
            self.dual_inf,
            self.primal_inf,
        )


def quadratic_program(hess: Matrix, grad: Vector,
                      a_eq: typing.Optional[Matrix] = None, b_eq: typing.Optional[Vector] = None,
                      a_in: typing.Optional[Matrix] = None, b_in: typing.Optional[Vector] = None) -> NlpProblem:
    """
    min ½xᵀPx + qᵀx subject to A_eq·x = b_eq and A_in·x ≤ b_in

    :param hess: P (symmetric)
    :param grad: q
    :param a_eq: equality matrix
    :param b_eq: equality right-hand side
    :param a_in: inequality matrix
    :param b_in: inequality right-hand side
    :return: the equivalent NlpProblem
    """
    hess = np.atleast_2d(np.asarray(hess, dtype=float))
    grad = np.asarray(grad, dtype=float)
    n = grad.size
    a_eq = np.zeros((0, n)) if a_eq is None else np.atleast_2d(np.asarray(a_eq, dtype=float))
    b_eq = np.zeros(a_eq.shape[0]) if b_eq is None else np.asarray(b_eq, dtype=float)
    a_in = np.zeros((0, n)) if a_in is None else np.atleast_2d(np.asarray(a_in, dtype=float))
    b_in = np.zeros(a_in.shape[0]) if b_in is None else np.asarray(b_in, dtype=float)
    if hess.shape != (n, n) or a_eq.shape[1] != n or a_in.shape[1] != n:
        raise ValueError('inconsistent quadratic program dimensions')
    if b_eq.shape != (a_eq.shape[0],) or b_in.shape != (a_in.shape[0],):
        raise ValueError('inconsistent quadratic program right-hand sides')

    return NlpProblem(
        n=n,
        ne=a_eq.shape[0],
        ni=a_in.shape[0],
        eval_f=lambda x: 0.5 * x @ hess @ x + grad @ x,
        eval_grad_f=lambda x: hess @ x + grad,
        eval_c=lambda x: a_eq @ x - b_eq,
        eval_h=lambda x: a_in @ x - b_in,
        eval_jac_c=lambda x: a_eq,
        eval_jac_h=lambda x: a_in,
        eval_lag_hess=lambda x, lam, nu: hess,
    )
