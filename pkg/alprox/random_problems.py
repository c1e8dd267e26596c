# coding=utf-8
"""
Randomized problem instances for property tests and the random benchmark entries

Every generator takes a numpy Generator, so an instance is fully determined by its seed.
"""
import typing

import numpy as np

from alprox.nlp import NlpProblem, quadratic_program
from alprox.problems import BoundLqrConfig
from alprox.trajopt import (
    ConstraintJacobians, CostDerivatives, DynamicsJacobians, StageCurvature, StageModel, TerminalModel,
    TrajOptProblem,
)

Generator = np.random.Generator


def rng_from_seed(seed: typing.Optional[int]) -> Generator:
    """Seeded generator (unseeded when seed is None)"""
    return np.random.default_rng(seed)


def _spd(rng: Generator, size: int, shift: float = 0.1) -> np.ndarray:
    factor = rng.standard_normal((size, size))
    return factor.T @ factor / size + shift * np.eye(size)


def random_convex_qp(rng: Generator, n: int, ne: int = 0, ni: int = 0) -> typing.Tuple[NlpProblem, np.ndarray]:
    """
    Strictly convex QP with a known strictly feasible point

    :param rng: generator
    :param n: number of variables
    :param ne: number of equality rows (fewer than n)
    :param ni: number of inequality rows
    :return: (problem, feasible point)
    """
    if ne >= n:
        raise ValueError(f'need fewer equality rows than variables, got ne={ne}, n={n}')
    feasible = rng.standard_normal(n)
    a_eq = rng.standard_normal((ne, n))
    a_in = rng.standard_normal((ni, n))
    problem = quadratic_program(
        _spd(rng, n),
        rng.standard_normal(n),
        a_eq,
        a_eq @ feasible,
        a_in,
        a_in @ feasible + rng.uniform(0.1, 1.0, ni),
    )
    return problem, feasible


def random_equality_qp(rng: Generator, n: int, ne: int) -> NlpProblem:
    """Strictly convex QP with ne linear equality rows"""
    return random_convex_qp(rng, n, ne, 0)[0]


def random_nlp(rng: Generator, n: int, ne: int = 0, ni: int = 0) -> NlpProblem:
    """
    Smooth nonconvex NLP with an exact Lagrangian Hessian

        f(x)   = ½xᵀPx + qᵀx + Σ a_i·cos(x_i)
        c_j(x) = A_j·x − b_j + γ_j·sin(x_{p_j})
        h_j(x) = G_j·x − g_j + ½κ_j·x_{s_j}²
    """
    hess = _spd(rng, n)
    grad = rng.standard_normal(n)
    wave = rng.uniform(-1.0, 1.0, n)
    a_eq, b_eq = rng.standard_normal((ne, n)), rng.standard_normal(ne)
    gamma, eq_index = rng.uniform(-0.5, 0.5, ne), rng.integers(0, n, ne)
    a_in, b_in = rng.standard_normal((ni, n)), rng.uniform(0.5, 2.0, ni)
    kappa, in_index = rng.uniform(-0.5, 0.5, ni), rng.integers(0, n, ni)

    def eval_jac_c(x):
        jac = a_eq.copy()
        jac[np.arange(ne), eq_index] += gamma * np.cos(x[eq_index])
        return jac

    def eval_jac_h(x):
        jac = a_in.copy()
        jac[np.arange(ni), in_index] += kappa * x[in_index]
        return jac

    def eval_lag_hess(x, lam, nu):
        diag = -wave * np.cos(x)
        np.add.at(diag, eq_index, -lam * gamma * np.sin(x[eq_index]))
        np.add.at(diag, in_index, nu * kappa)
        return hess + np.diag(diag)

    return NlpProblem(
        n=n,
        ne=ne,
        ni=ni,
        eval_f=lambda x: 0.5 * x @ hess @ x + grad @ x + wave @ np.cos(x),
        eval_grad_f=lambda x: hess @ x + grad - wave * np.sin(x),
        eval_c=lambda x: a_eq @ x - b_eq + gamma * np.sin(x[eq_index]),
        eval_h=lambda x: a_in @ x - b_in + 0.5 * kappa * x[in_index] ** 2,
        eval_jac_c=eval_jac_c,
        eval_jac_h=eval_jac_h,
        eval_lag_hess=eval_lag_hess,
    )


def random_bound_lqr_config(rng: Generator, max_controls: int = 8) -> BoundLqrConfig:
    """
    Small bound LQR with N·nu ≤ max_controls, suitable for active-set enumeration
    """
    nx = 2
    nu = int(rng.integers(1, 3))
    horizon = int(rng.integers(2, max(2, max_controls // nu) + 1))
    return BoundLqrConfig(
        A=np.eye(nx) + 0.2 * rng.standard_normal((nx, nx)),
        B=0.5 * rng.standard_normal((nx, nu)),
        c=0.1 * rng.standard_normal(nx),
        Q=rng.uniform(0.1, 1.0, nx),
        R=rng.uniform(0.05, 0.5, nu),
        QN=rng.uniform(1.0, 10.0, nx),
        u_bar=rng.uniform(0.05, 0.5, nu),
        x0=rng.uniform(-1.0, 1.0, nx),
        N=horizon,
    )


class RandomConvexStage(StageModel):
    """
    Convex stage: quadratic cost with cross term, affine dynamics, polyhedral rows G·x + H·u ≤ g
    and the disk ‖u‖² ≤ radius²
    """

    def __init__(self, rng: Generator, nx: int, nu: int, n_rows: int) -> None:
        super().__init__(nx, nu, nx, n_rows + 1)
        weight = _spd(rng, nx + nu)
        self.Q, self.S, self.R = weight[:nx, :nx], weight[:nx, nx:], weight[nx:, nx:]
        self.q, self.r = rng.standard_normal(nx), rng.standard_normal(nu)
        self.A = np.eye(nx) + 0.3 * rng.standard_normal((nx, nx))
        self.B = rng.standard_normal((nx, nu))
        self.c = 0.1 * rng.standard_normal(nx)
        self.G = rng.standard_normal((n_rows, nx))
        self.H = rng.standard_normal((n_rows, nu))
        self.g = np.zeros(n_rows)
        self.radius = float(rng.uniform(0.3, 1.0))

    def make_feasible(self, x: np.ndarray, margin: np.ndarray) -> None:
        """Shifts g so that (x, u = 0) satisfies the polyhedral rows with the given margin"""
        self.g = self.G @ x + margin

    def cost(self, x, u) -> CostDerivatives:
        return CostDerivatives(self.cost_value(x, u), self.Q @ x + self.S @ u + self.q,
                               self.S.T @ x + self.R @ u + self.r, self.Q, self.S, self.R)

    def cost_value(self, x, u) -> float:
        return float(0.5 * x @ self.Q @ x + x @ self.S @ u + 0.5 * u @ self.R @ u + self.q @ x + self.r @ u)

    def dynamics(self, x, u, y) -> DynamicsJacobians:
        return DynamicsJacobians(self.dynamics_value(x, u, y), self.A, self.B, -np.eye(self.nx))

    def dynamics_value(self, x, u, y) -> np.ndarray:
        return self.A @ x + self.B @ u + self.c - y

    def constraints(self, x, u) -> ConstraintJacobians:
        return ConstraintJacobians(
            self.constraints_value(x, u),
            np.vstack([self.G, np.zeros((1, self.nx))]),
            np.vstack([self.H, 2.0 * u]),
        )

    def constraints_value(self, x, u) -> np.ndarray:
        return np.concatenate([self.G @ x + self.H @ u - self.g, [u @ u - self.radius ** 2]])

    def curvature(self, x, u, y, lam, nu) -> StageCurvature:
        return StageCurvature(np.zeros((self.nx, self.nx)), np.zeros((self.nx, self.nu)),
                              2.0 * nu[-1] * np.eye(self.nu))


class RandomConvexTerminal(TerminalModel):
    """
    ½xᵀQ_N·x + q_Nᵀx with rows S·x ≤ s
    """

    def __init__(self, rng: Generator, nx: int, n_rows: int) -> None:
        super().__init__(nx, n_rows)
        self.QN = _spd(rng, nx)
        self.qN = rng.standard_normal(nx)
        self.S = rng.standard_normal((n_rows, nx))
        self.s = np.zeros(n_rows)

    def cost(self, x) -> CostDerivatives:
        return CostDerivatives(self.cost_value(x), self.QN @ x + self.qN, np.zeros(0), self.QN,
                               np.zeros((self.nx, 0)), np.zeros((0, 0)))

    def cost_value(self, x) -> float:
        return float(0.5 * x @ self.QN @ x + self.qN @ x)

    def constraints(self, x) -> ConstraintJacobians:
        return ConstraintJacobians(self.constraints_value(x), self.S, np.zeros((self.nh, 0)))

    def constraints_value(self, x) -> np.ndarray:
        return self.S @ x - self.s


def random_ocp(rng: Generator, horizon: typing.Optional[int] = None, nx: typing.Optional[int] = None,
               nu: typing.Optional[int] = None) -> TrajOptProblem:
    """
    Small convex optimal control problem that is feasible with zero controls

    The constraint offsets are placed a random margin away from the zero-control rollout, so
    some rows become active at the optimum. Dimensions default to random values
    (N ≤ 5, nx ≤ 3, nu ≤ 2).
    """
    horizon = int(rng.integers(2, 6)) if horizon is None else horizon
    nx = int(rng.integers(1, 4)) if nx is None else nx
    nu = int(rng.integers(1, 3)) if nu is None else nu
    stages = [RandomConvexStage(rng, nx, nu, int(rng.integers(0, 3))) for _ in range(horizon)]
    terminal = RandomConvexTerminal(rng, nx, int(rng.integers(0, 3)))
    x0 = rng.standard_normal(nx)

    state = x0
    for stage in stages:
        stage.make_feasible(state, rng.uniform(0.05, 0.5, stage.nh - 1))
        state = stage.dynamics_value(state, np.zeros(nu), np.zeros(nx))
    terminal.s = terminal.S @ state + rng.uniform(0.05, 0.5, terminal.nh)
    return TrajOptProblem(stages, terminal, x0)
