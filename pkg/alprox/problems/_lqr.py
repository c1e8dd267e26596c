# coding=utf-8
"""
Bound-constrained LQR and obstacle LQR
"""
import dataclasses
import logging
import typing

import numpy as np

from alprox.trajopt import (
    ConstraintJacobians, CostDerivatives, DynamicsJacobians, StageModel, TerminalModel, TrajOptProblem,
)

from ._discretize import discretize_rotational
from ._obstacle import PolyhedralObstacle

LOGGER = logging.getLogger('alprox')

ROTATION_GENERATOR = ((0.0, 2.0), (-2.0, 0.0))
UNSTABLE_GENERATOR = ((0.4, 2.0), (-2.0, 0.4))
ROTATION_DRIFT = (0.3, -0.2)


def _matrix(value, size: int, name: str) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return float(value) * np.eye(size)
    if value.ndim == 1:
        value = np.diag(value)
    if value.shape != (size, size):
        raise ValueError(f'{name} has shape {value.shape}, expected ({size}, {size})')
    return value


def _check_psd(matrix: np.ndarray, name: str):
    if not np.allclose(matrix, matrix.T, atol=1e-12):
        raise ValueError(f'{name} must be symmetric')
    if matrix.size and np.min(np.linalg.eigvalsh(matrix)) < -1e-10:
        raise ValueError(f'{name} must be positive semi-definite')


@dataclasses.dataclass(frozen=True, eq=False)
class BoundLqrConfig:
    """
    x_{k+1} = A·x_k + B·u_k + c, cost Σ ½(xᵀQx + uᵀRu) + ½x_NᵀQ_Nx_N, |u| ≤ ū

    Infinite entries of ū produce no constraint rows. `dt` only scales the time axis of plots.
    """
    A: np.ndarray
    B: np.ndarray
    c: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    QN: np.ndarray
    u_bar: np.ndarray
    x0: np.ndarray
    N: int
    dt: float = 1.0

    def __post_init__(self):
        a_mat = np.atleast_2d(np.asarray(self.A, dtype=float))
        nx = a_mat.shape[0]
        b_mat = np.asarray(self.B, dtype=float).reshape(nx, -1)
        nu = b_mat.shape[1]
        fields = {
            'A': a_mat,
            'B': b_mat,
            'c': np.asarray(self.c, dtype=float).reshape(-1),
            'Q': _matrix(self.Q, nx, 'Q'),
            'R': _matrix(self.R, nu, 'R'),
            'QN': _matrix(self.QN, nx, 'QN'),
            'u_bar': np.broadcast_to(np.asarray(self.u_bar, dtype=float), (nu,)).copy(),
            'x0': np.asarray(self.x0, dtype=float).reshape(-1),
        }
        if a_mat.shape != (nx, nx):
            raise ValueError(f'A must be square, got {a_mat.shape}')
        for name in ('c', 'x0'):
            if fields[name].shape != (nx,):
                raise ValueError(f'{name} has shape {fields[name].shape}, expected ({nx},)')
        for name in ('Q', 'R', 'QN'):
            _check_psd(fields[name], name)
        if np.any(fields['u_bar'] < 0):
            raise ValueError('u_bar must be non-negative')
        if int(self.N) <= 0 or self.dt <= 0:
            raise ValueError(f'invalid horizon N={self.N}, dt={self.dt}')
        for name, value in fields.items():
            object.__setattr__(self, name, value)
        object.__setattr__(self, 'N', int(self.N))

    @property
    def nx(self) -> int:
        """State dimension"""
        return self.A.shape[0]

    @property
    def nu(self) -> int:
        """Control dimension"""
        return self.B.shape[1]

    @classmethod
    def from_continuous(cls, a_c, c_cont, dt: float = 0.05, N: int = 60, scheme: str = 'zoh', b_c=None,
                        Q=1e-2, R=1e-2, QN=100.0, u_bar=0.4, x0=(0.5, 0.5)) -> 'BoundLqrConfig':
        """
        Config of a discretized continuous-time system
        """
        a_mat, b_mat, c_vec = discretize_rotational(a_c, c_cont, dt, scheme, b_c)
        return cls(a_mat, b_mat, c_vec, Q, R, QN, u_bar, x0, N, dt)

    @classmethod
    def rotational(cls, **kwargs) -> 'BoundLqrConfig':
        """Rotating system A_c = [[0, 2], [-2, 0]] with drift (0.3, -0.2) and ū = 0.4"""
        return cls.from_continuous(ROTATION_GENERATOR, ROTATION_DRIFT, **kwargs)

    @classmethod
    def unstable(cls, **kwargs) -> 'BoundLqrConfig':
        """Unstable spiral A_c = [[0.4, 2], [-2, 0.4]] with the same drift and bound"""
        return cls.from_continuous(UNSTABLE_GENERATOR, ROTATION_DRIFT, **kwargs)


def _obstacle_rows(obstacles: typing.Sequence[PolyhedralObstacle], x: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
    values = np.array([obstacle.value(x) for obstacle in obstacles])
    grads = np.array([obstacle.gradient(x) for obstacle in obstacles]).reshape(len(obstacles), x.size)
    return values, grads


class LinearQuadraticStage(StageModel):
    """
    ½(xᵀQx + uᵀRu), f = A·x + B·u + c − x′, control bounds and obstacle avoidance rows
    """

    def __init__(self, cfg: BoundLqrConfig, obstacles: typing.Sequence[PolyhedralObstacle] = ()) -> None:
        self.cfg = cfg
        self.obstacles = tuple(obstacles)
        for obstacle in self.obstacles:
            if obstacle.nx != cfg.nx:
                raise ValueError(f'obstacle dimension {obstacle.nx} does not match nx={cfg.nx}')
        self.bounded = np.flatnonzero(np.isfinite(cfg.u_bar))
        super().__init__(cfg.nx, cfg.nu, cfg.nx, 2 * self.bounded.size + len(self.obstacles))

    def cost(self, x, u) -> CostDerivatives:
        cfg = self.cfg
        return CostDerivatives(self.cost_value(x, u), cfg.Q @ x, cfg.R @ u, cfg.Q, np.zeros((self.nx, self.nu)), cfg.R)

    def cost_value(self, x, u) -> float:
        return 0.5 * float(x @ self.cfg.Q @ x + u @ self.cfg.R @ u)

    def dynamics(self, x, u, y) -> DynamicsJacobians:
        return DynamicsJacobians(self.dynamics_value(x, u, y), self.cfg.A, self.cfg.B, -np.eye(self.nx))

    def dynamics_value(self, x, u, y) -> np.ndarray:
        return self.cfg.A @ x + self.cfg.B @ u + self.cfg.c - y

    def constraints(self, x, u) -> ConstraintJacobians:
        selector = np.eye(self.nu)[self.bounded]
        _, obstacle_grads = _obstacle_rows(self.obstacles, x)
        return ConstraintJacobians(
            self.constraints_value(x, u),
            np.vstack([np.zeros((2 * self.bounded.size, self.nx)), obstacle_grads]),
            np.vstack([selector, -selector, np.zeros((len(self.obstacles), self.nu))]),
        )

    def constraints_value(self, x, u) -> np.ndarray:
        bound = self.cfg.u_bar[self.bounded]
        picked = u[self.bounded]
        obstacle_values = [obstacle.value(x) for obstacle in self.obstacles]
        return np.concatenate([picked - bound, -picked - bound, obstacle_values])


class QuadraticTerminal(TerminalModel):
    """
    ½x_NᵀQ_Nx_N with optional obstacle avoidance rows
    """

    def __init__(self, cfg: BoundLqrConfig, obstacles: typing.Sequence[PolyhedralObstacle] = ()) -> None:
        self.cfg = cfg
        self.obstacles = tuple(obstacles)
        super().__init__(cfg.nx, len(self.obstacles))

    def cost(self, x) -> CostDerivatives:
        return CostDerivatives(self.cost_value(x), self.cfg.QN @ x, np.zeros(0), self.cfg.QN,
                               np.zeros((self.nx, 0)), np.zeros((0, 0)))

    def cost_value(self, x) -> float:
        return 0.5 * float(x @ self.cfg.QN @ x)

    def constraints(self, x) -> ConstraintJacobians:
        values, grads = _obstacle_rows(self.obstacles, x)
        return ConstraintJacobians(values, grads, np.zeros((self.nh, 0)))

    def constraints_value(self, x) -> np.ndarray:
        return np.array([obstacle.value(x) for obstacle in self.obstacles])


def make_bound_lqr(cfg: BoundLqrConfig) -> TrajOptProblem:
    """
    Bound-constrained LQR over cfg.N stages; no terminal inequality
    """
    LOGGER.debug('bound LQR: nx=%s, nu=%s, N=%s, u_bar=%s', cfg.nx, cfg.nu, cfg.N, cfg.u_bar)
    stage = LinearQuadraticStage(cfg)
    return TrajOptProblem([stage] * cfg.N, QuadraticTerminal(cfg), cfg.x0)


def make_obstacle_lqr(cfg: BoundLqrConfig, obstacles: typing.Sequence[PolyhedralObstacle]) -> TrajOptProblem:
    """
    Bound-constrained LQR whose states (terminal included) must avoid every obstacle
    """
    obstacles = tuple(obstacles)
    LOGGER.debug('obstacle LQR: %s obstacle(s), N=%s', len(obstacles), cfg.N)
    stage = LinearQuadraticStage(cfg, obstacles)
    return TrajOptProblem([stage] * cfg.N, QuadraticTerminal(cfg, obstacles), cfg.x0)


def obstacle_scenario(N: int = 40, dt: float = 0.05, u_bar: float = 0.6) -> typing.Tuple[BoundLqrConfig, typing.List[PolyhedralObstacle]]:
    """
    Single integrator steered from (-1, 0.3) to the origin around the box [-0.6, -0.3] × [-0.2, 0.2]
    """
    cfg = BoundLqrConfig.from_continuous(np.zeros((2, 2)), np.zeros(2), dt=dt, N=N, u_bar=u_bar, x0=(-1.0, 0.3))
    return cfg, [PolyhedralObstacle.box((-0.6, -0.2), (-0.3, 0.2))]
