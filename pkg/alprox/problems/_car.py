# coding=utf-8
"""
Kinematic car parking

State x = (p_x, p_y, θ, v), control u = (ω, a): front wheel angle and acceleration.
"""
import dataclasses
import logging
import math
import typing

import numpy as np

from alprox.trajopt import (
    ConstraintJacobians, CostDerivatives, DynamicsJacobians, StageModel, TerminalModel, TrajOptProblem,
)

LOGGER = logging.getLogger('alprox')

PARKING_START = (1.0, 1.0, 1.5 * math.pi, 0.0)


class CarStep(typing.NamedTuple):
    """
    Next state of the kinematic car with its Jacobians
    """
    value: np.ndarray
    fx: np.ndarray
    fu: np.ndarray


def car_step(x: np.ndarray, u: np.ndarray, d_axle: float, dt: float) -> CarStep:
    """
    One step of the kinematic car

    :param x: state (p_x, p_y, θ, v)
    :param u: control (ω, a)
    :param d_axle: distance between the axles
    :param dt: time step
    :raises ValueError: the step leaves the domain of asin (speed too high for the wheel angle)
    """
    p_x, p_y, theta, speed = (float(value) for value in x)
    wheel, accel = float(u[0]), float(u[1])
    r = speed * dt
    sin_w, cos_w = math.sin(wheel), math.cos(wheel)
    radicand = d_axle ** 2 - (r * sin_w) ** 2
    if radicand <= 0.0:
        raise ValueError(f'car step outside the asin domain: v={speed}, w={wheel}')
    q = math.sqrt(radicand)
    beta = math.asin(sin_w * r / d_axle)
    travel = r * cos_w + d_axle - q
    cos_t, sin_t = math.cos(theta), math.sin(theta)

    db_dr = cos_w + r * sin_w ** 2 / q
    db_dw = -r * sin_w + r ** 2 * sin_w * cos_w / q
    dbeta_dr = sin_w / q
    dbeta_dw = cos_w * r / q

    value = np.array([p_x + travel * cos_t, p_y + travel * sin_t, theta + beta, speed + accel * dt])
    fx = np.array([
        [1.0, 0.0, -travel * sin_t, db_dr * dt * cos_t],
        [0.0, 1.0, travel * cos_t, db_dr * dt * sin_t],
        [0.0, 0.0, 1.0, dbeta_dr * dt],
        [0.0, 0.0, 0.0, 1.0],
    ])
    fu = np.array([
        [db_dw * cos_t, 0.0],
        [db_dw * sin_t, 0.0],
        [dbeta_dw, 0.0],
        [0.0, dt],
    ])
    return CarStep(value, fx, fu)


@dataclasses.dataclass(frozen=True, eq=False)
class CarParkConfig:
    """
    Parking task: drive from x0 to the origin within T seconds

    Args:
        d_axle: axle distance (m)
        dt: time step (s)
        T: horizon (s), an integer multiple of dt
        a_max: acceleration bound (m/s²)
        w_max: wheel-angle bound
        x0: initial state (p_x, p_y, θ, v)
        w_state: running state weight (diagonal)
        w_control: control weight (diagonal)
        w_terminal: terminal state weight (diagonal)
    """
    d_axle: float = 2.0
    dt: float = 0.03
    T: float = 15.0
    a_max: float = 10.0
    w_max: float = 0.5
    x0: np.ndarray = PARKING_START
    w_state: np.ndarray = (1e-2, 1e-2, 1e-2, 1e-3)
    w_control: np.ndarray = (1e-3, 1e-2)
    w_terminal: np.ndarray = (100.0, 100.0, 100.0, 30.0)

    def __post_init__(self):
        for name in ('d_axle', 'dt', 'T', 'a_max', 'w_max'):
            if not getattr(self, name) > 0:
                raise ValueError(f'{name} must be positive, got {getattr(self, name)}')
        steps = self.T / self.dt
        if abs(steps - round(steps)) > 1e-6 * max(1.0, steps):
            raise ValueError(f'T={self.T} is not an integer multiple of dt={self.dt}')
        for name, size in (('x0', 4), ('w_state', 4), ('w_control', 2), ('w_terminal', 4)):
            value = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            if value.shape != (size,):
                raise ValueError(f'{name} has shape {value.shape}, expected ({size},)')
            if name != 'x0' and np.any(value < 0):
                raise ValueError(f'{name} must be non-negative')
            object.__setattr__(self, name, value)

    @property
    def N(self) -> int:
        """Number of stages"""
        return int(round(self.T / self.dt))

    @property
    def u_bar(self) -> np.ndarray:
        """Control bounds (w_max, a_max)"""
        return np.array([self.w_max, self.a_max])


class KinematicCarStage(StageModel):
    """
    ½(xᵀW_x·x + uᵀW_u·u), f = step(x, u) − x′, |ω| ≤ w_max and |a| ≤ a_max
    """

    def __init__(self, cfg: CarParkConfig) -> None:
        self.cfg = cfg
        self.state_weight = np.diag(cfg.w_state)
        self.control_weight = np.diag(cfg.w_control)
        self.selector = np.vstack([np.eye(2), -np.eye(2)])
        super().__init__(4, 2, 4, 4)

    def cost(self, x, u) -> CostDerivatives:
        return CostDerivatives(self.cost_value(x, u), self.state_weight @ x, self.control_weight @ u,
                               self.state_weight, np.zeros((4, 2)), self.control_weight)

    def cost_value(self, x, u) -> float:
        return 0.5 * float(x @ self.state_weight @ x + u @ self.control_weight @ u)

    def dynamics(self, x, u, y) -> DynamicsJacobians:
        step = car_step(x, u, self.cfg.d_axle, self.cfg.dt)
        return DynamicsJacobians(step.value - y, step.fx, step.fu, -np.eye(4))

    def constraints(self, x, u) -> ConstraintJacobians:
        return ConstraintJacobians(self.constraints_value(x, u), np.zeros((4, 4)), self.selector)

    def constraints_value(self, x, u) -> np.ndarray:
        return self.selector @ u - np.concatenate([self.cfg.u_bar, self.cfg.u_bar])


class CarTerminal(TerminalModel):
    """½x_NᵀW_N·x_N"""

    def __init__(self, cfg: CarParkConfig) -> None:
        self.weight = np.diag(cfg.w_terminal)
        super().__init__(4)

    def cost(self, x) -> CostDerivatives:
        return CostDerivatives(self.cost_value(x), self.weight @ x, np.zeros(0), self.weight,
                               np.zeros((4, 0)), np.zeros((0, 0)))

    def cost_value(self, x) -> float:
        return 0.5 * float(x @ self.weight @ x)


def make_car_park(cfg: typing.Optional[CarParkConfig] = None) -> TrajOptProblem:
    """
    Car parking over cfg.N stages; constraint curvature is not modeled (Gauss-Newton)
    """
    cfg = cfg or CarParkConfig()
    LOGGER.debug('car park: N=%s, dt=%s, x0=%s', cfg.N, cfg.dt, cfg.x0)
    stage = KinematicCarStage(cfg)
    return TrajOptProblem([stage] * cfg.N, CarTerminal(cfg), cfg.x0)
