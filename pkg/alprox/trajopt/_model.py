# coding=utf-8
"""
Stage models of a discrete optimal control problem

    min  Σ ℓ_k(x_k, u_k) + ℓ_N(x_N)
    s.t. x_0 = x̄_0
         f_k(x_k, u_k, x_{k+1}) = 0
         h_k(x_k, u_k) ≤ 0,  h_N(x_N) ≤ 0
"""
import abc
import typing

import numpy as np


class CostDerivatives(typing.NamedTuple):
    """
    Cost value with gradient and Hessian blocks; terminal costs use empty u blocks
    """
    value: float
    lx: np.ndarray
    lu: np.ndarray
    lxx: np.ndarray
    lxu: np.ndarray
    luu: np.ndarray


class DynamicsJacobians(typing.NamedTuple):
    """
    Implicit dynamics residual f(x, u, x′) with its Jacobians
    """
    value: np.ndarray
    fx: np.ndarray
    fu: np.ndarray
    fy: np.ndarray


class ConstraintJacobians(typing.NamedTuple):
    """
    Path constraint values h(x, u) with Jacobians
    """
    value: np.ndarray
    hx: np.ndarray
    hu: np.ndarray


class StageCurvature(typing.NamedTuple):
    """
    Second derivatives of λᵀf + νᵀh with respect to (x, u)
    """
    hxx: np.ndarray
    hxu: np.ndarray
    huu: np.ndarray


def _check_shape(owner: str, name: str, value: np.ndarray, shape: typing.Tuple[int, ...]) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    if value.size == 0 and 0 in shape:
        return value.reshape(shape)
    if value.shape != shape:
        raise ValueError(f'{owner}.{name} has shape {value.shape}, expected {shape}')
    return value


class StageModel(abc.ABC):
    """
    Stage k: cost ℓ_k, implicit dynamics f_k and path constraint h_k

    Subclasses implement `cost` and `dynamics`; `constraints` defaults to no rows and
    `curvature` (used in exact Hessian mode) to zero. The `*_value` methods may be overridden
    with cheaper value-only evaluations, they are what the line search calls.
    Curvature with respect to x′ is not modeled: dynamics are expected to be affine in x′.
    """

    def __init__(self, nx: int, nu: int, nx_next: typing.Optional[int] = None, nh: int = 0) -> None:
        if nx <= 0 or nu < 0 or nh < 0:
            raise ValueError(f'invalid stage dimensions: nx={nx}, nu={nu}, nh={nh}')
        self.nx = nx
        self.nu = nu
        self.nx_next = nx if nx_next is None else nx_next
        self.nh = nh

    @abc.abstractmethod
    def cost(self, x: np.ndarray, u: np.ndarray) -> CostDerivatives:
        """ℓ_k and its derivatives"""

    @abc.abstractmethod
    def dynamics(self, x: np.ndarray, u: np.ndarray, y: np.ndarray) -> DynamicsJacobians:
        """f_k(x, u, x′) and its Jacobians"""

    def constraints(self, x: np.ndarray, u: np.ndarray) -> ConstraintJacobians:
        """h_k(x, u) and its Jacobians"""
        return ConstraintJacobians(np.zeros(0), np.zeros((0, self.nx)), np.zeros((0, self.nu)))

    def curvature(self, x: np.ndarray, u: np.ndarray, y: np.ndarray,
                  lam: np.ndarray, nu: np.ndarray) -> StageCurvature:
        """
        ∇²(λᵀf + νᵀh) blocks, zero by default

        :param lam: weights of the dynamics rows
        :param nu: weights of the constraint rows (zero outside the active set)
        """
        return StageCurvature(np.zeros((self.nx, self.nx)), np.zeros((self.nx, self.nu)),
                              np.zeros((self.nu, self.nu)))

    def cost_value(self, x: np.ndarray, u: np.ndarray) -> float:
        """ℓ_k only"""
        return float(self.cost(x, u).value)

    def dynamics_value(self, x: np.ndarray, u: np.ndarray, y: np.ndarray) -> np.ndarray:
        """f_k only"""
        return self.dynamics(x, u, y).value

    def constraints_value(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """h_k only"""
        return self.constraints(x, u).value

    def checked_cost(self, x, u) -> CostDerivatives:
        """`cost` with output dimensions verified"""
        name = type(self).__name__
        cost = self.cost(x, u)
        return CostDerivatives(
            float(cost.value),
            _check_shape(name, 'lx', cost.lx, (self.nx,)),
            _check_shape(name, 'lu', cost.lu, (self.nu,)),
            _check_shape(name, 'lxx', cost.lxx, (self.nx, self.nx)),
            _check_shape(name, 'lxu', cost.lxu, (self.nx, self.nu)),
            _check_shape(name, 'luu', cost.luu, (self.nu, self.nu)),
        )

    def checked_dynamics(self, x, u, y) -> DynamicsJacobians:
        """`dynamics` with output dimensions verified"""
        name = type(self).__name__
        dyn = self.dynamics(x, u, y)
        return DynamicsJacobians(
            _check_shape(name, 'f', dyn.value, (self.nx_next,)),
            _check_shape(name, 'fx', dyn.fx, (self.nx_next, self.nx)),
            _check_shape(name, 'fu', dyn.fu, (self.nx_next, self.nu)),
            _check_shape(name, 'fy', dyn.fy, (self.nx_next, self.nx_next)),
        )

    def checked_constraints(self, x, u) -> ConstraintJacobians:
        """`constraints` with output dimensions verified"""
        name = type(self).__name__
        con = self.constraints(x, u)
        return ConstraintJacobians(
            _check_shape(name, 'h', con.value, (self.nh,)),
            _check_shape(name, 'hx', con.hx, (self.nh, self.nx)),
            _check_shape(name, 'hu', con.hu, (self.nh, self.nu)),
        )


class TerminalModel(abc.ABC):
    """
    Terminal cost ℓ_N and constraint h_N
    """

    def __init__(self, nx: int, nh: int = 0) -> None:
        if nx <= 0 or nh < 0:
            raise ValueError(f'invalid terminal dimensions: nx={nx}, nh={nh}')
        self.nx = nx
        self.nu = 0
        self.nh = nh

    @abc.abstractmethod
    def cost(self, x: np.ndarray) -> CostDerivatives:
        """ℓ_N and its derivatives (u blocks empty)"""

    def constraints(self, x: np.ndarray) -> ConstraintJacobians:
        """h_N(x) and its Jacobian (hu empty)"""
        return ConstraintJacobians(np.zeros(0), np.zeros((0, self.nx)), np.zeros((0, 0)))

    def curvature(self, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
        """∇²(νᵀh_N), zero by default"""
        return np.zeros((self.nx, self.nx))

    def cost_value(self, x: np.ndarray) -> float:
        """ℓ_N only"""
        return float(self.cost(x).value)

    def constraints_value(self, x: np.ndarray) -> np.ndarray:
        """h_N only"""
        return self.constraints(x).value

    def checked_cost(self, x) -> CostDerivatives:
        """`cost` with output dimensions verified"""
        name = type(self).__name__
        cost = self.cost(x)
        return CostDerivatives(
            float(cost.value),
            _check_shape(name, 'lx', cost.lx, (self.nx,)),
            np.zeros(0),
            _check_shape(name, 'lxx', cost.lxx, (self.nx, self.nx)),
            np.zeros((self.nx, 0)),
            np.zeros((0, 0)),
        )

    def checked_constraints(self, x) -> ConstraintJacobians:
        """`constraints` with output dimensions verified"""
        name = type(self).__name__
        con = self.constraints(x)
        return ConstraintJacobians(
            _check_shape(name, 'h', con.value, (self.nh,)),
            _check_shape(name, 'hx', con.hx, (self.nh, self.nx)),
            np.zeros((self.nh, 0)),
        )


class TrajOptProblem:
    """
    Horizon of stage models closed by a terminal model, with the initial state x̄_0
    """

    def __init__(self, stages: typing.Sequence[StageModel], terminal: TerminalModel, x0_bar) -> None:
        if not stages:
            raise ValueError('a trajectory problem needs at least one stage')
        self.stages = list(stages)
        self.terminal = terminal
        self.x0_bar = np.asarray(x0_bar, dtype=float)
        if self.x0_bar.shape != (self.stages[0].nx,):
            raise ValueError(f'x0_bar has shape {self.x0_bar.shape}, expected ({self.stages[0].nx},)')
        for index, (stage, following) in enumerate(zip(self.stages, self.stages[1:] + [terminal])):
            if stage.nx_next != following.nx:
                raise ValueError(f'stage {index} maps to dimension {stage.nx_next}, '
                                 f'but the next node has dimension {following.nx}')

    @property
    def horizon(self) -> int:
        """Number of stages N"""
        return len(self.stages)

    @property
    def state_dims(self) -> typing.List[int]:
        """nx of every node 0..N"""
        return [stage.nx for stage in self.stages] + [self.terminal.nx]

    @property
    def control_dims(self) -> typing.List[int]:
        """nu of every stage 0..N-1"""
        return [stage.nu for stage in self.stages]

    @property
    def constraint_dims(self) -> typing.List[int]:
        """nh of every node 0..N"""
        return [stage.nh for stage in self.stages] + [self.terminal.nh]
