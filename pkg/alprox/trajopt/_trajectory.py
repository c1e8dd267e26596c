# coding=utf-8
"""
Primal-dual trajectory
"""
import dataclasses
import typing

import numpy as np

from ._model import TrajOptProblem

Arrays = typing.List[np.ndarray]


def _copy(arrays: Arrays) -> Arrays:
    return [np.array(array, dtype=float) for array in arrays]


@dataclasses.dataclass
class Trajectory:
    """
    States x_0..x_N, controls u_0..u_{N-1}, co-states λ_0..λ_N and path multipliers ν_0..ν_N

    λ_0 belongs to x_0 = x̄_0 and λ_{k+1} to f_k; ν_k belongs to h_k and ν_N to h_N.
    """
    xs: Arrays
    us: Arrays
    lams: Arrays
    nus: Arrays

    @classmethod
    def initial(cls, problem: TrajOptProblem, xs: typing.Optional[typing.Sequence] = None,
                us: typing.Optional[typing.Sequence] = None) -> 'Trajectory':
        """
        Default starting point: x̄_0 copied across the horizon, zero controls, zero multipliers

        :param problem: problem
        :param xs: states to use instead of copies of x̄_0
        :param us: controls to use instead of zeros
        """
        if xs is None:
            if len(set(problem.state_dims)) != 1:
                raise ValueError('states must be given when node dimensions differ')
            xs = [problem.x0_bar] * (problem.horizon + 1)
        if us is None:
            us = [np.zeros(nu) for nu in problem.control_dims]
        traj = cls(
            _copy(xs),
            _copy(us),
            [np.zeros(nx) for nx in problem.state_dims],
            [np.zeros(nh) for nh in problem.constraint_dims],
        )
        traj.check(problem)
        return traj

    def check(self, problem: TrajOptProblem) -> None:
        """
        Raises ValueError if the dimensions do not chain with the problem
        """
        expected = (
            ('xs', self.xs, problem.state_dims),
            ('us', self.us, problem.control_dims),
            ('lams', self.lams, problem.state_dims),
            ('nus', self.nus, problem.constraint_dims),
        )
        for name, arrays, dims in expected:
            if len(arrays) != len(dims):
                raise ValueError(f'{name} has {len(arrays)} entries, expected {len(dims)}')
            for index, (array, dim) in enumerate(zip(arrays, dims)):
                if np.shape(array) != (dim,):
                    raise ValueError(f'{name}[{index}] has shape {np.shape(array)}, expected ({dim},)')

    def copy(self) -> 'Trajectory':
        """Deep copy"""
        return Trajectory(_copy(self.xs), _copy(self.us), _copy(self.lams), _copy(self.nus))

    def axpy(self, alpha: float, direction: 'Trajectory') -> 'Trajectory':
        """
        :return: self + α·direction, every block scaled by the same α
        """
        def _combine(left, right):
            return [a + alpha * b for a, b in zip(left, right)]

        return Trajectory(
            _combine(self.xs, direction.xs),
            _combine(self.us, direction.us),
            _combine(self.lams, direction.lams),
            _combine(self.nus, direction.nus),
        )

    def with_multipliers(self, lams: Arrays, nus: Arrays) -> 'Trajectory':
        """Copy with the multipliers replaced"""
        return Trajectory(_copy(self.xs), _copy(self.us), _copy(lams), _copy(nus))

    def projected(self) -> 'Trajectory':
        """Copy with ν replaced by [ν]+"""
        return Trajectory(_copy(self.xs), _copy(self.us), _copy(self.lams),
                          [np.maximum(nu, 0.0) for nu in self.nus])

    @property
    def states(self) -> np.ndarray:
        """xs as an (N+1, nx) array (uniform state dimension)"""
        return np.vstack(self.xs)

    @property
    def controls(self) -> np.ndarray:
        """us as an (N, nu) array (uniform control dimension)"""
        return np.vstack(self.us)
