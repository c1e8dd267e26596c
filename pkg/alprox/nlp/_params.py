# coding=utf-8
"""
Penalty state and solver hyper-parameters
"""
import dataclasses
import math
import typing

import numpy as np


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


@dataclasses.dataclass(frozen=True)
class PenaltyState:
    """
    Penalty step-sizes and tolerances of the current outer iteration

    Args:
        mu_e: equality penalty step-size
        mu_i: inequality penalty step-size
        rho: proximal weight (0 disables the proximal term)
        omega_l: inner tolerance on ‖r_l‖∞
        eps_l: primal feasibility tolerance of the BCL test
        eta_l: last primal infeasibility
    """
    mu_e: float
    mu_i: float
    rho: float
    omega_l: float
    eps_l: float
    eta_l: float = math.inf

    def __post_init__(self):
        _require(self.mu_e > 0, f'mu_e must be positive, got {self.mu_e}')
        _require(self.mu_i > 0, f'mu_i must be positive, got {self.mu_i}')
        _require(self.rho >= 0, f'rho must be non-negative, got {self.rho}')
        _require(self.omega_l > 0, f'omega_l must be positive, got {self.omega_l}')
        _require(self.eps_l > 0, f'eps_l must be positive, got {self.eps_l}')

    def replace(self, **changes) -> 'PenaltyState':
        """Copy with some fields changed"""
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class BclParams:
    """
    Bound-constrained Lagrangian schedule

    Penalties are step-sizes (small means stiff): μ_e = 1e-2 is a penalty weight of 100.
    """
    mu_f: float = 0.1
    alpha_bcl: float = 0.1
    beta_bcl: float = 0.9
    mu_e_floor: float = 1e-9
    mu_i_floor: float = 1e-9
    eps_abs: float = 1e-6
    omega0: float = 1.0
    eps0: float = 1.0
    max_outer_iters: int = 100
    max_inner_iters: int = 100
    mu_e0: float = 1e-2
    mu_i0: float = 1e-2
    rho0: float = 1e-6

    def __post_init__(self):
        _require(0 < self.mu_f < 1, f'mu_f must be in (0, 1), got {self.mu_f}')
        _require(0 < self.alpha_bcl < 1, f'alpha_bcl must be in (0, 1), got {self.alpha_bcl}')
        _require(0 < self.beta_bcl < 1, f'beta_bcl must be in (0, 1), got {self.beta_bcl}')
        for name in ('mu_e_floor', 'mu_i_floor', 'eps_abs', 'omega0', 'eps0', 'mu_e0', 'mu_i0'):
            _require(getattr(self, name) > 0, f'{name} must be positive, got {getattr(self, name)}')
        _require(self.rho0 >= 0, f'rho0 must be non-negative, got {self.rho0}')
        _require(self.max_outer_iters > 0, f'max_outer_iters must be positive, got {self.max_outer_iters}')
        _require(self.max_inner_iters > 0, f'max_inner_iters must be positive, got {self.max_inner_iters}')

    @property
    def omega_floor(self) -> float:
        """Smallest inner tolerance"""
        return 0.1 * self.eps_abs

    def initial_penalty(self, eta0: float = math.inf) -> PenaltyState:
        """
        :param eta0: primal infeasibility at the initial point
        :return: the penalty state of the first outer iteration
        """
        return PenaltyState(
            mu_e=max(self.mu_e0, self.mu_e_floor),
            mu_i=max(self.mu_i0, self.mu_i_floor),
            rho=self.rho0,
            omega_l=max(self.omega0, self.omega_floor),
            eps_l=max(self.eps0, self.eps_abs),
            eta_l=eta0,
        )

    def replace(self, **changes) -> 'BclParams':
        """Copy with some fields changed"""
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class LineSearchParams:
    """
    Armijo backtracking: accept the first α = tᵏ with φ(α) ≤ φ(0) + c1·α·φ′(0)

    `roundoff` is a relative slack on the test, absorbing rounding errors of the merit evaluation
    once the predicted decrease is below machine precision.
    """
    c1: float = 1e-4
    backtrack_factor: float = 0.5
    alpha_min: float = 1e-7
    roundoff: float = 1e-13

    def __post_init__(self):
        _require(0 < self.c1 < 1, f'c1 must be in (0, 1), got {self.c1}')
        _require(0 < self.backtrack_factor < 1, f'backtrack_factor must be in (0, 1), got {self.backtrack_factor}')
        _require(self.alpha_min > 0, f'alpha_min must be positive, got {self.alpha_min}')
        _require(self.roundoff >= 0, f'roundoff must be non-negative, got {self.roundoff}')


@dataclasses.dataclass(frozen=True)
class ActiveSet:
    """
    Shifted active set: rows j with ν_l,j + h_j(x)/μ_i ≥ 0, sorted ascending
    """
    indices: typing.Tuple[int, ...]
    size: int

    def __post_init__(self):
        indices = tuple(int(index) for index in self.indices)
        if list(indices) != sorted(set(indices)):
            raise ValueError(f'active indices must be sorted and unique: {indices}')
        if indices and (indices[0] < 0 or indices[-1] >= self.size):
            raise ValueError(f'active indices out of range [0, {self.size}): {indices}')
        object.__setattr__(self, 'indices', indices)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> 'ActiveSet':
        """Builds the set from a boolean mask"""
        mask = np.asarray(mask, dtype=bool)
        return cls(tuple(np.flatnonzero(mask)), mask.size)

    @property
    def mask(self) -> np.ndarray:
        """Boolean mask of the active rows"""
        mask = np.zeros(self.size, dtype=bool)
        mask[list(self.indices)] = True
        return mask

    def __len__(self):
        return len(self.indices)

    def __contains__(self, item):
        return item in self.indices

    def __iter__(self):
        return iter(self.indices)
