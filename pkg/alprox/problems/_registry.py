# coding=utf-8
"""
Named benchmark problems
"""
import logging
import typing
from pathlib import Path

import numpy as np

from alprox.trajopt import Trajectory, TrajOptProblem

from ._car import CarParkConfig, make_car_park
from ._configs import load_bound_lqr_config, load_car_park_config, load_obstacles
from ._lqr import UNSTABLE_GENERATOR, BoundLqrConfig, make_bound_lqr, make_obstacle_lqr, obstacle_scenario

LOGGER = logging.getLogger('alprox')

OptionalPath = typing.Optional[typing.Union[str, Path]]


class ProblemInstance(typing.NamedTuple):
    """
    A built problem with its starting trajectory and plotting metadata
    """
    problem: TrajOptProblem
    initial: Trajectory
    dt: float = 1.0
    u_lower: typing.Optional[np.ndarray] = None
    u_upper: typing.Optional[np.ndarray] = None


class ProblemEntry(typing.NamedTuple):
    """
    Registry entry

    `build(config_path, seed)` returns a ProblemInstance; `defaults` overrides run options
    (tol, mu0, mui0, rho0, hessian) for this problem.
    """
    name: str
    description: str
    build: typing.Callable[[OptionalPath, typing.Optional[int]], ProblemInstance]
    defaults: typing.Mapping[str, typing.Any]


def _bounded_instance(problem: TrajOptProblem, dt: float, u_bar: np.ndarray) -> ProblemInstance:
    return ProblemInstance(problem, Trajectory.initial(problem), dt, -u_bar, u_bar)


def _ignore_config(name: str, config_path: OptionalPath):
    if config_path is not None:
        LOGGER.warning('%s is randomized, ignoring config file %s', name, config_path)


def _build_lqr_rot(config_path: OptionalPath, _seed) -> ProblemInstance:
    cfg = load_bound_lqr_config(config_path) if config_path else BoundLqrConfig.rotational()
    return _bounded_instance(make_bound_lqr(cfg), cfg.dt, cfg.u_bar)


def _build_lqr_unstable(config_path: OptionalPath, _seed) -> ProblemInstance:
    if config_path:
        cfg = load_bound_lqr_config(config_path, a_c=UNSTABLE_GENERATOR)
    else:
        cfg = BoundLqrConfig.unstable()
    return _bounded_instance(make_bound_lqr(cfg), cfg.dt, cfg.u_bar)


def _build_lqr_obstacle(config_path: OptionalPath, _seed) -> ProblemInstance:
    cfg, obstacles = obstacle_scenario()
    if config_path:
        cfg = load_bound_lqr_config(config_path, a_c=np.zeros((2, 2)), c=np.zeros(2), x0=(-1.0, 0.3),
                                    u_bar=0.6, dt=0.05, n=40)
        obstacles = load_obstacles(config_path, default=obstacles)
    return _bounded_instance(make_obstacle_lqr(cfg, obstacles), cfg.dt, cfg.u_bar)


def _build_car_park(config_path: OptionalPath, _seed) -> ProblemInstance:
    cfg = load_car_park_config(config_path) if config_path else CarParkConfig()
    return _bounded_instance(make_car_park(cfg), cfg.dt, cfg.u_bar)


def _build_random_lqr(config_path: OptionalPath, seed: typing.Optional[int]) -> ProblemInstance:
    from alprox.random_problems import random_bound_lqr_config, rng_from_seed
    _ignore_config('random-lqr', config_path)
    cfg = random_bound_lqr_config(rng_from_seed(seed))
    return _bounded_instance(make_bound_lqr(cfg), cfg.dt, cfg.u_bar)


def _build_random_ocp(config_path: OptionalPath, seed: typing.Optional[int]) -> ProblemInstance:
    from alprox.random_problems import random_ocp, rng_from_seed
    _ignore_config('random-ocp', config_path)
    problem = random_ocp(rng_from_seed(seed))
    return ProblemInstance(problem, Trajectory.initial(problem))


REGISTRY: typing.Dict[str, ProblemEntry] = {
    entry.name: entry for entry in (
        ProblemEntry('lqr-rot', 'bound-constrained LQR on a rotating system, |u| <= 0.4',
                     _build_lqr_rot, {'tol': 1e-8}),
        ProblemEntry('lqr-unstable', 'bound-constrained LQR on an unstable spiral (bang-bang)',
                     _build_lqr_unstable, {'tol': 1e-8}),
        ProblemEntry('lqr-obstacle', 'single integrator steered around a rectangular obstacle',
                     _build_lqr_obstacle, {'tol': 1e-7}),
        ProblemEntry('car-park', 'kinematic car parking, dt=0.03 s over 15 s',
                     _build_car_park, {'tol': 2e-4, 'mu0': 100.0, 'rho0': 1e-5}),
        ProblemEntry('random-lqr', 'random small bound-constrained LQR (seeded)',
                     _build_random_lqr, {'tol': 1e-8}),
        ProblemEntry('random-ocp', 'random small convex OCP with path and terminal constraints (seeded)',
                     _build_random_ocp, {'tol': 1e-8, 'hessian': 'exact'}),
    )
}


def list_problems() -> typing.List[ProblemEntry]:
    """
    :return: registry entries in their fixed order
    """
    return list(REGISTRY.values())


def get_problem(name: str) -> ProblemEntry:
    """
    :param name: problem name
    :raises KeyError: unknown name
    """
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f'unknown problem {name!r}; known problems: {", ".join(REGISTRY)}')
