# coding=utf-8
"""
Problem configurations read from files

Bound LQR and obstacle LQR keys::

    a_c, b_c, c, dt, n, q, r, qn, u_bar, x0, scheme (zoh|euler)
    obstacle_c, obstacle_d

Car parking keys::

    d_axle, dt, t, a_max, w_max, x0, w_state, w_control, w_terminal

Absent keys take the value of the built-in scenario.
"""
import logging
import typing
from pathlib import Path

import numpy as np

from alprox.config import ProblemConfigFile

from ._car import CarParkConfig
from ._discretize import SCHEMES
from ._lqr import ROTATION_DRIFT, ROTATION_GENERATOR, BoundLqrConfig
from ._obstacle import PolyhedralObstacle

LOGGER = logging.getLogger('alprox')

PathLike = typing.Union[str, Path]


def _as_file(source: typing.Union[PathLike, ProblemConfigFile]) -> ProblemConfigFile:
    if isinstance(source, ProblemConfigFile):
        return source
    return ProblemConfigFile(source)


def load_bound_lqr_config(source: typing.Union[PathLike, ProblemConfigFile],
                          a_c=ROTATION_GENERATOR, c=ROTATION_DRIFT, x0=(0.5, 0.5),
                          u_bar=0.4, dt: float = 0.05, n: int = 60) -> BoundLqrConfig:
    """
    Reads a bound LQR configuration

    :param source: configuration file (path or opened file)
    :param a_c: continuous-time state matrix used when the file has no "a_c"
    :param c: drift used when the file has no "c"
    :param x0: initial state used when the file has no "x0"
    :param u_bar: bound used when the file has no "u_bar"
    :param dt: time step used when the file has no "dt"
    :param n: horizon used when the file has no "n"
    :raises ValueError: invalid values
    """
    cfg_file = _as_file(source)
    generator = cfg_file.array('a_c', default=a_c)
    scheme = cfg_file.text('scheme', default='zoh').lower()
    if scheme not in SCHEMES:
        raise ValueError(f'unknown discretization scheme {scheme!r}; expected one of {", ".join(SCHEMES)}')
    cfg = BoundLqrConfig.from_continuous(
        generator,
        cfg_file.array('c', default=c),
        dt=cfg_file.number('dt', default=dt),
        N=cfg_file.integer('n', default=n),
        scheme=scheme,
        b_c=cfg_file.array('b_c', default=np.eye(np.atleast_2d(generator).shape[0])),
        Q=cfg_file.array('q', default=1e-2),
        R=cfg_file.array('r', default=1e-2),
        QN=cfg_file.array('qn', default=100.0),
        u_bar=cfg_file.array('u_bar', default=u_bar),
        x0=cfg_file.array('x0', default=x0),
    )
    LOGGER.info('loaded bound LQR config from %s', cfg_file.path)
    return cfg


def load_obstacles(source: typing.Union[PathLike, ProblemConfigFile],
                   default: typing.Sequence[PolyhedralObstacle] = ()) -> typing.List[PolyhedralObstacle]:
    """
    Reads the obstacle given by "obstacle_c" and "obstacle_d"

    :param source: configuration file (path or opened file)
    :param default: obstacles returned when the file defines none
    """
    cfg_file = _as_file(source)
    if not cfg_file.has('obstacle_c') and not cfg_file.has('obstacle_d'):
        return list(default)
    return [PolyhedralObstacle(cfg_file.array('obstacle_c'), cfg_file.array('obstacle_d'))]


def load_car_park_config(source: typing.Union[PathLike, ProblemConfigFile]) -> CarParkConfig:
    """
    Reads a car parking configuration
    """
    cfg_file = _as_file(source)
    base = CarParkConfig()
    cfg = CarParkConfig(
        d_axle=cfg_file.number('d_axle', default=base.d_axle),
        dt=cfg_file.number('dt', default=base.dt),
        T=cfg_file.number('t', default=base.T),
        a_max=cfg_file.number('a_max', default=base.a_max),
        w_max=cfg_file.number('w_max', default=base.w_max),
        x0=cfg_file.array('x0', default=base.x0),
        w_state=cfg_file.array('w_state', default=base.w_state),
        w_control=cfg_file.array('w_control', default=base.w_control),
        w_terminal=cfg_file.array('w_terminal', default=base.w_terminal),
    )
    LOGGER.info('loaded car parking config from %s', cfg_file.path)
    return cfg
