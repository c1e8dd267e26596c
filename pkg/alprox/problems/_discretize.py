# coding=utf-8
"""
Discretization of linear continuous-time dynamics
"""
import typing

import numpy as np
import scipy.linalg

SCHEMES = ('zoh', 'euler')


def discretize_rotational(a_c, c_cont, dt: float, scheme: str = 'zoh',
                          b_c=None) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Discretizes ẋ = A_c·x + B_c·u + c

    "zoh" holds u constant over the step and integrates exactly through the matrix exponential of
    the augmented generator; "euler" uses A = I + dt·A_c, B = dt·B_c, c = dt·c.

    Args:
        a_c: continuous-time state matrix
        c_cont: continuous-time drift
        dt: time step
        scheme: "zoh" or "euler"
        b_c: continuous-time input matrix (identity when None)

    Returns: discrete (A, B, c)
    """
    if dt <= 0:
        raise ValueError(f'dt must be positive, got {dt}')
    a_c = np.atleast_2d(np.asarray(a_c, dtype=float))
    nx = a_c.shape[0]
    if a_c.shape != (nx, nx):
        raise ValueError(f'A_c must be square, got {a_c.shape}')
    b_c = np.eye(nx) if b_c is None else np.atleast_2d(np.asarray(b_c, dtype=float))
    c_cont = np.asarray(c_cont, dtype=float).reshape(-1)
    if b_c.shape[0] != nx or c_cont.shape != (nx,):
        raise ValueError(f'B_c {b_c.shape} and c {c_cont.shape} do not match A_c {a_c.shape}')
    nu = b_c.shape[1]

    if scheme == 'euler':
        return np.eye(nx) + dt * a_c, dt * b_c, dt * c_cont
    if scheme != 'zoh':
        raise ValueError(f'unknown discretization scheme {scheme!r}; expected one of {", ".join(SCHEMES)}')

    generator = np.zeros((nx + nu + 1, nx + nu + 1))
    generator[:nx, :nx] = a_c
    generator[:nx, nx:nx + nu] = b_c
    generator[:nx, -1] = c_cont
    flow = scipy.linalg.expm(dt * generator)
    return flow[:nx, :nx], flow[:nx, nx:nx + nu], flow[:nx, -1]
