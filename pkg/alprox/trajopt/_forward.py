# coding=utf-8
"""
Linear rollout of the backward-pass gains
"""
import numpy as np

from ._backward import BackwardResult
from ._model import TrajOptProblem
from ._trajectory import Trajectory


def linear_rollout(problem: TrajOptProblem, traj: Trajectory, backward: BackwardResult) -> Trajectory:
    """
    Primal-dual direction from the affine policies

    δx_0, δλ_0 come from the initial block; then δu_k = k + K·δx_k, δx_{k+1} = a + A·δx_k,
    δλ_{k+1} = ξ + Ξ·δx_k and δν_k = ζ + Z·δx_k on the active rows, −ν_k elsewhere.
    """
    dx = backward.initial.dx
    dxs, dus, dnus = [dx], [], []
    dlams = [backward.initial.dlam]
    for k, gains in enumerate(backward.gains):
        dus.append(gains.k_ff + gains.K_fb @ dx)
        dlams.append(gains.xi_ff + gains.Xi_fb @ dx)
        dnu = -np.asarray(traj.nus[k], dtype=float).copy()
        dnu[gains.active] = gains.zeta_ff + gains.Z_fb @ dx
        dnus.append(dnu)
        dx = gains.a_ff + gains.A_fb @ dx
        dxs.append(dx)

    terminal = backward.terminal
    dnu = -np.asarray(traj.nus[-1], dtype=float).copy()
    dnu[terminal.active] = terminal.zeta_ff + terminal.Z_fb @ dx
    dnus.append(dnu)
    return Trajectory(dxs, dus, dlams, dnus)


def forward_linear_rollout(problem: TrajOptProblem, traj: Trajectory, backward: BackwardResult,
                           alpha: float) -> Trajectory:
    """
    :return: traj + α·direction, the same α for every block
    """
    return traj.axpy(alpha, linear_rollout(problem, traj, backward))
