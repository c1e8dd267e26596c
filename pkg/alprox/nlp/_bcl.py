# coding=utf-8
"""
Bound-constrained Lagrangian outer update
"""
import logging
import typing

import numpy as np

from ._merit import positive_part
from ._params import BclParams, PenaltyState
from ._problem import NlpProblem
from ._residuals import shifted_multipliers

LOGGER = logging.getLogger('alprox')


def bcl_update(pen: PenaltyState, bcl: BclParams, eta_next: float) -> typing.Tuple[PenaltyState, bool]:
    """
    Chooses the BCL branch from the new primal infeasibility

    accepted (η < ε_l): ε ← ε_l·μ_i^β, ω ← ω_l·μ_i, penalties unchanged;
    rejected: μ ← max(floor, μ_f·μ), ε ← ε_0·μ_i^α, ω ← ω_0·μ_i with the new μ_i.
    Tolerances never go below eps_abs (ε) and 0.1·eps_abs (ω).

    :return: (new penalty state, True if the multipliers should be updated)
    """
    if eta_next < pen.eps_l:
        new_pen = pen.replace(
            eps_l=max(pen.eps_l * pen.mu_i ** bcl.beta_bcl, bcl.eps_abs),
            omega_l=max(pen.omega_l * pen.mu_i, bcl.omega_floor),
            eta_l=eta_next,
        )
        LOGGER.info('BCL accept: eta=%s < eps=%s', eta_next, pen.eps_l)
        return new_pen, True

    mu_i = max(bcl.mu_i_floor, bcl.mu_f * pen.mu_i)
    new_pen = pen.replace(
        mu_e=max(bcl.mu_e_floor, bcl.mu_f * pen.mu_e),
        mu_i=mu_i,
        eps_l=max(bcl.eps0 * mu_i ** bcl.alpha_bcl, bcl.eps_abs),
        omega_l=max(bcl.omega0 * mu_i, bcl.omega_floor),
        eta_l=eta_next,
    )
    LOGGER.info('BCL reject: eta=%s >= eps=%s, mu_e=%s, mu_i=%s', eta_next, pen.eps_l, new_pen.mu_e, new_pen.mu_i)
    return new_pen, False


def multiplier_update(prob: NlpProblem, x_new, lam_tilde, nu_tilde, lam_l, nu_l,
                      mu_e: float, mu_i: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    λ ← 2λ̂(x_new, λ_l) − λ̃ and ν ← [2ν̂(x_new, ν_l) − ν̃]+
    """
    lam_hat, nu_hat = shifted_multipliers(prob, x_new, lam_l, nu_l, mu_e, mu_i)
    return 2.0 * lam_hat - lam_tilde, positive_part(2.0 * nu_hat - nu_tilde)
