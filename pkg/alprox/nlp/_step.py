# coding=utf-8
"""
Semi-smooth primal-dual Newton step
"""
import logging
import typing

import numpy as np

from alprox.kkt import InertiaRecord, Regularizer, SaddleSystem, regularize_until_correct

from ._merit import equality_estimate, inequality_active, inequality_estimate
from ._params import ActiveSet, PenaltyState
from ._problem import HessianMode, NlpIterate, NlpProblem

LOGGER = logging.getLogger('alprox')


class NewtonStep(typing.NamedTuple):
    """
    Primal-dual direction; `dnu` covers every inequality row
    """
    dx: np.ndarray
    dlam: np.ndarray
    dnu: np.ndarray
    active: ActiveSet
    inertia: InertiaRecord

    @property
    def stacked(self) -> np.ndarray:
        """(dx, dλ, dν) as one vector"""
        return np.concatenate([self.dx, self.dlam, self.dnu])


def pd_newton_step(prob: NlpProblem, x, lam, nu, iterate_center: NlpIterate, pen: PenaltyState,
                   hess_mode: HessianMode = HessianMode.GAUSS_NEWTON,
                   regularizer: typing.Optional[Regularizer] = None,
                   min_delta: float = 0.0) -> NewtonStep:
    """
    Solves::

        [ H + ρI   J_cᵀ    J_Aᵀ  ] [dx  ]     [ ∇f + J_cᵀλ + J_Aᵀν_A + ρ(x − x_l) ]
        [ J_c     −μ_e·I   0     ] [dλ  ] = − [ c + μ_e(λ_l − λ)                 ]
        [ J_A      0      −μ_i·I ] [dν_A]     [ h_A + μ_i(ν_l − ν)_A             ]

    where A is the shifted active set at x; inactive rows get dν_j = −ν_j.
    In exact mode H = ∇²ₓL(x, 2λ̂ − λ, 2ν̂ − ν restricted to A).

    Raises:
        InertiaCorrectionError: the primal regularization needed exceeds its maximum
    """
    prob.check_point(x, lam, nu)
    lam_l, nu_l, x_l = iterate_center.lam, iterate_center.nu, iterate_center.prox_center
    c, h = prob.c(x), prob.h(x)
    jac_c, jac_h = prob.jac_c(x), prob.jac_h(x)
    mask = inequality_active(h, nu_l, pen.mu_i)

    hess_lam = 2.0 * equality_estimate(c, lam_l, pen.mu_e) - lam
    hess_nu = np.where(mask, 2.0 * inequality_estimate(h, nu_l, pen.mu_i) - nu, 0.0)
    hess = prob.lag_hess(x, hess_lam, hess_nu, hess_mode) + pen.rho * np.eye(prob.n)

    jac_a = jac_h[mask]
    rhs = -np.concatenate([
        prob.grad_f(x) + jac_c.T @ lam + jac_a.T @ nu[mask] + pen.rho * (x - x_l),
        c + pen.mu_e * (lam_l - lam),
        h[mask] + pen.mu_i * (nu_l - nu)[mask],
    ])
    system = SaddleSystem(hess, jac_c, jac_a, pen.mu_e, pen.mu_i, rhs)
    _, solution, record = regularize_until_correct(system, regularizer=regularizer, min_delta=min_delta)

    dx = solution[:prob.n]
    dlam = solution[prob.n:prob.n + prob.ne]
    dnu = -np.asarray(nu, dtype=float).copy()
    dnu[mask] = solution[prob.n + prob.ne:]
    LOGGER.debug('newton step: |dx|=%s, active=%s, delta=%s', np.linalg.norm(dx), int(mask.sum()), record.delta)
    return NewtonStep(dx, dlam, dnu, ActiveSet.from_mask(mask), record)
