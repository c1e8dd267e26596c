# coding=utf-8
"""
Lagrangian, residuals and merit function of a generic NLP
"""
import typing

import numpy as np

from ._merit import (
    equality_estimate, equality_merit, equality_merit_grad, inequality_active, inequality_estimate,
    inequality_merit, inequality_merit_grad, inf_norm, negative_part, positive_part,
)
from ._params import ActiveSet, PenaltyState
from ._problem import NlpIterate, NlpProblem


def lagrangian(prob: NlpProblem, x, lam, nu) -> float:
    """
    f(x) + λᵀc(x) + νᵀh(x)
    """
    prob.check_point(x, lam, nu)
    return prob.f(x) + float(lam @ prob.c(x)) + float(nu @ prob.h(x))


def lagrangian_gradient(prob: NlpProblem, x, lam, nu) -> np.ndarray:
    """
    ∇f(x) + J_c(x)ᵀλ + J_h(x)ᵀν
    """
    prob.check_point(x, lam, nu)
    return prob.grad_f(x) + prob.jac_c(x).T @ lam + prob.jac_h(x).T @ nu


def primal_infeasibility(prob: NlpProblem, x) -> float:
    """
    ‖(c(x), [h(x)]+)‖∞
    """
    prob.check_point(x)
    return inf_norm(prob.c(x), positive_part(prob.h(x)))


def complementarity(prob: NlpProblem, x, nu) -> float:
    """
    max_j |ν_j·h_j(x)| / (1 + |ν_j|)
    """
    prob.check_point(x, nu=nu)
    return inf_norm(nu * prob.h(x) / (1.0 + np.abs(nu)))


def kkt_residuals(prob: NlpProblem, x, lam, nu) -> typing.Tuple[float, float]:
    """
    :return: (‖∇ₓL(x, λ, ν)‖∞, primal infeasibility)
    """
    return inf_norm(lagrangian_gradient(prob, x, lam, nu)), primal_infeasibility(prob, x)


def shifted_multipliers(prob: NlpProblem, x, lam_l, nu_l,
                        mu_e: float, mu_i: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    :return: (λ̂, ν̂) = (λ_l + c(x)/μ_e, [ν_l + h(x)/μ_i]+)
    """
    if mu_e <= 0 or mu_i <= 0:
        raise ValueError(f'penalties must be positive, got mu_e={mu_e}, mu_i={mu_i}')
    prob.check_point(x, lam_l, nu_l)
    return equality_estimate(prob.c(x), lam_l, mu_e), inequality_estimate(prob.h(x), nu_l, mu_i)


def shifted_slack(prob: NlpProblem, x, nu_l, mu_i: float) -> np.ndarray:
    """
    ẑ = [h(x) + μ_i·ν_l]-, the closed-form minimizing slack (always ≤ 0)
    """
    if mu_i <= 0:
        raise ValueError(f'mu_i must be positive, got {mu_i}')
    prob.check_point(x, nu=nu_l)
    return negative_part(prob.h(x) + mu_i * nu_l)


def active_set(prob: NlpProblem, x, nu_l, mu_i: float) -> ActiveSet:
    """
    Rows with ν_l,j + h_j(x)/μ_i ≥ 0 (ties are active)
    """
    if mu_i <= 0:
        raise ValueError(f'mu_i must be positive, got {mu_i}')
    prob.check_point(x, nu=nu_l)
    return ActiveSet.from_mask(inequality_active(prob.h(x), nu_l, mu_i))


def merit_value(prob: NlpProblem, x, lam, nu, iterate_center: NlpIterate, pen: PenaltyState) -> float:
    """
    Proximal primal-dual augmented Lagrangian

    :param prob: problem
    :param x: primal point
    :param lam: equality multipliers
    :param nu: inequality multipliers
    :param iterate_center: estimates (λ_l, ν_l) and proximal center x_l
    :param pen: penalty state
    """
    prob.check_point(x, lam, nu)
    dist = x - iterate_center.prox_center
    return (
        prob.f(x)
        + equality_merit(prob.c(x), lam, iterate_center.lam, pen.mu_e)
        + inequality_merit(prob.h(x), nu, iterate_center.nu, pen.mu_i)
        + 0.5 * pen.rho * float(dist @ dist)
    )


def merit_gradient(prob: NlpProblem, x, lam, nu, iterate_center: NlpIterate, pen: PenaltyState) -> np.ndarray:
    """
    Gradient of `merit_value` with respect to (x, λ, ν), stacked

    The λ block is μ_e·(λ − λ̂) and the ν block μ_i·(ν − ν̂).
    """
    prob.check_point(x, lam, nu)
    grad_c, grad_lam = equality_merit_grad(prob.c(x), lam, iterate_center.lam, pen.mu_e)
    grad_h, grad_nu = inequality_merit_grad(prob.h(x), nu, iterate_center.nu, pen.mu_i)
    grad_x = (
        prob.grad_f(x)
        + prob.jac_c(x).T @ grad_c
        + prob.jac_h(x).T @ grad_h
        + pen.rho * (x - iterate_center.prox_center)
    )
    return np.concatenate([grad_x, grad_lam, grad_nu])


def rl_residual(prob: NlpProblem, x, lam, nu, iterate_center: NlpIterate,
                pen: PenaltyState) -> typing.Tuple[np.ndarray, float]:
    """
    Inner-loop optimality measure

    :return: (stacked (∇ₓL + ρ(x − x_l); μ_e(λ̂ − λ); μ_i(ν̂ − ν)), its ∞-norm)
    """
    lam_hat, nu_hat = shifted_multipliers(prob, x, iterate_center.lam, iterate_center.nu, pen.mu_e, pen.mu_i)
    residual = np.concatenate([
        lagrangian_gradient(prob, x, lam, nu) + pen.rho * (x - iterate_center.prox_center),
        pen.mu_e * (lam_hat - lam),
        pen.mu_i * (nu_hat - nu),
    ])
    return residual, inf_norm(residual)
