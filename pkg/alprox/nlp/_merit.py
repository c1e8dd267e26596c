# coding=utf-8
"""
Primal-dual augmented Lagrangian terms for one constraint block

Equality block (values c, multiplier λ, estimate λ_l, step-size μ_e)::

    (‖c + μe·λl‖² + ‖c + μe·(λl − λ)‖²) / (2·μe)

Inequality block (values h, multiplier ν, estimate ν_l, step-size μ_i), with s = h + μi·νl::

    (‖[s]+‖² + ‖[s]+ − μi·ν‖²) / (2·μi)

These helpers are shared by the generic solver and the trajectory solver.
"""
import typing

import numpy as np


def positive_part(values: np.ndarray) -> np.ndarray:
    """[z]+ = max(z, 0) componentwise"""
    return np.maximum(values, 0.0)


def negative_part(values: np.ndarray) -> np.ndarray:
    """[z]- = min(z, 0) componentwise"""
    return np.minimum(values, 0.0)


def inf_norm(*blocks: np.ndarray) -> float:
    """∞-norm of the concatenation of the blocks (0 when all are empty)"""
    norm = 0.0
    for block in blocks:
        block = np.asarray(block)
        if block.size:
            norm = max(norm, float(np.max(np.abs(block))))
    return norm


def equality_estimate(c: np.ndarray, lam_l: np.ndarray, mu_e: float) -> np.ndarray:
    """π = λ_l + c/μ_e"""
    return lam_l + c / mu_e


def inequality_estimate(h: np.ndarray, nu_l: np.ndarray, mu_i: float) -> np.ndarray:
    """ν̂ = [ν_l + h/μ_i]+"""
    return positive_part(nu_l + h / mu_i)


def inequality_active(h: np.ndarray, nu_l: np.ndarray, mu_i: float) -> np.ndarray:
    """Mask of the shifted active set, boundary included"""
    return h + mu_i * nu_l >= 0.0


def equality_merit(c: np.ndarray, lam: np.ndarray, lam_l: np.ndarray, mu_e: float) -> float:
    """Equality penalty terms of the merit function"""
    if not c.size:
        return 0.0
    shifted = c + mu_e * lam_l
    return float(shifted @ shifted + (shifted - mu_e * lam) @ (shifted - mu_e * lam)) / (2.0 * mu_e)


def inequality_merit(h: np.ndarray, nu: np.ndarray, nu_l: np.ndarray, mu_i: float) -> float:
    """Inequality penalty terms of the merit function"""
    if not h.size:
        return 0.0
    projected = positive_part(h + mu_i * nu_l)
    return float(projected @ projected + (projected - mu_i * nu) @ (projected - mu_i * nu)) / (2.0 * mu_i)


def equality_merit_grad(c: np.ndarray, lam: np.ndarray, lam_l: np.ndarray,
                        mu_e: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    :return: (∂/∂c, ∂/∂λ) = (2π − λ, μ_e·(λ − π))
    """
    estimate = equality_estimate(c, lam_l, mu_e)
    return 2.0 * estimate - lam, mu_e * (lam - estimate)


def inequality_merit_grad(h: np.ndarray, nu: np.ndarray, nu_l: np.ndarray,
                          mu_i: float) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    :return: (∂/∂h, ∂/∂ν) = (D·(2ν̂ − ν), μ_i·(ν − ν̂)) where D selects the shifted active set
    """
    estimate = inequality_estimate(h, nu_l, mu_i)
    active = inequality_active(h, nu_l, mu_i)
    return np.where(active, 2.0 * estimate - nu, 0.0), mu_i * (nu - estimate)


def equality_merit_slope(c: np.ndarray, lam: np.ndarray, lam_l: np.ndarray, mu_e: float,
                         dc: np.ndarray, dlam: np.ndarray) -> float:
    """Directional derivative of the equality terms along (dc, dλ)"""
    if not c.size:
        return 0.0
    grad_c, grad_lam = equality_merit_grad(c, lam, lam_l, mu_e)
    return float(grad_c @ dc + grad_lam @ dlam)


def inequality_merit_slope(h: np.ndarray, nu: np.ndarray, nu_l: np.ndarray, mu_i: float,
                           dh: np.ndarray, dnu: np.ndarray) -> float:
    """Directional derivative of the inequality terms along (dh, dν), active set frozen"""
    if not h.size:
        return 0.0
    grad_h, grad_nu = inequality_merit_grad(h, nu, nu_l, mu_i)
    return float(grad_h @ dh + grad_nu @ dnu)
