# coding=utf-8
"""
Armijo backtracking

The merit is piecewise smooth along a direction: an inequality row changes pieces where its
shifted value h + μ_i·ν_l crosses zero. Those step lengths are tried alongside the powers of
the backtracking factor, so that a step can stop exactly on the row it activates instead of
creeping towards it.
"""
import logging
import math
import typing

import numpy as np

from ._params import LineSearchParams

LOGGER = logging.getLogger('alprox')

ACTIVATION_MARGIN = 1e-9


def activation_steps(shifted: np.ndarray, d_shifted: np.ndarray) -> np.ndarray:
    """
    Step lengths where inactive rows of s + α·ds become active, nudged past the crossing by a
    relative ACTIVATION_MARGIN so the row is in the active set at the trial point

    :param shifted: s = h + μ_i·ν_l at the current point
    :param d_shifted: first-order change of s along the direction
    """
    shifted = np.asarray(shifted, dtype=float).reshape(-1)
    d_shifted = np.asarray(d_shifted, dtype=float).reshape(-1)
    entering = (shifted < 0.0) & (d_shifted > 0.0)
    return -shifted[entering] / d_shifted[entering] * (1.0 + ACTIVATION_MARGIN)


def trial_steps(params: LineSearchParams, breakpoints: typing.Iterable[float] = ()) -> typing.List[float]:
    """
    Step lengths in decreasing order: 1, t, t², ... down to alpha_min, merged with the breakpoints
    inside (alpha_min, 1)

    Between two consecutive powers of t only the largest and the smallest breakpoint are kept.
    """
    powers = []
    alpha = 1.0
    while alpha >= params.alpha_min:
        powers.append(alpha)
        alpha *= params.backtrack_factor

    kept: typing.Dict[int, typing.List[float]] = {}
    for point in breakpoints:
        point = float(point)
        if not params.alpha_min <= point < 1.0:
            continue
        # index of the power just above the breakpoint
        slot = int(math.floor(math.log(point) / math.log(params.backtrack_factor)))
        bucket = kept.setdefault(slot, [point, point])
        bucket[0], bucket[1] = min(bucket[0], point), max(bucket[1], point)

    extra = {point for bucket in kept.values() for point in bucket}
    return sorted(set(powers) | extra, reverse=True)


def armijo_backtrack(phi: typing.Callable[[float], float], phi0: float, slope: float,
                     params: LineSearchParams,
                     breakpoints: typing.Iterable[float] = ()) -> typing.Tuple[typing.Optional[float], float]:
    """
    Tries the `trial_steps` in decreasing order and accepts the first α with
    φ(α) ≤ φ(0) + c1·α·φ′(0)

    Non-finite values of φ are rejected.

    :param phi: merit along the direction
    :param phi0: φ(0)
    :param slope: φ′(0), expected negative
    :param params: line-search constants
    :param breakpoints: step lengths where the merit changes pieces
    :return: (α, φ(α)), or (None, φ(0)) when no step above alpha_min passes
    """
    slack = params.roundoff * max(1.0, abs(phi0))
    for alpha in trial_steps(params, breakpoints):
        value = phi(alpha)
        if math.isfinite(value) and value - phi0 <= params.c1 * alpha * slope + slack:
            return alpha, value
        LOGGER.debug('backtracking: alpha=%s, merit=%s, target=%s', alpha, value, phi0 + params.c1 * alpha * slope)
    LOGGER.warning('line search failed: no step above alpha_min=%s', params.alpha_min)
    return None, phi0
