# coding=utf-8
"""
Primal-dual augmented Lagrangian solvers for nonlinear programs and trajectory optimization
"""

from pkg_resources import DistributionNotFound, get_distribution

# noinspection PyUnresolvedReferences
from . import config, console, kkt, nlp, output, problems, random_problems, settings, trace, trajopt

try:
    __version__ = get_distribution('alprox').version
except DistributionNotFound:  # pragma: no cover
    # package is not installed
    __version__ = 'not installed'
