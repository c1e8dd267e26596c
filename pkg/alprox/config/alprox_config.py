# coding=utf-8
"""
Runner configuration
"""

from .config import BaseConfig
from .parsers import parse_log_level
from .property import ConfigProp


class AlproxConfig(BaseConfig):
    """
    Runner settings; every key can be set as ALPROX_<KEY> in the environment or a ".env" file
    """

    alprox_log = ConfigProp(parse_log_level, 'warning', namespace='alprox')
    alprox_max_outer = ConfigProp(int, '100', namespace='alprox')
    alprox_max_inner = ConfigProp(int, '100', namespace='alprox')
