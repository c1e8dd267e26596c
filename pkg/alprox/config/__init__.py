# coding=utf-8
"""
Manages Config
"""

from .alprox_config import AlproxConfig
from .config import BaseConfig
from .parsers import parse_array, parse_float, parse_log_level
from .problem_file import ProblemConfigFile
from .property import ConfigProp
