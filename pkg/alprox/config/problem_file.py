# coding=utf-8
"""
Problem configuration files
"""
import logging
import typing
from pathlib import Path

import everett
import everett.ext.inifile
import everett.manager
import numpy as np

from .parsers import parse_array, parse_float
from .yaml_config import YAMLConfig

LOGGER = logging.getLogger('alprox')

_YAML_SUFFIXES = ('.yml', '.yaml')


class ProblemConfigFile:
    """
    Flat key-value problem description stored in one INI file ("[main]" section) or YAML file.

    Numbers are decimal, arrays use bracket syntax:

        [main]
        dt = 0.05
        a_c = [[0, 2], [-2, 0]]
    """

    def __init__(self, path: typing.Union[str, Path]) -> None:
        self.path = Path(path).absolute()
        if not self.path.is_file():
            raise FileNotFoundError(str(self.path))
        if self.path.suffix.lower() in _YAML_SUFFIXES:
            source = YAMLConfig([str(self.path)])
        else:
            source = everett.ext.inifile.ConfigIniEnv([str(self.path)])
        LOGGER.debug('problem config: %s', self.path)
        self._config = everett.manager.ConfigManager([source])

    def _get(self, key: str, parser, default):
        if default is None:
            return self._config(key, parser=parser)
        return self._config(key, default=str(default), parser=parser)

    def number(self, key: str, default: typing.Optional[float] = None) -> float:
        """
        :param key: key name
        :param default: value used when the key is absent (required key when None)
        :return: float value
        """
        return self._get(key, parse_float, default)

    def integer(self, key: str, default: typing.Optional[int] = None) -> int:
        """
        :param key: key name
        :param default: value used when the key is absent (required key when None)
        :return: int value
        """
        return self._get(key, int, default)

    def array(self, key: str, default: typing.Optional[typing.Sequence] = None) -> np.ndarray:
        """
        :param key: key name
        :param default: value used when the key is absent (required key when None)
        :return: float array
        """
        if default is not None:
            default = np.asarray(default, dtype=float).tolist()
        return self._get(key, parse_array, default)

    def text(self, key: str, default: typing.Optional[str] = None) -> str:
        """
        :param key: key name
        :param default: value used when the key is absent (required key when None)
        :return: stripped string
        """
        return self._get(key, lambda value: str(value).strip(), default)

    def has(self, key: str) -> bool:
        """
        :param key: key name
        :return: True if the file defines the key
        """
        try:
            self._config(key, parser=str)
        except everett.ConfigurationMissingError:
            return False
        return True
