# coding=utf-8
"""
Layered configuration
"""
# pylint: disable=too-few-public-methods

import os
import typing

import everett
import everett.ext.inifile
import everett.manager

from .yaml_config import YAMLConfig


def _candidate_paths(package_name: str, env_var: str, *extensions: str) -> typing.List[str]:
    home = os.path.expanduser('~')
    paths = [os.environ.get(env_var)]
    paths.extend(os.path.join(home, f'{package_name}.{ext}') for ext in extensions)
    paths.extend(f'./{package_name}.{ext}' for ext in extensions)
    return [path for path in paths if path]


class BaseConfig:
    """
    Configuration resolved, in priority order, from a ".env" file, the OS environment,
    YAML files, INI files and finally a dictionary of defaults.
    """

    def __init__(self, package_name: str = 'alprox', default_dict: dict = None) -> None:
        if default_dict is None:
            default_dict = {}
        self.package_name = package_name
        upper = package_name.upper()
        self._config = everett.manager.ConfigManager(
            [
                everett.manager.ConfigEnvFileEnv('.env'),
                everett.manager.ConfigOSEnv(),
                YAMLConfig(_candidate_paths(package_name, f'{upper}_YAML', 'yml', 'yaml')),
                everett.ext.inifile.ConfigIniEnv(_candidate_paths(package_name, f'{upper}_INI', 'ini')),
                everett.manager.ConfigDictEnv(default_dict),
            ]
        )
