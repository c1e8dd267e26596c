# coding=utf-8
"""
YAML configuration source for everett

Nested mappings become namespaces: ``solver: {hessian: exact}`` answers the key "hessian" in the
"solver" namespace (flat key "SOLVER_HESSIAN").
"""
import collections.abc
import functools
import typing
from pathlib import Path

import everett.manager
import yaml


def update_nested_dict(target_dict: typing.MutableMapping,
                       source_dict: typing.Optional[typing.Mapping]) -> typing.MutableMapping:
    """
    Merges `source_dict` into `target_dict` in place, upper-casing keys; nested mappings merge
    recursively and scalar values replace.

    :return: target_dict
    """
    for key, value in (source_dict or {}).items():
        upper = str(key).upper()
        if isinstance(value, collections.abc.Mapping):
            value = update_nested_dict(target_dict.get(upper, {}), value)
        target_dict[upper] = value
    return target_dict


def flatten_dict(source_dict: typing.Mapping, parent_key: str = '', sep: str = '_') -> dict:
    """
    Joins nested keys with `sep`: {'A': {'B': 1}} gives {'A_B': 1}
    """
    flat: dict = {}
    for key, value in source_dict.items():
        full_key = f'{parent_key}{sep}{key}' if parent_key else key
        if isinstance(value, collections.abc.Mapping):
            flat.update(flatten_dict(value, full_key, sep))
        else:
            flat[full_key] = value
    return flat


def _existing(possible_paths) -> typing.Iterator[Path]:
    for path in everett.manager.listify(possible_paths):
        if path and str(path).strip():
            candidate = Path(str(path).strip()).expanduser().absolute()
            if candidate.is_file():
                yield candidate


class YAMLConfig:
    """
    Values read from YAML files; a later file overrides an earlier one and missing files are
    skipped
    """

    def __init__(self, possible_paths) -> None:
        documents = [self.parse_yaml_file(str(path)) for path in _existing(possible_paths)]
        self.cfg: dict = flatten_dict(functools.reduce(update_nested_dict, documents, {}))

    @staticmethod
    def parse_yaml_file(path: str) -> typing.Optional[typing.Mapping]:
        """
        :param path: YAML file
        :return: its mapping (None when the file is empty)
        :raises ValueError: the document is not a mapping
        """
        content = yaml.safe_load(Path(path).read_text(encoding='utf8'))
        if content is not None and not isinstance(content, collections.abc.Mapping):
            raise ValueError(f'not a key-value document: {path}')
        return content

    def get(self, key, namespace=None):
        """
        everett source protocol

        :return: the value, or everett's NO_VALUE
        """
        return everett.manager.get_key_from_envs(self.cfg, everett.manager.generate_uppercase_key(key, namespace))
