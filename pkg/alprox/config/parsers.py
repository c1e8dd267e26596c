# coding=utf-8
"""
Value parsers for configuration sources
"""
import logging

import numpy as np
import yaml

_LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
}


def parse_array(value) -> np.ndarray:
    """
    Parses a numeric array written in bracket syntax ("[[0, 2], [-2, 0]]")

    Values already decoded by the source (YAML lists, numbers) are accepted as well, and so are
    bracket expressions that an INI reader split on commas.

    :param value: raw value
    :return: float array
    """
    if isinstance(value, (list, tuple)) and any(isinstance(item, str) and ('[' in item or ']' in item)
                                                for item in value):
        value = ', '.join(str(item) for item in value)
    if isinstance(value, str):
        try:
            value = yaml.safe_load(value)
        except yaml.YAMLError as exc:
            raise ValueError(f'not an array: {value!r}') from exc
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f'not a numeric array: {value!r}') from exc


def parse_float(value) -> float:
    """
    Parses a decimal number ("1e-8", "0.03", "inf")
    """
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f'not a number: {value!r}') from exc


def parse_log_level(value) -> int:
    """
    Parses a verbosity name into a logging level
    """
    try:
        return _LOG_LEVELS[str(value).strip().lower()]
    except KeyError:
        raise ValueError(f'unknown log level {value!r}; expected one of {", ".join(_LOG_LEVELS)}')
