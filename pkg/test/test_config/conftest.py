# coding=utf-8

import pytest

from alprox.config import BaseConfig, ConfigProp, parse_float, parse_log_level


class DummyConfig(BaseConfig):
    """Dummy test class for Config"""

    verbose = ConfigProp(parse_log_level, 'warning')
    tol = ConfigProp(parse_float, '1e-6')
    max_outer = ConfigProp(int, '100')
    name = ConfigProp(str, '')
    solver_hessian = ConfigProp(str, namespace='solver')
    no_default = ConfigProp(str)


@pytest.fixture()
def dummy_config():
    def make_dummy_config(*args, **kwargs):
        if args or kwargs:
            return DummyConfig(*args, **kwargs)

        return DummyConfig

    yield make_dummy_config


@pytest.fixture()
def write_file():
    def _write(name: str, text: str):
        with open(name, 'w') as stream:
            stream.write(text)
        return name

    yield _write
