# coding=utf-8
"""
Pytest config
"""
import logging
import os
from pathlib import Path

import pytest
from mockito import unstub

from alprox.settings import ALPROXSettings


@pytest.fixture(autouse=True)
def cleandir(request, tmp_path, monkeypatch):
    """Runs the test in an empty working directory unless it is marked "nocleandir" """
    if 'nocleandir' not in request.keywords:
        monkeypatch.chdir(tmp_path)
    return Path.cwd()


@pytest.fixture(autouse=True)
def _clean_os_env():
    snapshot = dict(os.environ)
    yield
    os.environ.clear()
    os.environ.update(snapshot)


@pytest.fixture(autouse=True)
def _unstub():
    unstub()
    yield
    unstub()


@pytest.fixture(autouse=True)
def _alprox_state():
    logger = logging.getLogger('alprox')
    level = logger.level
    logger.setLevel(logging.DEBUG)
    yield
    logger.setLevel(level)
    ALPROXSettings.quiet = False


def pytest_addoption(parser):
    """--long enables the benchmark runs"""
    parser.addoption('--long', action='store_true', help='run tests marked "long"')


def pytest_runtest_setup(item):
    """Skips tests marked "long" unless --long is given"""
    if item.get_closest_marker('long') is not None and not item.config.getoption('long'):
        pytest.skip('long test, run with --long')
