# coding=utf-8
"""
python -m alprox
"""

from alprox.cli import cli

cli()  # pylint: disable=no-value-for-parameter
