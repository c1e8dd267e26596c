# coding=utf-8
"""
ALPROX settings
"""


class ALPROXSettings:
    """
    ALPROX settings
    """

    quiet: bool = False

    color_info = 'green'
    color_error = 'red'
    color_warning = 'yellow'
    color_result = 'cyan'
