# coding=utf-8
"""
Primal-dual augmented Lagrangian solvers for nonlinear programs and trajectory optimization
"""

import os

from setuptools import find_packages, setup

requirements = [
    'click',
    'configobj',
    'everett',
    'numpy',
    'pyyaml',
    'scipy',
    'tqdm',
]
test_requirements = [
    'epab',
    'hypothesis',
    'mockito',
    'pytest',
]

CLASSIFIERS = filter(None, map(str.strip,
                               """
Development Status :: 3 - Alpha
Environment :: Console
Intended Audience :: Science/Research
Natural Language :: English
Operating System :: OS Independent
License :: OSI Approved :: MIT License
Programming Language :: Python :: 3.7
Programming Language :: Python :: 3.8
Topic :: Scientific/Engineering :: Mathematics
""".splitlines()))


def read_local_files(*file_paths: str) -> str:
    """
    Reads one or more text files and returns them joined together.

    A title is automatically created based on the file name.

    :param file_paths: list of files to aggregate

    """

    def _read_single_file(file_path):
        with open(file_path) as f:
            filename = os.path.splitext(file_path)[0]
            title = f'{filename}\n{"=" * len(filename)}'
            return '\n\n'.join((title, f.read()))

    return '\n' + '\n\n'.join(map(_read_single_file, file_paths))


setup(
    name='alprox',
    zip_safe=False,
    install_requires=requirements,
    tests_require=test_requirements,
    package_dir={'alprox': 'alprox'},
    package_data={},
    test_suite='pytest',
    packages=find_packages(exclude=('test', 'test.*')),
    entry_points={
        'console_scripts': ['alprox=alprox.cli:cli'],
    },
    long_description=read_local_files('README.rst', 'CHANGELOG.rst'),
    python_requires='>=3.7',
    use_scm_version=True,
    setup_requires=['setuptools_scm'],
    license='MIT',
    classifiers=CLASSIFIERS,
)
