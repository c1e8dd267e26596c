# coding=utf-8
"""
Run outputs: result document, trace table and plot data, all written atomically
"""
import csv
import io
import logging
import os
import tempfile
import typing
from pathlib import Path

import numpy as np
import yaml

from alprox.nlp import PenaltyState, SolveStatus
from alprox.trace import TraceRecord, format_trace

LOGGER = logging.getLogger('alprox')

SCHEMA_VERSION = 1

PENALTY_CONVENTION = ('mu_e and mu_i are penalty step-sizes; the --mu0/--mui0 options are penalty '
                      'weights, converted as mu_e = 1/mu0 and mu_i = 1/mui0')

PathLike = typing.Union[str, Path]


class RunSummary(typing.NamedTuple):
    """
    Solver-independent outcome of a run
    """
    status: SolveStatus
    outer_iters: int
    total_inner_iters: int
    dual_inf: float
    primal_inf: float
    complementarity: float
    penalty: PenaltyState
    xs: typing.List[np.ndarray]
    us: typing.List[np.ndarray]


def ensure_dir(*dir_path: PathLike, must_exist: bool = True, create: bool = False) -> Path:
    """
    Ensure path is a directory

    Args:
        dir_path: path
        must_exist: if True, raises FileNotFoundError when path does not exist
        create: create the directory if it doesn't exist (implies "must_exist == False")

    Returns: absolute Path
    """
    must_exist = False if create else must_exist
    _dir_path = Path(*dir_path).absolute()
    if _dir_path.exists():
        if not _dir_path.is_dir():
            raise TypeError(f'not a directory: {_dir_path}')
    elif create:
        _dir_path.mkdir(parents=True)
    elif must_exist:
        raise FileNotFoundError(str(_dir_path))
    return _dir_path


def atomic_write_text(path: PathLike, text: str) -> Path:
    """
    Writes text to a temporary file next to `path`, then moves it in place
    """
    path = Path(path).absolute()
    ensure_dir(path.parent, create=True)
    handle, temp_name = tempfile.mkstemp(prefix=f'.{path.name}.', dir=str(path.parent))
    try:
        with os.fdopen(handle, 'w', encoding='utf8', newline='') as stream:
            stream.write(text)
        os.replace(temp_name, str(path))
    except BaseException:
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise
    LOGGER.debug('written: %s', path)
    return path


def _floats(arrays: typing.Iterable[np.ndarray]) -> typing.List[typing.List[float]]:
    return [[float(value) for value in np.asarray(array).reshape(-1)] for array in arrays]


def result_document(problem_name: str, solver: str, summary: RunSummary,
                    options: typing.Optional[typing.Mapping[str, typing.Any]] = None) -> dict:
    """
    Builds the structured result of a run

    :param problem_name: registry name
    :param solver: "ddp" or "stacked-nlp"
    :param summary: run outcome
    :param options: run options echoed in the document
    """
    penalty = summary.penalty
    return {
        'schema_version': SCHEMA_VERSION,
        'problem': problem_name,
        'solver': solver,
        'status': summary.status.value,
        'outer_iters': int(summary.outer_iters),
        'total_inner_iters': int(summary.total_inner_iters),
        'dual_inf': float(summary.dual_inf),
        'primal_inf': float(summary.primal_inf),
        'complementarity': float(summary.complementarity),
        'penalty': {
            'mu_e': float(penalty.mu_e),
            'mu_i': float(penalty.mu_i),
            'rho': float(penalty.rho),
            'convention': PENALTY_CONVENTION,
        },
        'options': dict(options or {}),
        'xs': _floats(summary.xs),
        'us': _floats(summary.us),
    }


def write_result(path: PathLike, document: typing.Mapping) -> Path:
    """
    Writes a result document as YAML
    """
    return atomic_write_text(path, yaml.safe_dump(dict(document), default_flow_style=None, sort_keys=False))


def read_result(path: PathLike) -> dict:
    """
    Reads a result document

    :raises ValueError: unknown schema version
    """
    document = yaml.safe_load(Path(path).read_text(encoding='utf8'))
    if not isinstance(document, dict) or document.get('schema_version') != SCHEMA_VERSION:
        raise ValueError(f'not a version {SCHEMA_VERSION} result document: {path}')
    return document


def write_trace(path: PathLike, records: typing.Iterable[TraceRecord]) -> Path:
    """
    Writes a trace table
    """
    return atomic_write_text(path, format_trace(records))


def plot_table(xs: typing.Sequence[np.ndarray], us: typing.Sequence[np.ndarray], dt: float = 1.0,
               u_lower: typing.Optional[np.ndarray] = None, u_upper: typing.Optional[np.ndarray] = None) -> str:
    """
    Time series of states and controls as comma-delimited text

    Columns: t, x_0..x_{nx-1}, u_0..u_{nu-1}, then u_lower_j and u_upper_j for every control when
    bounds are given. The control cells of the terminal row are empty.
    """
    nx = np.asarray(xs[0]).size
    nu = np.asarray(us[0]).size if us else 0
    header = ['t'] + [f'x_{i}' for i in range(nx)] + [f'u_{j}' for j in range(nu)]
    bounded = u_lower is not None and u_upper is not None
    if bounded:
        for j in range(nu):
            header += [f'u_lower_{j}', f'u_upper_{j}']

    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for k, state in enumerate(xs):
        row = ['%.17g' % (k * dt)] + ['%.17g' % value for value in np.asarray(state).reshape(-1)]
        if k < len(us):
            row += ['%.17g' % value for value in np.asarray(us[k]).reshape(-1)]
        else:
            row += [''] * nu
        if bounded:
            for j in range(nu):
                row += ['%.17g' % u_lower[j], '%.17g' % u_upper[j]]
        writer.writerow(row)
    return stream.getvalue()


def write_plot_data(path: PathLike, xs, us, dt: float = 1.0, u_lower=None, u_upper=None) -> Path:
    """
    Writes the plot data table (see `plot_table`)
    """
    return atomic_write_text(path, plot_table(xs, us, dt, u_lower, u_upper))
