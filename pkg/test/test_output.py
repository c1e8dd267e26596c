# coding=utf-8
import os
from pathlib import Path

import numpy as np
import pytest
import yaml
from mockito import when

from alprox import output
from alprox.nlp import PenaltyState, SolveStatus
from alprox.output import (
    PENALTY_CONVENTION, RunSummary, atomic_write_text, ensure_dir, plot_table, read_result, result_document,
    write_plot_data, write_result,
)


@pytest.fixture(name='summary')
def _summary():
    return RunSummary(
        status=SolveStatus.CONVERGED,
        outer_iters=3,
        total_inner_iters=11,
        dual_inf=1e-9,
        primal_inf=2e-10,
        complementarity=0.0,
        penalty=PenaltyState(1e-4, 1e-4, 1e-6, 1e-6, 1e-6),
        xs=[np.array([0.5, 0.5]), np.array([0.25, 0.0]), np.array([0.0, 0.0])],
        us=[np.array([-0.4, 0.1]), np.array([0.0, 0.4])],
    )


def test_ensure_dir():
    assert ensure_dir('.') == Path('.').absolute()
    with pytest.raises(FileNotFoundError):
        ensure_dir('nosuch')
    assert ensure_dir('nosuch', must_exist=False) == Path('nosuch').absolute()
    assert not Path('nosuch').exists()
    assert ensure_dir('new', 'dir', create=True).is_dir()


def test_ensure_dir_on_a_file():
    Path('file').touch()
    with pytest.raises(TypeError):
        ensure_dir('file')


def test_atomic_write():
    path = atomic_write_text(Path('sub', 'dir', 'file.txt'), 'some text\n')
    assert path.read_text(encoding='utf8') == 'some text\n'
    assert os.listdir(str(path.parent)) == ['file.txt']


def test_atomic_write_keeps_the_old_file_on_failure():
    Path('file.txt').write_text('old', encoding='utf8')
    when(os).replace(...).thenRaise(OSError('disk full'))
    with pytest.raises(OSError):
        atomic_write_text('file.txt', 'new')
    assert Path('file.txt').read_text(encoding='utf8') == 'old'
    assert os.listdir('.') == ['file.txt']


def test_result_document(summary):
    document = result_document('lqr-rot', 'ddp', summary, {'tol': 1e-8})
    assert document['schema_version'] == output.SCHEMA_VERSION
    assert document['status'] == 'converged'
    assert document['penalty'] == {'mu_e': 1e-4, 'mu_i': 1e-4, 'rho': 1e-6, 'convention': PENALTY_CONVENTION}
    assert document['options'] == {'tol': 1e-8}
    assert document['xs'][0] == [0.5, 0.5]
    assert document['us'][1] == [0.0, 0.4]
    assert all(isinstance(value, float) for row in document['xs'] for value in row)


def test_write_and_read_result(summary):
    document = result_document('lqr-rot', 'ddp', summary)
    write_result('result.yml', document)
    assert read_result('result.yml') == document
    keys = list(yaml.safe_load(Path('result.yml').read_text(encoding='utf8')))
    assert keys[:4] == ['schema_version', 'problem', 'solver', 'status']


@pytest.mark.parametrize('text', ['- a list\n', 'schema_version: 99\n'], ids=['list', 'version'])
def test_read_invalid_result(text):
    Path('result.yml').write_text(text, encoding='utf8')
    with pytest.raises(ValueError):
        read_result('result.yml')


def test_plot_table(summary):
    lines = plot_table(summary.xs, summary.us, dt=0.5).splitlines()
    assert lines[0] == 't,x_0,x_1,u_0,u_1'
    assert lines[1] == '0,0.5,0.5,-0.40000000000000002,0.10000000000000001'
    assert lines[3] == '1,0,0,,'
    assert len(lines) == 4


def test_plot_table_with_bounds(summary):
    bounds = np.array([0.4, 0.4])
    lines = plot_table(summary.xs, summary.us, 0.05, -bounds, bounds).splitlines()
    assert lines[0].endswith('u_lower_0,u_upper_0,u_lower_1,u_upper_1')
    assert lines[-1].endswith(',,-0.40000000000000002,0.40000000000000002,-0.40000000000000002,0.40000000000000002')


def test_write_plot_data(summary):
    path = write_plot_data(Path('plots', 'plot.csv'), summary.xs, summary.us)
    assert path.read_text(encoding='utf8') == plot_table(summary.xs, summary.us)
