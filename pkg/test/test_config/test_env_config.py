# coding=utf-8


def test_env_config(dummy_config, write_file):
    write_file('.env', '''
TOL=1e-4
NAME=car-park
MAX_OUTER=12
SOLVER_HESSIAN=exact
''')
    cfg = dummy_config('test')
    assert cfg.tol == 1e-4
    assert cfg.name == 'car-park'
    assert cfg.max_outer == 12
    assert cfg.solver_hessian == 'exact'


def test_env_overrides_ini(dummy_config, write_file, monkeypatch):
    write_file('test.ini', '''
[main]
max_outer=3
''')
    monkeypatch.setenv('MAX_OUTER', '4')
    assert dummy_config('test').max_outer == 4
