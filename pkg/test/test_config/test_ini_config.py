# coding=utf-8


def test_ini_config_file(dummy_config, write_file):
    write_file('test.ini', '''
[main]
tol=1e-9
name=lqr-obstacle
max_outer=20

[solver]
hessian=gauss_newton
''')
    cfg = dummy_config('test')
    assert cfg.tol == 1e-9
    assert cfg.name == 'lqr-obstacle'
    assert cfg.max_outer == 20
    assert cfg.solver_hessian == 'gauss_newton'


def test_yaml_overrides_ini(dummy_config, write_file):
    write_file('test.ini', '''
[main]
max_outer=20
''')
    write_file('test.yml', 'max_outer: 30\n')
    assert dummy_config('test').max_outer == 30
