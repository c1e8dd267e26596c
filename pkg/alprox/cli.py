# coding=utf-8
"""
Benchmark runner

    alprox list
    alprox run lqr-rot --tol 1e-8 --out result.yml --trace trace.csv
    alprox suite --out-dir runs --jobs 4

Exit codes: 0 converged, 1 solver failure (partial outputs are still written; when the solver
raises, only the trace), 2 usage or configuration error.
"""
import concurrent.futures
import dataclasses
import logging
import typing
from pathlib import Path

import click
import everett
import tqdm

from alprox import console, nlp, trajopt
from alprox.config import AlproxConfig
from alprox.kkt import InertiaCorrectionError
from alprox.output import RunSummary, result_document, write_plot_data, write_result, write_trace
from alprox.problems import ProblemInstance, get_problem, list_problems
from alprox.settings import ALPROXSettings
from alprox.trace import TraceRecord

LOGGER = logging.getLogger('alprox')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SOLVERS = ('ddp', 'stacked-nlp')
HESSIANS = tuple(mode.value for mode in nlp.HessianMode)

DEFAULT_TOL = 1e-6
DEFAULT_MU0 = 100.0
DEFAULT_RHO0 = 1e-6


@dataclasses.dataclass(frozen=True)
class RunSpec:
    """
    One benchmark run

    Options left to None take the problem's default, then the global default. `mu0` and `mui0`
    are penalty weights: the solver step-sizes are their reciprocals.
    """
    problem_name: str
    solver: str = 'ddp'
    tol: typing.Optional[float] = None
    max_outer: int = 100
    max_inner: int = 100
    mu0: typing.Optional[float] = None
    mui0: typing.Optional[float] = None
    rho0: typing.Optional[float] = None
    hessian: typing.Optional[str] = None
    seed: int = 0
    config: typing.Optional[Path] = None
    out: typing.Optional[Path] = None
    trace: typing.Optional[Path] = None
    plot_data: typing.Optional[Path] = None

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f'unknown solver {self.solver!r}; expected one of {", ".join(SOLVERS)}')
        if self.hessian is not None and self.hessian not in HESSIANS:
            raise ValueError(f'unknown Hessian mode {self.hessian!r}; expected one of {", ".join(HESSIANS)}')
        for name in ('tol', 'mu0', 'mui0'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f'{name} must be positive, got {value}')
        if self.rho0 is not None and self.rho0 < 0:
            raise ValueError(f'rho0 must be non-negative, got {self.rho0}')
        if self.max_outer <= 0 or self.max_inner <= 0:
            raise ValueError('iteration limits must be positive')

    def resolved(self, defaults: typing.Mapping[str, typing.Any]) -> 'RunSpec':
        """
        :param defaults: problem defaults from the registry
        :return: a copy with every optional solver setting filled in
        """
        mu0 = self.mu0 if self.mu0 is not None else defaults.get('mu0', DEFAULT_MU0)
        return dataclasses.replace(
            self,
            tol=self.tol if self.tol is not None else defaults.get('tol', DEFAULT_TOL),
            mu0=mu0,
            mui0=self.mui0 if self.mui0 is not None else defaults.get('mui0', mu0),
            rho0=self.rho0 if self.rho0 is not None else defaults.get('rho0', DEFAULT_RHO0),
            hessian=self.hessian if self.hessian is not None else defaults.get('hessian', 'gauss_newton'),
        )

    def bcl_params(self) -> nlp.BclParams:
        """Solver schedule of a resolved spec"""
        return nlp.BclParams(
            eps_abs=self.tol,
            max_outer_iters=self.max_outer,
            max_inner_iters=self.max_inner,
            mu_e0=1.0 / self.mu0,
            mu_i0=1.0 / self.mui0,
            rho0=self.rho0,
        )

    def options(self) -> dict:
        """Solver settings echoed in the result document"""
        return {
            'tol': self.tol,
            'max_outer': self.max_outer,
            'max_inner': self.max_inner,
            'mu0': self.mu0,
            'mui0': self.mui0,
            'rho0': self.rho0,
            'hessian': self.hessian,
            'seed': self.seed,
        }


def _solve_ddp(instance: ProblemInstance, spec: RunSpec, trace: typing.List[TraceRecord]) -> RunSummary:
    traj, report = trajopt.solve(instance.problem, instance.initial, spec.bcl_params(),
                                 hess_mode=nlp.HessianMode(spec.hessian), trace=trace)
    return RunSummary(report.status, report.outer_iters, report.total_inner_iters, report.dual_inf,
                      report.primal_inf, report.complementarity, report.penalty, traj.xs, traj.us)


def _solve_stacked(instance: ProblemInstance, spec: RunSpec, trace: typing.List[TraceRecord]) -> RunSummary:
    problem = instance.problem
    start = trajopt.stack_trajectory(problem, instance.initial)
    report = nlp.solve(trajopt.stacked_nlp_view(problem), start.x, start.lam, start.nu, spec.bcl_params(),
                       hess_mode=nlp.HessianMode(spec.hessian), trace=trace)
    traj = trajopt.unstack(problem, report.solution.x, report.solution.lam, report.solution.nu)
    return RunSummary(report.status, report.outer_iters, report.total_inner_iters, report.dual_inf,
                      report.primal_inf, report.complementarity, report.penalty, traj.xs, traj.us)


_SOLVE = {
    'ddp': _solve_ddp,
    'stacked-nlp': _solve_stacked,
}


def _write_outputs(spec: RunSpec, instance: ProblemInstance, summary: RunSummary):
    if spec.out:
        write_result(spec.out, result_document(spec.problem_name, spec.solver, summary, spec.options()))
    if spec.plot_data:
        write_plot_data(spec.plot_data, summary.xs, summary.us, instance.dt, instance.u_lower, instance.u_upper)


def run_spec(spec: RunSpec) -> int:
    """
    Builds the problem, solves it and writes the requested outputs

    The trace is written even when the solver raises, with the records produced until then.

    :return: exit code
    """
    try:
        entry = get_problem(spec.problem_name)
    except KeyError as exc:
        console.error(str(exc.args[0]))
        return EXIT_USAGE
    spec = spec.resolved(entry.defaults)
    try:
        instance = entry.build(spec.config, spec.seed)
    except (OSError, ValueError, everett.ConfigurationError) as exc:
        console.error(f'{spec.problem_name}: cannot build the problem: {exc}')
        return EXIT_USAGE

    LOGGER.info('running %s with %s (tol=%s, mu0=%s, rho0=%s)', spec.problem_name, spec.solver, spec.tol,
                spec.mu0, spec.rho0)
    trace: typing.List[TraceRecord] = []
    try:
        summary = _SOLVE[spec.solver](instance, spec, trace)
    except (ValueError, InertiaCorrectionError) as exc:
        console.error(f'{spec.problem_name}: solver error: {exc}')
        return EXIT_FAILURE
    finally:
        if spec.trace:
            write_trace(spec.trace, trace)

    _write_outputs(spec, instance, summary)
    console.result(f'{spec.problem_name}: {summary.status.value} after {summary.outer_iters} outer / '
                   f'{summary.total_inner_iters} inner iterations (dual_inf={summary.dual_inf:.3g}, '
                   f'primal_inf={summary.primal_inf:.3g})')
    return EXIT_OK if summary.status is nlp.SolveStatus.CONVERGED else EXIT_FAILURE


def run_suite(specs: typing.Sequence[RunSpec], jobs: int = 1) -> typing.Dict[str, int]:
    """
    Runs several specs, concurrently in separate processes when jobs > 1

    :return: exit code per problem name
    """
    codes: typing.Dict[str, int] = {}
    with tqdm.tqdm(total=len(specs), desc='alprox suite', unit='run', disable=ALPROXSettings.quiet) as progress:
        if jobs <= 1:
            for spec in specs:
                codes[spec.problem_name] = run_spec(spec)
                progress.update(1)
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = {executor.submit(run_spec, spec): spec.problem_name for spec in specs}
                for future in concurrent.futures.as_completed(futures):
                    codes[futures[future]] = future.result()
                    progress.update(1)
    return {spec.problem_name: codes[spec.problem_name] for spec in specs}


def _configure_logging(config: AlproxConfig):
    try:
        level = config.alprox_log
    except (ValueError, everett.ConfigurationError) as exc:
        console.warning(f'invalid ALPROX_LOG value, using "warning": {exc}')
        level = logging.WARNING
    logging.basicConfig(format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('alprox').setLevel(level)


def _limits(config: AlproxConfig, max_outer, max_inner) -> typing.Tuple[int, int]:
    try:
        if max_outer is None:
            max_outer = config.alprox_max_outer
        if max_inner is None:
            max_inner = config.alprox_max_inner
    except (ValueError, everett.ConfigurationError) as exc:
        console.error(f'invalid iteration limit in the configuration: {exc}')
        raise SystemExit(EXIT_USAGE)
    return max_outer, max_inner


@click.group()
@click.option('--quiet', is_flag=True, help='Mute console output.')
@click.pass_context
def cli(ctx, quiet):
    """
    Primal-dual augmented Lagrangian benchmarks
    """
    ALPROXSettings.quiet = quiet
    config = AlproxConfig()
    _configure_logging(config)
    ctx.obj = config


_PATH = click.Path(dir_okay=False)


def _optional_path(value: typing.Optional[str]) -> typing.Optional[Path]:
    return Path(value) if value else None


@cli.command(name='list')
def list_command():
    """
    Lists the benchmark problems
    """
    for entry in list_problems():
        console.result(f'{entry.name:<14} {entry.description}')


@cli.command()
@click.argument('problem')
@click.option('--solver', type=click.Choice(SOLVERS), default='ddp', show_default=True)
@click.option('--tol', type=float, default=None, help='Stopping tolerance (problem default when absent).')
@click.option('--max-outer', type=int, default=None, help='Outer iteration limit (ALPROX_MAX_OUTER).')
@click.option('--max-inner', type=int, default=None, help='Inner iteration limit (ALPROX_MAX_INNER).')
@click.option('--mu0', type=float, default=None, help='Initial equality penalty weight (step-size 1/mu0).')
@click.option('--mui0', type=float, default=None, help='Initial inequality penalty weight (defaults to mu0).')
@click.option('--rho0', type=float, default=None, help='Initial proximal weight.')
@click.option('--hessian', type=click.Choice(HESSIANS), default=None, help='Primal block of the Newton systems.')
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of randomized problems.')
@click.option('--config', 'config_path', type=_PATH, default=None, help='Problem configuration file (INI or YAML).')
@click.option('--out', type=_PATH, default=None, help='Result document (YAML).')
@click.option('--trace', type=_PATH, default=None, help='Trace table (CSV).')
@click.option('--plot-data', type=_PATH, default=None, help='State and control time series (CSV).')
@click.pass_obj
def run(settings, problem, solver, tol, max_outer, max_inner, mu0, mui0, rho0, hessian, seed, config_path, out,
        trace, plot_data):
    """
    Solves one benchmark problem
    """
    max_outer, max_inner = _limits(settings, max_outer, max_inner)
    try:
        spec = RunSpec(
            problem_name=problem,
            solver=solver,
            tol=tol,
            max_outer=max_outer,
            max_inner=max_inner,
            mu0=mu0,
            mui0=mui0,
            rho0=rho0,
            hessian=hessian,
            seed=seed,
            config=_optional_path(config_path),
            out=_optional_path(out),
            trace=_optional_path(trace),
            plot_data=_optional_path(plot_data),
        )
    except ValueError as exc:
        console.error(str(exc))
        raise SystemExit(EXIT_USAGE)
    raise SystemExit(run_spec(spec))


@cli.command()
@click.option('--out-dir', type=click.Path(file_okay=False), default='alprox-suite', show_default=True)
@click.option('--solver', type=click.Choice(SOLVERS), default='ddp', show_default=True)
@click.option('--jobs', type=int, default=1, show_default=True, help='Problems solved concurrently.')
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of randomized problems.')
@click.option('--max-outer', type=int, default=None)
@click.option('--max-inner', type=int, default=None)
@click.pass_obj
def suite(settings, out_dir, solver, jobs, seed, max_outer, max_inner):
    """
    Solves every benchmark problem, each into its own sub-directory of OUT_DIR
    """
    max_outer, max_inner = _limits(settings, max_outer, max_inner)
    root = Path(out_dir).absolute()
    specs = [
        RunSpec(
            problem_name=entry.name,
            solver=solver,
            max_outer=max_outer,
            max_inner=max_inner,
            seed=seed,
            out=root / entry.name / 'result.yml',
            trace=root / entry.name / 'trace.csv',
            plot_data=root / entry.name / 'plot.csv',
        )
        for entry in list_problems()
    ]
    codes = run_suite(specs, jobs)
    for name, code in codes.items():
        if code:
            console.warning(f'{name}: exit code {code}')
    raise SystemExit(max(codes.values(), default=EXIT_OK))
