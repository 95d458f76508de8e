# -*- coding:utf-8 -*-
"""
Command line interface.

Usage:
    aimkg spectrum --alpha 1 --beta 0.1 --gamma 0.05 --Nmax 2 --nmax 1 --m 0 --m 1
    aimkg wavefunction --state 0 0 1 --out psi.csv
    aimkg aim-trace --channel radial --ell 0 --iters 10
    aimkg verify --no-oracle
    aimkg sweep --vary gamma --start 0 --stop 0.2 --samples 21

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 unbound requested state, 4 iteration cap exceeded.

Settings are merged with the precedence flags > ``--config`` JSON file > defaults,
and the effective configuration is echoed into every JSON output.

"""

import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import __version__
from .aim import run_iterations, iteration_table, root_stability, MAX_ITERATIONS
from .exceptions import (ConfigError, IterationCapError, UnboundChannelError, NoBoundStateError, AimkgError,
                         PoleError, DegenerateEvaluationError)
from .models.makarov import (ModelParams, QuantumNumbers, radial_aim_problem, angular_aim_problem, angular_channel,
                             self_consistent_spectrum, spectrum as solve_spectrum, CLOSED_FORM, AIM)
from .polyfield import MODES, EXACT
from .utils import configure_logging, write_json, write_csv, write_sidecar, load_json, to_jsonable
from .verify import run_checks, all_passed, format_table
from .wavefun import (radial_wave, radial_extent, angular_wave, azimuthal_wave, assemble_psi, count_sign_changes,
                      NODE_SAMPLES)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_UNBOUND = 3
EXIT_CAP = 4

AXES = ('alpha', 'beta', 'gamma', 'M')
FORMATS = ('json', 'csv')
CHANNELS = ('radial', 'angular')
METHODS = (CLOSED_FORM, AIM)
MAX_SAMPLES = 10000
RADIAL_PROBES = (0.5, 1.0, 2.0)
ANGULAR_PROBES = (0.25, 0.5, 0.75)
TRACE_ITERS = 12
THETA_SLICE = np.pi / 3.0
PHI_SLICE = 0.0
WAVE_COLUMNS = ['r', 'R', 'theta', 'Theta', 'phi_re', 'phi_im', 'psi_re', 'psi_im']

logger = logging.getLogger(__name__)

DEFAULTS = dict(alpha=1.0, beta=0.0, gamma=0.0, mass=1.0, N_max=1, n_max=0, m_values=(0,), mode=EXACT,
                method=CLOSED_FORM, iters=None, x0=None, out=None, format=None, tolerance=None, oracle=True,
                channel='radial', ell=0.0, a=0.5, b=0.5, state=(0, 0, 0), rmax=None, points=201, vary='gamma',
                start=0.0, stop=0.0, samples=1, jobs=1)


class RunConfig(namedtuple('RunConfig', list(DEFAULTS))):
    """Effective settings of one command-line run."""
    __slots__ = ()

    def __new__(cls, **kwargs):
        values = dict(DEFAULTS)
        values.update(kwargs)
        for key in ('m_values', 'state'):
            if isinstance(values[key], list):
                values[key] = tuple(values[key])
        return super(RunConfig, cls).__new__(cls, **values)

    @classmethod
    def from_sources(cls, flags, config_path=None):
        """Merge flags over a JSON config file over defaults; ``None`` flags are unset."""
        values, problems = {}, []
        if config_path is not None:
            try:
                data = load_json(config_path)
            except (IOError, OSError, ValueError) as e:
                raise ConfigError(["cannot read config file {0}: {1}".format(config_path, e)])
            if not isinstance(data, dict):
                raise ConfigError(["config file {0} must hold a JSON object".format(config_path)])
            for key, value in sorted(data.items()):
                if key not in DEFAULTS:
                    problems.append("unknown config key {0!r}".format(key))
                else:
                    values[key] = value
        for key, value in flags.items():
            if value is not None:
                values[key] = value
        if problems:
            raise ConfigError(problems)
        return cls(**values)

    def validate(self, command=None):
        """Every violated constraint, as a list of messages."""
        problems = []

        def number(name, check, text):
            value = getattr(self, name)
            try:
                ok = check(float(value))
            except (TypeError, ValueError):
                ok = False
            if not ok:
                problems.append("{0} {1}, got {2!r}".format(name, text, value))

        def integer(name, low, high=None):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < low or \
                    (high is not None and value > high):
                bound = ">= {0}".format(low) if high is None else "in {0}..{1}".format(low, high)
                problems.append("{0} must be an integer {1}, got {2!r}".format(name, bound, value))

        number('alpha', lambda v: v > 0, "must be > 0")
        number('beta', lambda v: v >= 0, "must be >= 0")
        number('gamma', np.isfinite, "must be finite")
        number('mass', lambda v: v > 0, "must be > 0")
        integer('N_max', 0)
        integer('n_max', 0)
        if not self.m_values:
            problems.append("m_values is empty: no quantum numbers to compute")
        elif not all(isinstance(m, (int, np.integer)) and not isinstance(m, bool) for m in self.m_values):
            problems.append("m_values must be integers, got {0!r}".format(self.m_values))
        if self.mode not in MODES:
            problems.append("mode must be one of {0}, got {1!r}".format(MODES, self.mode))
        if self.method not in METHODS:
            problems.append("method must be one of {0}, got {1!r}".format(METHODS, self.method))
        if self.iters is not None:
            integer('iters', 1)
        if self.format is not None and self.format not in FORMATS:
            problems.append("format must be one of {0}, got {1!r}".format(FORMATS, self.format))
        if self.tolerance is not None:
            number('tolerance', lambda v: v > 0, "must be > 0")
        if self.channel not in CHANNELS:
            problems.append("channel must be one of {0}, got {1!r}".format(CHANNELS, self.channel))
        number('ell', lambda v: v >= 0, "must be >= 0")
        number('a', lambda v: v >= 0, "must be >= 0")
        number('b', lambda v: v >= 0, "must be >= 0")
        if self.x0 is not None:
            hi = 1.0 if self.channel == 'angular' else np.inf
            number('x0', lambda v: 0 < v < hi, "must lie inside the {0} domain (0, {1})".format(self.channel, hi))
        if len(self.state) != 3 or any(isinstance(q, bool) or not isinstance(q, (int, np.integer))
                                       for q in self.state) or min(self.state[:2]) < 0:
            problems.append("state must be three integers N n m with N, n >= 0, got {0!r}".format(self.state))
        if self.rmax is not None:
            number('rmax', lambda v: v > 0, "must be > 0")
        integer('points', 2)
        if self.vary not in AXES:
            problems.append("vary must be one of {0}, got {1!r}".format(AXES, self.vary))
        else:
            positive = self.vary in ('alpha', 'M')
            for name in ('start', 'stop'):
                if positive:
                    number(name, lambda v: v > 0, "must be > 0 for axis {0}".format(self.vary))
                elif self.vary == 'beta':
                    number(name, lambda v: v >= 0, "must be >= 0 for axis beta")
                else:
                    number(name, np.isfinite, "must be finite")
        integer('samples', 1, MAX_SAMPLES)
        integer('jobs', 1)
        return problems

    def params(self, **overrides):
        values = dict(alpha=self.alpha, beta=self.beta, gamma=self.gamma, M=self.mass)
        values.update(overrides)
        return ModelParams(**values)

    def to_dict(self):
        return to_jsonable(self)


class ConfigProblem(click.ClickException):
    exit_code = EXIT_CONFIG

    def __init__(self, problems):
        self.problems = list(problems)
        super(ConfigProblem, self).__init__("invalid configuration:\n  - " + "\n  - ".join(self.problems))


def _exit(code):
    click.get_current_context().exit(code)


def _load(flags):
    config_path = flags.pop('config', None)
    configure_logging(flags.pop('verbose', 0) or 0)
    try:
        cfg = RunConfig.from_sources(flags, config_path)
    except ConfigError as e:
        raise ConfigProblem(e.problems)
    problems = cfg.validate()
    if problems:
        raise ConfigProblem(problems)
    return cfg


def _finish(cfg, command, fmt, payload, header=None, rows=None):
    if fmt == 'csv':
        write_csv(cfg.out, header, rows)
    else:
        write_json(cfg.out, payload)
    write_sidecar(cfg.out, command, cfg.to_dict())


def _param_options(f):
    options = [
        click.option('--alpha', type=float, default=None, help='Coulomb strength alpha > 0.'),
        click.option('--beta', type=float, default=None, help='Ring-shape strength beta >= 0.'),
        click.option('--gamma', type=float, default=None, help='Angular asymmetry strength gamma.'),
        click.option('--mass', 'mass', type=float, default=None, help='Particle mass M > 0.'),
        click.option('--config', type=click.Path(), default=None, help='JSON file with RunConfig fields.'),
        click.option('--out', type=str, default=None, help='Output path, "-" for stdout.'),
        click.option('--format', 'format', type=click.Choice(FORMATS), default=None, help='Output format.'),
        click.option('--jobs', type=int, default=None, help='Worker threads.'),
        click.option('-v', '--verbose', count=True, help='Log more (repeatable).'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _range_options(f):
    options = [
        click.option('--Nmax', 'N_max', type=int, default=None, help='Largest radial quantum number N.'),
        click.option('--nmax', 'n_max', type=int, default=None, help='Largest polar quantum number n.'),
        click.option('--m', 'm_values', type=int, multiple=True, help='Azimuthal quantum number (repeatable).'),
    ]
    for option in reversed(options):
        f = option(f)
    return _aim_options(f)


def _aim_options(f):
    options = [
        click.option('--method', type=click.Choice(METHODS), default=None, help='Right-hand side evaluation.'),
        click.option('--iters', type=int, default=None,
                     help='AIM depth of both channels for --method aim (default: two past the wanted root).'),
        click.option('--x0', type=float, default=None, help='Radial AIM evaluation point for --method aim.'),
        click.option('--mode', type=click.Choice(MODES), default=None, help='Scalar mode of the AIM channels.'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _clean(flags):
    if 'm_values' in flags and not flags['m_values']:
        flags['m_values'] = None
    return flags


@click.group()
@click.version_option(version=__version__, prog_name='aimkg')
def cli():
    """Klein-Gordon bound states in the Makarov potential by the asymptotic iteration method."""


def _entry_record(entry):
    return {'N': entry.qn.N, 'n': entry.qn.n, 'm': entry.qn.m, 'E': entry.energy, 'ell_eff': entry.ell_eff,
            'residual': entry.residual, 'source': entry.source, 'multiplicity': entry.multiplicity}


@cli.command('spectrum')
@_param_options
@_range_options
def spectrum_command(**flags):
    """Self-consistent energies for every (N, n, m) in range."""
    cfg = _load(_clean(flags))
    result = solve_spectrum(cfg.params(), cfg.N_max, cfg.n_max, cfg.m_values, cfg.method, cfg.jobs, cfg.iters,
                            cfg.mode, cfg.x0)
    entries = sorted(result.entries, key=lambda e: (e.energy, e.qn.N, e.qn.n, e.qn.m))
    errors = [{'N': qn.N, 'n': qn.n, 'm': qn.m, 'message': message} for qn, message in result.errors]
    for error in errors:
        click.echo("state N={N} n={n} m={m}: {message}".format(**error), err=True)
    payload = {'config': cfg.to_dict(), 'params': cfg.params()._asdict(),
               'entries': [_entry_record(e) for e in entries], 'errors': errors}
    header = ['N', 'n', 'm', 'E', 'ell_eff', 'residual', 'source']
    rows = [[e.qn.N, e.qn.n, e.qn.m, e.energy, e.ell_eff, e.residual, e.source] for e in entries]
    _finish(cfg, 'spectrum', cfg.format or 'json', payload, header, rows)
    _exit(EXIT_UNBOUND if errors else EXIT_OK)


@cli.command('wavefunction')
@_param_options
@click.option('--state', type=int, nargs=3, default=None, help='Quantum numbers N n m.')
@click.option('--rmax', type=float, default=None, help='Largest sampled radius.')
@click.option('--points', type=int, default=None, help='Samples per coordinate block.')
@_aim_options
def wavefunction_command(**flags):
    """Sample R(r), Theta(theta), Phi(phi) and psi in three blocks, one coordinate varying per block."""
    cfg = _load(_clean(flags))
    params = cfg.params()
    N, n, m = cfg.state
    qn = QuantumNumbers(N, n, m)
    try:
        entry = self_consistent_spectrum(params, qn, cfg.method, cfg.iters, cfg.mode, cfg.x0)
        channel = angular_channel(params, entry.energy, m)
    except (UnboundChannelError, NoBoundStateError) as e:
        click.echo("state N={0} n={1} m={2}: {3}".format(N, n, m, e), err=True)
        _exit(EXIT_UNBOUND)
        return
    theta_grid = np.linspace(0.0, np.pi, cfg.points)
    angular = angular_wave(m, channel.beta_p, channel.gamma_p, n, theta_grid)
    ell = angular.ell_eff
    kappa = np.sqrt(params.M ** 2 - entry.energy ** 2)
    r_ext = radial_extent(ell, kappa, N)
    r_max = cfg.rmax if cfg.rmax is not None else r_ext
    r_grid = np.linspace(0.0, r_max, cfg.points)
    phi_grid = np.linspace(0.0, 2.0 * np.pi, cfg.points)
    radial = radial_wave(params, entry.energy, ell, N, r_grid)
    r0 = (N + ell + 1.0) / radial.x_scale
    rows = []
    for r in r_grid:
        rows.append((r, THETA_SLICE, PHI_SLICE))
    for theta in theta_grid:
        rows.append((r0, theta, PHI_SLICE))
    for phi in phi_grid:
        rows.append((r0, THETA_SLICE, phi))
    samples = assemble_psi(radial, angular, m, rows)
    table = []
    for sample in samples:
        phi_value = complex(azimuthal_wave(m, sample.phi))
        table.append([sample.r, float(radial.value(sample.r)), sample.theta, float(angular.value(sample.theta)),
                      phi_value.real, phi_value.imag, sample.value.real, sample.value.imag])
    payload = {'config': cfg.to_dict(), 'state': {'N': N, 'n': n, 'm': m}, 'E': entry.energy,
               'ell_eff': entry.ell_eff, 'a': channel.a, 'b': channel.b,
               'radial': {'norm_numeric': radial.norm_numeric, 'norm_analytic': radial.norm_analytic,
                          'nodes': count_sign_changes(radial.value(np.linspace(0.0, r_ext, NODE_SAMPLES)))},
               'angular': {'norm_numeric': angular.norm_numeric, 'norm_analytic': angular.norm_analytic,
                           'nodes': count_sign_changes(angular.value(np.linspace(0.0, np.pi, NODE_SAMPLES)))},
               'columns': WAVE_COLUMNS, 'rows': table}
    _finish(cfg, 'wavefunction', cfg.format or 'csv', payload, WAVE_COLUMNS, table)
    _exit(EXIT_OK)


@cli.command('aim-trace')
@_param_options
@click.option('--channel', type=click.Choice(CHANNELS), default=None, help='Which separated equation.')
@click.option('--ell', type=float, default=None, help='Radial centrifugal index.')
@click.option('--a', 'a', type=float, default=None, help='Polar exponent at y = 0.')
@click.option('--b', 'b', type=float, default=None, help='Polar exponent at y = 1.')
@click.option('--iters', type=int, default=None, help='AIM iterations (at most {0}).'.format(MAX_ITERATIONS))
@click.option('--x0', type=float, default=None, help='Evaluation point.')
@click.option('--mode', type=click.Choice(MODES), default=None, help='Scalar mode.')
def aim_trace_command(**flags):
    """Roots of the termination condition at every iteration depth, with a probe-drift report."""
    cfg = _load(_clean(flags))
    if cfg.iters is None:
        cfg = cfg._replace(iters=TRACE_ITERS)
    if cfg.channel == 'radial':
        problem, probes = radial_aim_problem(cfg.ell, cfg.mode), RADIAL_PROBES
    else:
        problem, probes = angular_aim_problem(cfg.a, cfg.b, cfg.mode), ANGULAR_PROBES
    x0 = problem.default_x0 if cfg.x0 is None else cfg.x0
    try:
        trace = run_iterations(problem, cfg.iters) if problem.mode == EXACT else None
        reports = iteration_table(problem, cfg.iters, x0, trace=trace)
        stability = root_stability(problem, cfg.iters, probes, x0=x0, trace=trace)
    except IterationCapError as e:
        click.echo(str(e), err=True)
        _exit(EXIT_CAP)
        return
    except (PoleError, DegenerateEvaluationError) as e:
        raise ConfigProblem([str(e)])
    payload = {
        'config': cfg.to_dict(), 'channel': cfg.channel, 'parameter': problem.parameter_name,
        'iterations': [{'n': r.n_iter, 'roots': list(r.roots), 'certificates': list(r.certificates)}
                       for r in reports],
        'stability': {'n_iter': stability.n_iter, 'x0': stability.x0, 'probes': list(probes),
                      'drift': stability.stability, 'flagged': stability.flagged,
                      'probe_errors': [{'x0': p, 'message': msg} for p, msg in stability.probe_errors]},
    }
    header = ['n', 'index', 'root', 'certificate']
    rows = [[r.n_iter, i, float(root), cert]
            for r in reports for i, (root, cert) in enumerate(zip(r.roots, r.certificates))]
    _finish(cfg, 'aim-trace', cfg.format or 'json', payload, header, rows)
    _exit(EXIT_OK)


@cli.command('verify')
@click.option('--tolerance', type=float, default=None, help='Replace every check tolerance.')
@click.option('--no-oracle', 'no_oracle', is_flag=True, default=False, help='Skip finite-difference checks.')
@click.option('--out', type=str, default=None, help='Write the JSON report here.')
@click.option('--config', type=click.Path(), default=None, help='JSON file with RunConfig fields.')
@click.option('-v', '--verbose', count=True, help='Log more (repeatable).')
def verify_command(**flags):
    """Run the acceptance matrix; exit 1 if any check misses its tolerance."""
    flags['oracle'] = False if flags.pop('no_oracle') else None
    cfg = _load(flags)
    results = run_checks(cfg.tolerance, cfg.oracle)
    click.echo(format_table(results))
    passed = all_passed(results)
    if cfg.out is not None:
        payload = {'config': cfg.to_dict(), 'passed': passed,
                   'checks': [dict(r._asdict(), margin=r.margin) for r in results]}
        write_json(cfg.out, payload)
        write_sidecar(cfg.out, 'verify', cfg.to_dict())
    _exit(EXIT_OK if passed else EXIT_VERIFY)


@cli.command('sweep')
@_param_options
@_range_options
@click.option('--vary', type=click.Choice(AXES), default=None, help='Parameter axis.')
@click.option('--start', type=float, default=None, help='First axis value.')
@click.option('--stop', type=float, default=None, help='Last axis value.')
@click.option('--samples', type=int, default=None, help='Number of axis values (at most {0}).'.format(MAX_SAMPLES))
def sweep_command(**flags):
    """Energies of every tracked state along one parameter axis."""
    cfg = _load(_clean(flags))
    states = [QuantumNumbers(N, n, m) for N in range(cfg.N_max + 1) for n in range(cfg.n_max + 1)
              for m in sorted(set(cfg.m_values))]
    axis_values = np.linspace(cfg.start, cfg.stop, cfg.samples)

    def row(value):
        params = cfg.params(**{cfg.vary: float(value)})
        energies = []
        for qn in states:
            try:
                entry = self_consistent_spectrum(params, qn, cfg.method, cfg.iters, cfg.mode, cfg.x0)
                energies.append(entry.energy)
            except AimkgError as e:
                logger.info("{0}={1!r} qn {2}: {3}".format(cfg.vary, value, tuple(qn), e))
                energies.append(float('nan'))
        return [float(value)] + energies

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(row, axis_values))
    else:
        rows = [row(v) for v in axis_values]
    header = [cfg.vary] + ['E_N{0}_n{1}_m{2}'.format(*qn) for qn in states]
    payload = {'config': cfg.to_dict(), 'axis': cfg.vary, 'columns': header, 'rows': rows}
    _finish(cfg, 'sweep', cfg.format or 'csv', payload, header, rows)
    _exit(EXIT_OK)


def main():
    cli()


if __name__ == '__main__':
    main()
