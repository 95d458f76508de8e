import json

import numpy as np
import pytest

from aimkg import __version__
from aimkg.cli import RunConfig, EXIT_CONFIG, EXIT_UNBOUND, EXIT_CAP, EXIT_VERIFY, WAVE_COLUMNS
from aimkg.exceptions import ConfigError
from .utils import run_cli, read_json, read_lines, check_schema, check_sidecar, COUPLED_GROUND_RANGE

COUPLED_FLAGS = ['--alpha', 1, '--beta', 0.1, '--gamma', 0.05, '--mass', 1]


def test_version():
    result = run_cli(['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_spectrum_json(tmp_path):
    out = tmp_path / 'spectrum.json'
    result = run_cli(['spectrum'] + COUPLED_FLAGS + ['--Nmax', 1, '--nmax', 1, '--m', 0, '--m', 1, '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    check_schema(payload, 'spectrum')
    energies = [e['E'] for e in payload['entries']]
    assert len(energies) == 8
    assert energies == sorted(energies)
    assert all(-1.0 < E < 1.0 for E in energies)
    assert payload['errors'] == []
    assert payload['config']['beta'] == 0.1
    assert payload['config']['N_max'] == 1
    check_sidecar(out)


def test_spectrum_regression_value(tmp_path):
    out = tmp_path / 'ground.json'
    result = run_cli(['spectrum'] + COUPLED_FLAGS + ['--Nmax', 0, '--nmax', 0, '--m', 1, '--out', out])
    assert result.exit_code == 0, result.output
    (entry,) = read_json(out)['entries']
    assert COUPLED_GROUND_RANGE[0] < entry['E'] < COUPLED_GROUND_RANGE[1]


def test_spectrum_is_byte_identical(tmp_path):
    out = tmp_path / 'spectrum.csv'
    args = ['spectrum'] + COUPLED_FLAGS + ['--Nmax', 2, '--m', 1, '--m', 2, '--format', 'csv', '--out', out]
    run_cli(args)
    first = out.read_bytes()
    run_cli(args)
    assert out.read_bytes() == first
    lines = read_lines(out)
    assert lines[0] == 'N,n,m,E,ell_eff,residual,source'
    assert len(lines) == 1 + 6


def test_spectrum_aim_depth_flag(tmp_path):
    out = tmp_path / 'spectrum.json'
    args = ['--Nmax', 2, '--m', 1, '--method', 'aim', '--iters', 1, '--out', out]
    result = run_cli(['spectrum'] + COUPLED_FLAGS + args)
    assert result.exit_code == EXIT_UNBOUND
    payload = read_json(out)
    assert [(e['N'], e['source']) for e in payload['entries']] == [(0, 'aim'), (1, 'aim')]
    assert [e['N'] for e in payload['errors']] == [2]
    assert payload['config']['iters'] == 1


def test_config_file_below_flags(tmp_path):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'alpha': 2.0, 'beta': 0.2, 'm_values': [1]}))
    out = tmp_path / 'spectrum.json'
    result = run_cli(['spectrum', '--config', config, '--alpha', 1.5, '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    assert payload['config']['alpha'] == 1.5
    assert payload['config']['beta'] == 0.2
    assert payload['config']['m_values'] == [1]


def test_invalid_configuration_lists_every_problem(tmp_path):
    result = run_cli(['spectrum', '--alpha=0', '--mass=-1', '--out', tmp_path / 'x.json'])
    assert result.exit_code == EXIT_CONFIG
    assert 'alpha' in result.output
    assert 'mass' in result.output
    assert not (tmp_path / 'x.json').exists()


def test_unknown_config_key(tmp_path):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'alhpa': 2.0}))
    result = run_cli(['spectrum', '--config', config])
    assert result.exit_code == EXIT_CONFIG
    assert 'alhpa' in result.output


def test_unbound_state_writes_partial_file(tmp_path):
    out = tmp_path / 'spectrum.json'
    result = run_cli(['spectrum', '--beta', 0, '--gamma', 0.5, '--Nmax', 0, '--m', 0, '--m', 1, '--out', out])
    assert result.exit_code == EXIT_UNBOUND
    payload = read_json(out)
    check_schema(payload, 'spectrum')
    assert [(e['N'], e['n'], e['m']) for e in payload['entries']] == [(0, 0, 1)]
    assert payload['errors'][0]['m'] == 0


def test_iteration_cap():
    result = run_cli(['aim-trace', '--iters', 61])
    assert result.exit_code == EXIT_CAP


def test_aim_trace_radial(tmp_path):
    out = tmp_path / 'trace.json'
    result = run_cli(['aim-trace', '--channel', 'radial', '--ell', 0, '--iters', 4, '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    check_schema(payload, 'aim_trace')
    assert payload['parameter'] == 'nu'
    assert payload['iterations'][0]['roots'] == [1.0, 2.0]
    assert payload['iterations'][3]['roots'] == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert payload['stability']['drift'] == 0.0
    assert payload['stability']['flagged'] is False


def test_aim_trace_angular_csv(tmp_path):
    out = tmp_path / 'trace.csv'
    result = run_cli(['aim-trace', '--channel', 'angular', '--a', 0.5, '--b', 0.5, '--iters', 3, '--format', 'csv',
                      '--out', out])
    assert result.exit_code == 0, result.output
    lines = read_lines(out)
    assert lines[0] == 'n,index,root,certificate'
    assert lines[1].split(',')[:3] == ['1', '0', '2']


def test_aim_trace_rejects_point_outside_domain():
    result = run_cli(['aim-trace', '--channel', 'angular', '--x0', 1.5])
    assert result.exit_code == EXIT_CONFIG
    assert 'x0' in result.output


def test_wavefunction_csv(tmp_path):
    out = tmp_path / 'psi.csv'
    result = run_cli(['wavefunction'] + COUPLED_FLAGS + ['--state', 0, 0, 1, '--points', 11, '--out', out])
    assert result.exit_code == 0, result.output
    lines = read_lines(out)
    assert lines[0] == ','.join(WAVE_COLUMNS)
    assert len(lines) == 1 + 3 * 11
    first = [float(v) for v in lines[1].split(',')]
    assert first[0] == 0.0
    assert first[1] == 0.0
    check_sidecar(out)


def test_wavefunction_json(tmp_path):
    out = tmp_path / 'psi.json'
    result = run_cli(['wavefunction'] + COUPLED_FLAGS + ['--state', 1, 1, -1, '--points', 5, '--format', 'json',
                                                         '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    check_schema(payload, 'wavefunction')
    assert payload['radial']['nodes'] == 1
    assert payload['radial']['norm_analytic'] / payload['radial']['norm_numeric'] == pytest.approx(np.sqrt(2.0))


def test_wavefunction_unbound():
    result = run_cli(['wavefunction', '--beta', 0, '--gamma', 0.5, '--state', 0, 0, 0])
    assert result.exit_code == EXIT_UNBOUND


def test_sweep_csv(tmp_path):
    out = tmp_path / 'sweep.csv'
    result = run_cli(['sweep', '--beta', 0, '--Nmax', 0, '--m', 0, '--vary', 'gamma', '--start', 0, '--stop', 0.5,
                      '--samples', 3, '--out', out])
    assert result.exit_code == 0, result.output
    lines = read_lines(out)
    assert lines[0] == 'gamma,E_N0_n0_m0'
    rows = [[float(v) for v in line.split(',')] for line in lines[1:]]
    assert [r[0] for r in rows] == [0.0, 0.25, 0.5]
    assert rows[0][1] == pytest.approx(0.6)
    assert np.isnan(rows[1][1]) and np.isnan(rows[2][1])


def test_sweep_threads_match_serial(tmp_path):
    serial, threaded = tmp_path / 'a.csv', tmp_path / 'b.csv'
    args = ['sweep', '--beta', 0.2, '--m', 1, '--vary', 'gamma', '--start', -0.1, '--stop', 0.1, '--samples', 5]
    run_cli(args + ['--out', serial])
    run_cli(args + ['--jobs', 3, '--out', threaded])
    assert serial.read_bytes() == threaded.read_bytes()


def test_sweep_axis_range_checked():
    result = run_cli(['sweep', '--vary', 'alpha', '--start', 0, '--stop', 1])
    assert result.exit_code == EXIT_CONFIG


def test_run_config_validation():
    assert RunConfig().validate() == []
    problems = RunConfig(samples=0, state=(0, -1, 0), m_values=()).validate()
    assert len(problems) == 3
    with pytest.raises(ConfigError):
        RunConfig.from_sources({}, '/nonexistent/run.json')


@pytest.mark.slow
def test_verify_without_oracle(tmp_path):
    out = tmp_path / 'verify.json'
    result = run_cli(['verify', '--no-oracle', '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    check_schema(payload, 'verify')
    assert payload['passed'] is True


@pytest.mark.slow
def test_verify_fails_on_tight_tolerance():
    result = run_cli(['verify', '--no-oracle', '--tolerance', 1e-30])
    assert result.exit_code == EXIT_VERIFY
    assert 'FAIL' in result.output


@pytest.mark.slow
def test_spectrum_aim_deep_radial_states(tmp_path):
    out = tmp_path / 'spectrum.json'
    result = run_cli(['spectrum'] + COUPLED_FLAGS + ['--Nmax', 8, '--m', 1, '--method', 'aim', '--out', out])
    assert result.exit_code == 0, result.output
    entries = read_json(out)['entries']
    assert [e['N'] for e in entries] == list(range(9))
    assert all(e['source'] == 'aim' and e['residual'] < 1e-9 for e in entries)


@pytest.mark.slow
def test_aim_trace_float_mode(tmp_path):
    ell = 2 ** 0.5
    out = tmp_path / 'trace.json'
    result = run_cli(['aim-trace', '--channel', 'radial', '--ell', repr(ell), '--mode', 'float', '--iters', 10,
                      '--out', out])
    assert result.exit_code == 0, result.output
    payload = read_json(out)
    check_schema(payload, 'aim_trace')
    assert payload['iterations'][-1]['roots'] == pytest.approx([ell + 1 + N for N in range(11)], abs=1e-9)
    assert payload['stability']['drift'] < 1e-9
    assert payload['stability']['flagged'] is False
