"""
Tests for the command line interface
"""

import json

import pytest
import yaml
from click.testing import CliRunner

from app import cli
from config import get_scenario_path
from utils.scenario_loader import load_scenario, scenario_from_dict
from utils.trace_logger import TRACE_FIELDS, read_trace


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:  # click >= 8.2 always keeps stderr separate
        return CliRunner()


def write_yaml(path, doc):
    path.write_text(yaml.safe_dump(doc))
    return str(path)


def test_run_writes_every_output(runner, tmp_path):
    trace, pattern, svg = tmp_path / 'out' / 'trace.jsonl', tmp_path / 'pattern.csv', tmp_path / 'plot.svg'
    result = runner.invoke(cli, ['run', 'exp_4_1', '--trace', str(trace), '--pattern', str(pattern),
                                 '--svg', str(svg)])
    assert result.exit_code == 0, result.stderr
    assert 'exp_4_1: MaxTicks after 150 ticks' in result.stdout

    header, *records = read_trace(str(trace))
    assert header['format'] == 'ibenet-trace'
    assert header['fields'] == TRACE_FIELDS
    assert len(records) == 150
    assert list(records[0]) == TRACE_FIELDS

    assert pattern.read_text().splitlines()[0] == 'action,start_tick,end_tick'
    summary = json.loads((tmp_path / 'pattern.summary.json').read_text())
    assert summary['first_drive_winner'] == 'Thirst'
    assert summary['ticks'] == 150
    assert svg.read_text().lstrip().startswith('<?xml')


def test_same_seed_trace_files_are_identical(runner, tmp_path):
    paths = [tmp_path / 'a.jsonl', tmp_path / 'b.jsonl']
    for path in paths:
        result = runner.invoke(cli, ['run', 'exp_4_3', '--seed', '7', '--ticks', '60', '--trace', str(path)])
        assert result.exit_code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_death_is_reported(runner):
    result = runner.invoke(cli, ['run', 'deprivation'])
    assert result.exit_code == 0
    assert 'Animat died at tick 63' in result.stdout


def test_malformed_file_writes_nothing(runner, tmp_path):
    broken = tmp_path / 'broken.yaml'
    broken.write_text("world: {bounds: [1, 2\n")
    trace = tmp_path / 'trace.jsonl'
    result = runner.invoke(cli, ['run', str(broken), '--trace', str(trace)])
    assert result.exit_code == 2
    assert 'Malformed scenario file' in result.stderr
    assert not trace.exists()


def test_missing_file(runner, tmp_path):
    result = runner.invoke(cli, ['run', str(tmp_path / 'absent.yaml')])
    assert result.exit_code == 2
    assert 'not found' in result.stderr


def test_zero_ticks_is_a_usage_error(runner):
    result = runner.invoke(cli, ['run', 'exp_4_1', '--ticks', '0'])
    assert result.exit_code == 2
    assert 'max_ticks: must be > 0' in result.stderr


def test_validate_echo_reloads_to_same_configuration(runner):
    result = runner.invoke(cli, ['validate', 'exp_4_2'])
    assert result.exit_code == 0
    echoed = scenario_from_dict(yaml.safe_load(result.stdout))
    assert echoed == load_scenario(get_scenario_path('exp_4_2'))


def test_validate_reports_field_paths(runner, tmp_path):
    doc = {'world': {'bounds': {'min': [0, 0], 'max': [10, 10]}},
           'animat': {'position': [5, 5]}, 'internal': {'thirst': -0.5}}
    result = runner.invoke(cli, ['validate', write_yaml(tmp_path / 'neg.yaml', doc)])
    assert result.exit_code == 2
    assert 'internal.thirst' in result.stderr

    doc['internal'] = {'thirst': 0.5}
    doc['weather'] = 'rain'
    result = runner.invoke(cli, ['validate', write_yaml(tmp_path / 'unknown.yaml', doc)])
    assert result.exit_code == 2
    assert 'weather: unknown key' in result.stderr


def test_batch_single_run(runner, tmp_path):
    out = tmp_path / 'batch.csv'
    result = runner.invoke(cli, ['batch', 'search', '--runs', '1', '--seed-base', '5', '--out', str(out)])
    assert result.exit_code == 0, result.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == 'variant,seed,first_drink_tick,censored,termination'
    assert len(lines) == 2
    assert lines[1].startswith('explore,5,')
    assert 'explore' in result.stdout


def test_unwritable_output_removes_partial_files(runner, tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('not a directory')
    trace = tmp_path / 'trace.jsonl'
    result = runner.invoke(cli, ['run', 'exp_4_1', '--ticks', '20', '--trace', str(trace),
                                 '--svg', str(blocker / 'plot.svg')])
    assert result.exit_code == 2
    assert 'Cannot write output' in result.stderr
    assert not trace.exists()


def test_bad_option_is_a_usage_error(runner):
    result = runner.invoke(cli, ['batch', 'search', '--variant', 'random'])
    assert result.exit_code == 2


def test_non_utf8_file_is_a_usage_error(runner, tmp_path):
    path = tmp_path / 'binary.yaml'
    path.write_bytes(b'name: \xff\xfe bad\n')
    result = runner.invoke(cli, ['validate', str(path)])
    assert result.exit_code == 2
    assert 'Malformed scenario file' in result.stderr
    assert 'not UTF-8' in result.stderr


def test_unreadable_file_is_a_usage_error(runner, tmp_path, monkeypatch):
    path = tmp_path / 'locked.yaml'
    path.write_text('name: locked\n')

    def deny(_path):
        raise PermissionError(13, 'Permission denied', _path)

    monkeypatch.setattr('app.load_scenario', deny)
    result = runner.invoke(cli, ['run', str(path)])
    assert result.exit_code == 2
    assert 'Cannot read scenario file' in result.stderr


def test_validate_rejects_nan(runner, tmp_path):
    doc = {'world': {'bounds': {'min': [0, 0], 'max': [10, 10]}},
           'animat': {'position': [5, 5], 'theta': float('nan')}}
    result = runner.invoke(cli, ['validate', write_yaml(tmp_path / 'nan.yaml', doc)])
    assert result.exit_code == 2
    assert 'animat.theta: must be finite' in result.stderr
