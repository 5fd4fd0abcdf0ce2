"""Tests for the command line"""

import json

import pytest

from aomega_rota_baxter.alie import Window
from aomega_rota_baxter.cli import (
    EXIT_CONFIG,
    EXIT_DEGENERATE,
    EXIT_FAILED,
    EXIT_OK,
    WORKERS_ENV,
    join_option_values,
    main,
    parse_config
)
from aomega_rota_baxter.operators import FamilyR02


def _run(capsys, *argv: str):
    code = main(list(argv))
    captured = capsys.readouterr()
    document = json.loads(captured.out) if captured.out.strip().startswith('{') else None
    return code, document, captured


@pytest.mark.unit
def test_join_option_values():
    """Values that look like options stay attached to their option"""
    assert join_option_values(['verify', '--window', '-3..3', '--a', '-1/2']) == [
        'verify', '--window=-3..3', '--a=-1/2'
    ]
    assert join_option_values(['--global', '--window']) == ['--global', '--window']


@pytest.mark.unit
def test_parse_config():
    """Options before and after the subcommand are both accepted"""
    config = parse_config([
        '--format', 'text', 'verify', '--family', 'r02', '--m0', '1', '--a', '3',
        '--window', '-4..4', '--max-counterexamples', '0', '--workers', '2'
    ])
    assert config.command == 'verify'
    assert config.output_format == 'text'
    assert config.window == Window(-4, 4)
    assert config.operator == FamilyR02(1, 3)
    assert config.max_counterexamples is None
    assert config.workers == 2
    assert config.checks == ('rb',)
    assert config.scalar_mode == 'rational'
    config = parse_config(['verify', '--family', 'r02', '--m0', '1', '--a', 'sym'])
    assert config.scalar_mode == 'symbolic-a'
    assert config.window == Window(-10, 10)
    assert config.max_counterexamples == 32


@pytest.mark.unit
def test_verify_passes(capsys):
    """A Rota-Baxter operator passes every requested check"""
    code, document, _ = _run(
        capsys, 'verify', '--family', 'r02', '--m0', '1', '--a', '3',
        '--checks', 'rb,derivation-of-inverse,identities', '--window', '-6..6'
    )
    assert code == EXIT_OK
    assert document['passed']
    assert document['operator'] == {'family': 'r02', 'm0': 1, 'a': '3'}
    assert document['window'] == '-6..6'
    assert document['scalar_mode'] == 'rational'
    assert set(document['checks']) == {'rb', 'derivation-of-inverse', 'identities'}
    assert document['checks']['rb']['tuples_checked'] == 13 ** 3


@pytest.mark.unit
def test_verify_fails(capsys):
    """A failing check sets the exit code and lists counterexamples"""
    code, document, _ = _run(
        capsys, 'verify', '--support', '3=1,4=1', '--global', '--window', '-6..8'
    )
    assert code == EXIT_FAILED
    assert not document['passed']
    assert not document['checks']['global']['passed']
    assert document['checks']['rb']['counterexamples']


@pytest.mark.unit
def test_verify_degenerate(capsys):
    """A degenerate parameter stops the run unless it is skipped"""
    argv = [
        'verify', '--family', 'r03', '--m0', '7', '--s0', '2', '--a', '2', '--window', '-16..16'
    ]
    code, _, captured = _run(capsys, *argv)
    assert code == EXIT_DEGENERATE
    assert 'vanishes' in captured.err
    code, document, _ = _run(capsys, *argv, '--skip-degenerate')
    assert code == EXIT_OK
    assert document['checks']['rb']['tuples_skipped'] > 0


@pytest.mark.unit
@pytest.mark.parametrize('argv', [
    ['verify', '--family', 'r01', '--b', 'sym'],
    ['verify'],
    ['verify', '--family', 'r04', '--m1', '3', '--window', '5..1'],
    ['verify', '--family', 'r04', '--m1', '3', '--checks', 'unknown'],
    ['verify', '--family', 'r04', '--m1', '1'],
    ['verify', '--family', 'r02', '--m0', '1', '--a', '3', '--checks', 'global'],
    ['verify', '--family', 'r04', '--m1', '3', '--checks', 'derivation-of-inverse'],
    ['verify', '--spec', '[1, 2]'],
    ['classify', 'finite', '--range', '-20..20', '--max-size', '6', '--budget', '10'],
    ['unknown'],
])
def test_configuration_errors(capsys, argv):
    """Invalid configurations exit with the configuration code"""
    code, _, _ = _run(capsys, *argv)
    assert code == EXIT_CONFIG


@pytest.mark.unit
def test_verify_from_spec(capsys):
    """Operators may be given as JSON and scaled"""
    code, document, _ = _run(
        capsys, 'verify', '--spec', '{"family": "r05", "m1": 2, "b": "1/2"}',
        '--scale', '-3', '--global'
    )
    assert code == EXIT_OK
    assert document['operator'] == {'support': {'-1': '-3/2', '2': '-3'}}


@pytest.mark.regression
def test_classify(capsys):
    """The finite search with vanishing endpoints"""
    code, document, _ = _run(
        capsys, 'classify', 'finite', '--range', '-4..5', '--max-size', '2',
        '--min-size', '1', '--values', '1,-1,1/2,-1/2', '--pin', '0=0,1=0'
    )
    assert code == EXIT_OK
    assert document['count'] == 96
    assert document['range'] == '-4..5'
    assert document['pinned'] == {'0': '0', '1': '0'}
    labels = {solution['match']['label'] for solution in document['solutions']}
    assert labels == {'r04', 'r05'}


@pytest.mark.unit
def test_classify_pinned_endpoints(capsys):
    """Pinned endpoints are labelled r01"""
    code, document, _ = _run(
        capsys, 'classify', 'finite', '--range', '-2..3', '--max-size', '0',
        '--values', '1', '--pin', '0=1,1=7'
    )
    assert code == EXIT_OK
    assert document['count'] == 1
    match = document['solutions'][0]['match']
    assert match['label'] == 'r01'
    assert match['params'] == {'b': '7'}


@pytest.mark.unit
def test_induce(capsys):
    """Induced tables are written with their verification"""
    code, document, _ = _run(capsys, 'induce', '--family', 'r04', '--m1', '3')
    assert code == EXIT_OK
    assert document['triples'] == []
    assert document['verified'] == {'fundamental': True, 'rota_baxter': True}
    assert document['window'] == '-5..5'
    assert document['weight'] == '0'
    code, document, _ = _run(capsys, 'induce', '--family', 'r05', '--m1', '2', '--b', '1')
    assert code == EXIT_OK
    assert {'l': -1, 'm': 2, 'n': 3, 'coeff': '-8', 'out_index': 3} in document['triples']


@pytest.mark.regression
def test_induce_symbolic(capsys):
    """Symbolic tables render rational functions of a"""
    code, document, _ = _run(
        capsys, 'induce', '--family', 'r02', '--m0', '2', '--a', 'sym', '--window', '-3..3'
    )
    assert code == EXIT_OK
    assert document['operator']['a'] == 'sym'
    assert any('a' in entry['coeff'] for entry in document['triples'])


@pytest.mark.unit
def test_text_format(capsys):
    """Text output has one line per check"""
    code, _, captured = _run(
        capsys, '--format', 'text', 'verify', '--family', 'r04', '--m1', '3', '--global'
    )
    assert code == EXIT_OK
    lines = captured.out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith('rb: PASSED')
    assert lines[1].startswith('global: PASSED')


@pytest.mark.unit
def test_output_file(capsys, tmp_path):
    """The output can go to a file"""
    path = tmp_path / 'result.json'
    code, _, captured = _run(
        capsys, 'verify', '--family', 'r04', '--m1', '3', '--output', str(path)
    )
    assert code == EXIT_OK
    assert captured.out == ''
    assert json.loads(path.read_text(encoding='utf-8'))['passed']


@pytest.mark.unit
def test_workers_from_environment(capsys, monkeypatch):
    """The worker count defaults to the environment"""
    monkeypatch.setenv(WORKERS_ENV, '2')
    assert parse_config(['report']).workers == 2
    assert parse_config(['--workers', '3', 'report']).workers == 3
    code, document, _ = _run(capsys, 'verify', '--family', 'r02', '--m0', '1', '--a', '3')
    assert code == EXIT_OK
    assert document['passed']
    monkeypatch.setenv(WORKERS_ENV, 'many')
    code, _, captured = _run(capsys, 'verify', '--family', 'r04', '--m1', '3')
    assert code == EXIT_CONFIG
    assert WORKERS_ENV in captured.err


@pytest.mark.integration
def test_report(capsys):
    """Every entry of the reproduction catalogue passes"""
    code, document, _ = _run(capsys, 'report')
    assert code == EXIT_OK
    assert document['passed']
    assert all(entry['passed'] for entry in document['entries'].values())
    assert 'finite-classification' in document['entries']
