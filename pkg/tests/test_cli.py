import json
import pytest

from toricech.cli import run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_capacity(capsys):
    assert run(['capacity', '--domain', 'E(1,1)', '--k', '5']) == 0
    assert _json(capsys) == {'schema': 'toricech.capacity/1', 'domain': 'B(1)', 'k': 5, 'c': '2'}


def test_capacity_csv(capsys):
    assert run(['capacity', '--domain', 'P(2,1)', '--k', '4', '--format', 'csv']) == 0
    assert capsys.readouterr().out.splitlines() == ['schema,domain,k,c', 'toricech.capacity/1,"P(2,1)",4,4']


def test_index(capsys):
    assert run(['index', '--gen', 'h(1,1)']) == 0
    record = _json(capsys)
    assert (record['I'], record['J0'], record['L'], record['h'], record['e']) == (3, -1, 3, 1, 0)


def test_index_extended(capsys):
    assert run(['index', '--gen', 'e(1,1)^2 h(1,1)']) == 0
    record = _json(capsys)
    assert (record['I'], record['J0']) == (17, 4)

    assert run(['index', '--gen', 'h(1,1)^2']) == 1
    assert 'repeated' in capsys.readouterr().err
    assert run(['index', '--gen', 'h(1,1)^2', '--extended']) == 0
    record = _json(capsys)
    assert (record['I'], record['J0'], record['L']) == (8, 0, 6)


def test_action(capsys):
    assert run(['action', '--domain', 'P(2,1)', '--gen', 'e(1,0)^2 e(0,1)']) == 0
    assert _json(capsys)['action'] == '4'


def test_minimal(capsys):
    assert run(['minimal', '--domain', 'P(1,1)', '--k', '1']) == 0
    record = _json(capsys)
    assert record['generator'] is None and record['action'] is None

    assert run(['minimal', '--domain', 'B(1)', '--gen', 'e(1,1)^2']) == 0
    assert _json(capsys)['minimal'] is True

    assert run(['minimal', '--domain', 'B(7/3)', '--k', '2']) == 0
    record = _json(capsys)
    assert (record['generator'], record['action']) == ('e(1,1)', '7/3')


def test_check_excluded(capsys):
    assert run(['check', '--domain', 'P(2,1)', '--target', 'B(2.99)', '--gens', 'e(1,1)^4', '--jobs', '1']) == 0
    record = _json(capsys)
    assert record['verdict'] == 'excluded'
    assert record['target'] == 'B(299/100)'
    assert record['excluding_generator'] == 'e(1,1)^4'
    assert record['conditional'] is False
    assert 'nodes' in record['trace']


def test_check_writes_verifiable_certificates(capsys, tmp_path):
    path = tmp_path / 'certificates.json'
    argv = ['check', '--domain', 'P(2,1)', '--target', 'B(301/100)', '--gens', 'e(1,1)', 'e(1,1)^2',
            '--certificate-out', str(path), '--jobs', '1']
    assert run(argv) == 0
    record = _json(capsys)
    assert record['verdict'] == 'not-excluded'
    assert len(record['certificates']) == 2

    documents = json.loads(path.read_text())
    assert documents == record['certificates']
    assert run(['verify-certificate', str(path)]) == 0
    assert _json(capsys) == {'schema': 'toricech.verification/1', 'valid': True, 'certificates': 2}

    single = tmp_path / 'single.json'
    single.write_text(json.dumps(documents[1]))
    assert run(['verify-certificate', str(single)]) == 0
    capsys.readouterr()

    documents[1]['target'] = 'B(1)'
    path.write_text(json.dumps(documents))
    assert run(['verify-certificate', str(path)]) == 3
    assert 'certificate rejected' in capsys.readouterr().err


def test_verify_rejects_bad_documents(capsys, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"schema": ')
    assert run(['verify-certificate', str(path)]) == 3
    path.write_text('[1, 2]')
    assert run(['verify-certificate', str(path)]) == 3
    assert run(['verify-certificate', str(tmp_path / 'missing.json')]) == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        run(['capacity', '--domain', 'Q(1)', '--k', '1'])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        run(['bound', '--domain', 'P(2,1)', '--family', 'cube'])
    assert info.value.code == 1
    assert run(['capacity', '--domain', 'B(1)', '--k', '3', '--budget', '0']) == 1
    assert 'usage error' in capsys.readouterr().err


def test_budget_exit_code(capsys):
    assert run(['capacity', '--domain', 'B(1)', '--k', '12', '--budget', '3']) == 2
    assert capsys.readouterr().err.startswith('budget exceeded')


def test_non_minimal_target(capsys):
    assert run(['check', '--domain', 'P(2,1)', '--target', 'B(3)', '--gens', 'e(1,0)', '--jobs', '1']) == 1
    assert capsys.readouterr().err.startswith('error')


def test_enumerate(capsys):
    assert run(['enumerate', '--index', '5', '--format', 'csv']) == 0
    assert capsys.readouterr().out.splitlines() == ['generator,I', '"h(1,2)",5', '"h(2,1)",5']

    assert run(['enumerate', '--max-index', '4', '--all-e']) == 0
    generators = [entry['generator'] for entry in _json(capsys)['generators']]
    assert generators[0] == '1'
    assert 'e(1,1)' in generators and 'h(1,1)' not in generators


def test_scan_needs_a_grid(capsys):
    assert run(['scan', '--family', 'ball']) == 1
    assert '--grid' in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    argv = ['check', '--domain', 'P(2,1)', '--target', 'B(2)', '--gens', 'e(1,1)', 'e(1,1)^2', '--jobs', '1']
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
