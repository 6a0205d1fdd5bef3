import json
import subprocess
import sys

import pytest
from gmpy2 import mpq

from wlrecursion.cli import main, parse_grid
from wlrecursion.exppoly import ParameterError
from wlrecursion.tablefile import read_table


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.strip().splitlines()
    assert lines[0] == 'x,value'
    return [tuple(float(v) for v in ln.split(',')) for ln in lines[1:]]


def test_coeffs_roundtrip(tmp_path, capsys):
    path = tmp_path / 't.json'
    code, _, err = run(['coeffs', '--n', '2', '--a', '0', '--beta', '2',
                        '--out', str(path)], capsys)
    assert code == 0 and 'all identities passed' in err
    data = json.loads(path.read_text())
    assert data['params'] == {'n': 2, 'a': 0, 'beta': 2, 'gamma': 4}
    assert ['1', '2', '-1', '1'] == [str(v) for v in data['d'][2]]
    tb = read_table(path)
    assert tb.d == {(0, 0): 1, (1, 0): -2, (1, 2): -1, (2, 0): 1}
    code, out, _ = run(['eval', '--table', str(path), '--what', 'cdf',
                        '--grid', '0:1:2'], capsys)
    rows = csv_rows(out)
    assert code == 0 and rows[0] == (0.0, 0.0)
    assert abs(rows[2][1] - 0.031696959722285727) < 1e-15


def test_coeffs_term_counts(capsys):
    code, _, err = run(['coeffs', '--n', '5', '--a', '5', '--beta', '2'],
                       capsys)
    assert code == 0
    assert 'P terms 95 (formula 95), Q terms 121 (formula 121)' in err


def test_eval_conductance_uniform(capsys):
    code, out, _ = run(['eval', '--what', 'conductance', '--n1', '1',
                        '--n2', '1', '--beta', '2', '--grid', '0:1:4'],
                       capsys)
    assert code == 0
    assert [v for _, v in csv_rows(out)] == [1.0] * 5


def test_eval_fixed_trace(capsys):
    code, out, _ = run(['eval', '--n', '2', '--a', '0', '--beta', '2',
                        '--what', 'ft-pdf', '--grid', '1/2:1:2'], capsys)
    assert code == 0
    assert csv_rows(out) == [(0.5, 0.0), (0.75, 1.5), (1.0, 6.0)]


def test_verify_exact(capsys):
    code, out, _ = run(['verify', 'exact', '--n', '3', '--a', '2',
                        '--beta', '3'], capsys)
    report = json.loads(out)
    assert code == 0 and report['passed']
    names = [c['name'] for c in report['exact'][0]['checks']]
    assert 'Q_F(1) = 1' in names


def test_verify_mc(capsys):
    code, out, _ = run(['verify', 'mc', '--n1', '2', '--n2', '3', '--beta',
                        '2', '--samples', '20000'], capsys)
    report = json.loads(out)
    assert code == 0 and report['passed']
    assert report['mc'][0]['critical_value'] == pytest.approx(0.011526, 1e-4)


def test_exit_codes(capsys, tmp_path):
    assert run(['eval', '--what', 'conductance', '--n1', '1', '--n2', '1',
                '--beta', '1', '--grid', '0:1:2'], capsys)[0] == 2
    assert run(['coeffs', '--n', '0', '--a', '0', '--beta', '2'],
               capsys)[0] == 2
    assert run(['eval', '--table', str(tmp_path / 'missing.json'),
                '--what', 'pdf', '--grid', '0:1:1'], capsys)[0] == 2
    assert run(['eval', '--n', '2', '--a', '0', '--beta', '2', '--what',
                'cdf', '--grid=-1:1:2'], capsys)[0] == 2
    # a corrupted table file fails the identity check on load: exit 1
    bad = tmp_path / 'bad.json'
    run(['coeffs', '--n', '2', '--a', '0', '--beta', '2', '--out', str(bad)],
        capsys)
    data = json.loads(bad.read_text())
    data['d'][0][2] = '2'
    bad.write_text(json.dumps(data))
    code, _, err = run(['eval', '--table', str(bad), '--what', 'ft-cdf',
                        '--grid', '0:1:1'], capsys)
    assert code == 1 and 'verification failure' in err


def test_parse_grid():
    assert parse_grid('0:1:4') == [0, mpq(1, 4), mpq(1, 2), mpq(3, 4), 1]
    with pytest.raises(ParameterError):
        parse_grid('0:1')
    with pytest.raises(ParameterError):
        parse_grid('1:0:3')


def test_module_entry_point():
    res = subprocess.run([sys.executable, '-m', 'wlrecursion', 'coeffs',
                          '--n', '1', '--a', '0', '--beta', '2'],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)['d'] == [[0, 0, '1', '1'],
                                           [1, 0, '-1', '1']]
