import json
import subprocess
import sys

import numpy as np
import pytest

from fusionkit.cli import main, run
from fusionkit.fusionring import FusionTable, fusion_table
from fusionkit.repcore import LevelContext


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fuse(capsys):
    code, out, _ = call(capsys, 'fuse', '--n', '2', '--level', '1', '--f', '1,0', '--g', '1,0')
    assert code == 0
    data = json.loads(out)
    assert data['result'] == {'0,0': 1}
    assert data['method'] == 'folding' and data['residual'] == 0.0


def test_fuse_verlinde(capsys):
    code, out, _ = call(capsys, 'fuse', '--n', '3', '--level', '2', '--f', '1,1,0', '--g', '1,0,0',
                        '--method', 'verlinde')
    data = json.loads(out)
    assert code == 0 and data['result'] == {'0,0,0': 1, '2,1,0': 1}
    assert data['residual'] < 1e-6


def test_character(capsys):
    code, out, _ = call(capsys, 'character', '--n', '2', '--f', '1,0', '--at', '2,0:3,0')
    assert code == 0
    re, im = json.loads(out)['value']
    assert re == pytest.approx(5) and im == pytest.approx(0)


def test_tensor(capsys):
    code, out, _ = call(capsys, 'tensor', '--f', '1,0,0', '--g', '1,1,0')
    data = json.loads(out)
    assert data['result'] == {'0,0,0': 1, '2,1,0': 1}
    assert data['dimension'] == data['dimension_product'] == 9


def test_verify_fusion(capsys):
    code, out, _ = call(capsys, 'verify', '--suite', 'fusion', '--n', '3', '--level', '2')
    assert code == 0
    assert json.loads(out) == {'pass': True, 'pairs_checked': 36}


def test_table_round_trip(tmp_path, capsys):
    path = tmp_path / 'table.json'
    code, out, _ = call(capsys, 'table', '--n', '3', '--level', '2', '--out', str(path))
    assert code == 0
    table = fusion_table(LevelContext(3, 2))
    assert FusionTable.from_json(json.loads(path.read_text())) == table
    assert FusionTable.from_json(json.loads(out)) == table


def test_braid(capsys):
    code, out, _ = call(capsys, 'braid', '--n', '2', '--level', '2', '--case', 'A', '--g', '1,0')
    data = json.loads(out)
    assert code == 0
    assert data['channels']['in'] == ['0,0', '2,0']
    assert data['alpha'] == '1/8' and data['beta'] == '1/2'
    assert data['zeros'] == []
    assert np.array(data['matrix']).shape == (2, 2, 2)


def test_braid_case_b_zero_and_verify(capsys):
    code, out, _ = call(capsys, 'braid', '--n', '2', '--level', '1', '--case', 'B', '--f', '1,0',
                        '--h', '2,1')
    assert json.loads(out)['zeros'] == [['0,0', '2,0']]
    code, out, _ = call(capsys, 'braid', '--n', '2', '--level', '2', '--case', 'B', '--f', '0,0',
                        '--h', '1,1', '--verify')
    data = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(data['matrix_numeric'], data['matrix'], atol=1e-6)


def test_braid_case_d(capsys):
    code, out, _ = call(capsys, 'braid', '--n', '2', '--level', '1', '--case', 'D', '--f', '0,0',
                        '--h', '1,1')
    data = json.loads(out)
    assert code == 0 and data['abelian'] == [0.0, -1.0]


def test_transport_random(capsys):
    code, out, _ = call(capsys, 'transport', '--random', '--dim', '2', '--seed', '3', '--verify')
    data = json.loads(out)
    assert code == 0
    c = np.array(data['c_formula'])
    cn = np.array(data['c_numeric'])
    assert np.max(np.abs(c - cn)) <= 1e-6 * np.max(np.abs(c))


def test_transport_problem_file(tmp_path, capsys):
    path = tmp_path / 'p.json'
    path.write_text(json.dumps({'dim': 1, 'A': [[[0.3, 0]]], 'v': [[1, 0]], 'phi': [[1, 0]],
                                'alpha': [0, 0], 'beta': [-0.5, 0]}))
    code, out, _ = call(capsys, 'transport', '--problem', str(path))
    data = json.loads(out)
    assert code == 0
    assert data['c_formula'][0][0] == pytest.approx([0, -1], abs=1e-15)


@pytest.mark.parametrize('argv, code', [
    (['fuse', '--n', '2', '--level', '1', '--f', '2,0', '--g', '1,0'], 2),
    (['fuse', '--n', '2', '--f', '1,0', '--g', '1,0'], 1),
    (['fuse', '--n', '2', '--level', '1', '--f', 'x', '--g', '1,0'], 1),
    (['nonsense'], 1),
    ([], 1),
    (['transport', '--problem', '/nonexistent.json'], 1),
    (['character', '--n', '2', '--f', '1,0', '--at', '2,0:2,0'], 3),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    _, err = capsys.readouterr()
    assert err.startswith('fusionkit: ')


def test_invalid_transport_problem_is_numerical(tmp_path, capsys):
    path = tmp_path / 'p.json'
    path.write_text(json.dumps({'dim': 2, 'A': [[0, 0], [0, 1]], 'v': [1, 1], 'phi': [0.5, 0.5],
                                'alpha': 0, 'beta': 0.3}))
    code, _, err = call(capsys, 'transport', '--problem', str(path))
    assert code in (1, 3)
    assert 'positive integer' in err


def test_run_returns_result():
    res = run(['fuse', '--n', '2', '--level', '1', '--f', '1,0', '--g', '0,0'])
    assert res.status == 'ok' and res.exit_code == 0
    assert res.payload['result'] == {'1,0': 1}
    assert run(['fuse', '--n', '2']).status == 'argument_error'


def test_byte_identical_output(capsys):
    argv = ['table', '--n', '3', '--level', '2']
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv)
    assert a == b


def test_text_output(capsys):
    code, out, _ = call(capsys, 'fuse', '--n', '2', '--level', '1', '--f', '1,0', '--g', '1,0', '--text')
    assert code == 0
    assert 'result' in out and not out.lstrip().startswith('{')


def test_rtol_env(monkeypatch, capsys):
    monkeypatch.setenv('FUSIONKIT_RTOL', 'abc')
    assert main(['transport', '--random', '--dim', '1', '--verify']) == 1
    monkeypatch.setenv('FUSIONKIT_RTOL', '1e-6')
    assert main(['transport', '--random', '--dim', '1', '--verify']) == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, '-m', 'fusionkit', 'fuse', '--n', '2', '--level', '1',
                          '--f', '1,0', '--g', '1,0'], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)['result'] == {'0,0': 1}
