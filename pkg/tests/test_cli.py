import json

import pytest

from indpoly import cli
from indpoly import engines
from indpoly import families
from indpoly.polynomial import DensePolynomial


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build(capsys):
    assert _run(capsys, 'build', 'path', '2') == (0, '2:_,0\n', '')

    code, out, _ = _run(capsys, 'build', 'TG', '2', '5')
    assert code == 0
    assert out.startswith('70:_,0,')

    code, out, _ = _run(capsys, 'build', '--family', 'T,3,5', '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['n'] == 34
    assert payload['tree'].startswith('34:_,0,')


def test_compute(capsys):
    assert _run(capsys, 'compute', '--family', 'P,2') == (
        0,
        '{"coeffs":["1","2"]}\n',
        '',
    )
    _, out, _ = _run(capsys, 'compute', '--family', 'S2,0')
    assert out == '{"coeffs":["1","1"]}\n'

    code, out, _ = _run(
        capsys, 'compute', '--family', 'TG,2,5', '--engine', 'closed-form',
    )
    assert code == 0
    coeffs = json.loads(out)['coeffs']
    assert len(coeffs) == 38
    assert coeffs[0] == '1'


def test_compute_text(capsys):
    code, out, _ = _run(
        capsys, 'compute', '--family', 'P,3', '--format', 'text',
    )
    assert code == 0
    assert out == 'degree: 2\nx^0: 1\nx^1: 3\nx^2: 1\n'


def test_compute_tree_file(capsys, tmp_path):
    path = tmp_path / 'trees.txt'
    path.write_text('3:_,0,0\n\n2:_,0\n')
    code, out, _ = _run(
        capsys, 'compute', '--tree', str(path), '--engine', 'recursive',
    )
    assert code == 0
    assert out.splitlines() == [
        '{"coeffs":["1","3","1"]}',
        '{"coeffs":["1","2"]}',
    ]


def test_compute_bruteforce_limit(capsys):
    code, out, err = _run(
        capsys, 'compute', '--family', 'P,31', '--engine', 'bruteforce',
    )
    assert code == 1
    assert out == ''
    assert err.startswith('error: tree has 31 vertices')


def test_compute_deterministic(capsys):
    argv = ('compute', '--family', 'TG,1,3', '--engine', 'dp')
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    _, closed, _ = _run(
        capsys, 'compute', '--family', 'TG,1,3', '--engine', 'closed-form',
    )
    assert closed == first


def test_analyze(capsys):
    code, out, _ = _run(
        capsys, 'analyze', '--family', 'TG,2,5', '--engine', 'closed-form',
    )
    assert code == 0
    payload = json.loads(out)
    assert list(payload) == [
        'family',
        'degree',
        'coeffs',
        'violations',
        'diffs_sign',
        'unimodal',
    ]
    assert payload['family'] == {'kind': 'TG', 'm': 2, 't': 5}
    assert payload['degree'] == 37
    assert payload['violations'] == [34, 36]
    assert len(payload['diffs_sign']) == 36

    _, out, _ = _run(
        capsys, 'analyze', '--family', 'TG,2,5', '--format', 'text',
    )
    assert 'family: TG,2,5\n' in out
    assert 'violations: {34,36}\n' in out


def test_identities(capsys):
    code, out, _ = _run(capsys, 'identities', '2', '5')
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'TG(2,5):'
    assert len(lines) == 4
    assert all(line.endswith(': ok') for line in lines[1:])


def test_probe(capsys):
    code, out, _ = _run(
        capsys, 'probe', '2', '--k', '1', '--t-min', '10', '--t-max', '12',
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 't,k,c_k_bitlength,residual,predicted_exponent'
    assert len(lines) == 4
    t, k, bits, residual, exponent = lines[1].split(',')
    assert (t, k, exponent) == ('10', '1', '1')
    assert int(bits) > 10
    float(residual)


def test_probe_check(capsys):
    code, out, _ = _run(
        capsys, 'probe', '2', '--k', '3', '--check', '--format', 'json',
    )
    assert code == 0
    (probe,) = json.loads(out)['probes']
    assert probe['predicted_exponent'] == 4
    assert probe['passes']
    assert [point['t'] for point in probe['points']] == list(range(10, 41))


def test_sweep(capsys):
    code, out, _ = _run(capsys, 'sweep', '2', '--t-min', '5', '--t-max', '6')
    assert code == 0
    payload = json.loads(out)
    assert payload['m'] == 2
    assert payload['minimal_t'] == 5
    assert payload['pattern_holds']
    assert payload['rows'][0] == {
        't': 5,
        'degree': 37,
        'violations': [34, 36],
        'expected': [34, 36],
        'pattern_matches': True,
    }


def test_reproduce(capsys):
    code, out, _ = _run(capsys, 'reproduce')
    assert code == 0
    assert out == (
        'TG(2,5): {34,36} ✓\n'
        'TG(4,6): {78,80,82,84} ✓\n'
        'TG(5,6): {97,99,101,103,105} ✓\n'
    )

    code, out, _ = _run(capsys, 'reproduce', '--format', 'json')
    assert code == 0
    payload = json.loads(out)
    assert payload['passed']
    assert [case['computed'] for case in payload['cases']][0] == [34, 36]


def test_reproduce_mismatch(capsys, monkeypatch):
    def log_concave(spec):
        return DensePolynomial.of(1, 1) ** (3 * (spec.t + 1) * spec.m + 1)

    monkeypatch.setitem(
        engines.CLOSED_FORMS, families.FamilyKind.TG, log_concave,
    )
    code, out, err = _run(capsys, 'reproduce')
    assert code == 1
    assert out.splitlines()[0] == 'TG(2,5): {} ✗ expected {34,36}'
    assert 'text=Golden case mismatch' in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / 'out.json'
    code, out, _ = _run(
        capsys, 'compute', '--family', 'P,2', '--out', str(path),
    )
    assert code == 0
    assert out == ''
    assert path.read_text() == '{"coeffs":["1","2"]}\n'


@pytest.mark.parametrize(
    'argv',
    [
        ('compute', '--family', 'Q,1'),
        ('compute', '--family', 'P,\u00b2'),
        ('compute', '--family', 'TG,0,1'),
        ('compute',),
        ('compute', '--family', 'P,2', '--jobs', '0'),
        ('compute', '--tree', '/nonexistent/trees.txt'),
        ('compute', '--family', 'P,3', '--engine', 'closed-form', '--config',
         '/nonexistent/indpoly.yaml'),
        ('probe', '2', '--k', '5'),
    ],
)
def test_errors(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 1
    assert out == ''
    assert err.startswith('error: ')


def test_bad_tree_file(capsys, tmp_path):
    path = tmp_path / 'trees.txt'
    path.write_text('2:_,0\n2:_,5\n')
    code, _, err = _run(capsys, 'compute', '--tree', str(path))
    assert code == 1
    assert 'line 2, position 5' in err


def test_no_command():
    with pytest.raises(SystemExit) as exc_info:
        cli.main([])
    assert exc_info.value.code == 2


def test_text_reports(capsys):
    code, out, _ = _run(
        capsys, 'sweep', '2', '--t-min', '5', '--t-max', '5', '--format', 'text',
    )
    assert code == 0
    assert out == (
        'm=2 minimal_t=5 pattern=holds\n'
        't=5 degree=37 violations={34,36}\n'
    )

    code, out, _ = _run(
        capsys,
        'probe',
        '1',
        '--k',
        '0',
        '--t-min',
        '10',
        '--t-max',
        '11',
        '--format',
        'text',
    )
    assert code == 0
    assert out == 'tg m=1 k=0 u_k=0 slope=0.000000 PASS\n'


def test_compute_long_path_recursive(capsys):
    code, out, err = _run(
        capsys, 'compute', '--family', 'P,1200', '--engine', 'recursive',
    )
    assert code == 0
    assert err == ''
    _, expected, _ = _run(capsys, 'compute', '--family', 'P,1200')
    assert out == expected
