import pytest

from indpoly import analysis
from indpoly import asymptotics
from indpoly import engines
from indpoly import polynomial
from indpoly.polynomial import DensePolynomial

P = DensePolynomial.of

GOLDEN = [
    (2, 5, (34, 36)),
    (4, 6, (78, 80, 82, 84)),
    (5, 6, (97, 99, 101, 103, 105)),
]


def _check_report(report):
    assert set(report.violations) <= set(range(1, report.degree))
    if not report.violations and all(c > 0 for c in report.coeffs):
        assert report.unimodal


def test_report_examples():
    report = analysis.log_concavity_report(engines.closed_form_TG(2, 5))
    assert report.degree == 37
    assert report.violations == (34, 36)
    assert len(report.diffs_sign) == 36
    assert report.diffs_sign[33] == '-'
    assert report.diff(34) < 0
    _check_report(report)

    binomial = analysis.log_concavity_report(P(1, 1) ** 8)
    assert binomial.violations == ()
    assert binomial.unimodal
    assert binomial.mode_index == 4

    report = analysis.log_concavity_report(P(1, 1, 2))
    assert report.violations == (1,)
    assert report.diff(1) == -1
    assert report.diffs_sign == '-'


def test_report_trivial():
    report = analysis.log_concavity_report(P(1, 1))
    assert report.trivially_log_concave
    assert report.log_concave
    assert report.diffs == ()
    assert report.diffs_sign == ''
    with pytest.raises(IndexError):
        report.diff(1)


def test_report_invalid():
    with pytest.raises(analysis.InvalidSequenceError):
        analysis.log_concavity_report(polynomial.ZERO)
    with pytest.raises(analysis.InvalidSequenceError):
        analysis.log_concavity_report(P(1, -1, 1))


def test_unimodal():
    assert analysis.is_unimodal([1, 3, 3, 2, 1])
    assert analysis.is_unimodal([5, 4, 1])
    assert not analysis.is_unimodal([1, 3, 1, 3])
    report = analysis.log_concavity_report(P(1, 3, 1, 3))
    assert not report.unimodal
    assert report.violations == (2,)


def test_random_tree_reports(random_trees):
    for tree in random_trees:
        report = analysis.log_concavity_report(engines.indpoly_dp(tree))
        _check_report(report)


@pytest.mark.parametrize('m', range(1, 4))
@pytest.mark.parametrize('t', range(0, 6))
def test_reflection_consistency(m, t):
    poly = engines.closed_form_TG(m, t)
    report = analysis.log_concavity_report(poly)
    reflected = analysis.log_concavity_report(polynomial.reflect(poly))
    _check_report(report)
    assert reflected.violations == tuple(
        sorted(report.degree - k for k in report.violations),
    )


@pytest.mark.parametrize('m', range(1, 4))
@pytest.mark.parametrize('t', range(0, 9))
def test_reflected_identities(m, t):
    assert analysis.verify_reflected_identities(m, t)


def test_reflected_identities_closed_form():
    assert analysis.verify_reflected_identities(
        2, 5, engine=engines.CLOSED_FORM_ENGINE,
    )


def test_reflected_identity_failure(monkeypatch, indpoly_log_capture):
    def corrupted(tree):
        return engines.indpoly_dp(tree) + polynomial.X

    monkeypatch.setitem(engines.ENGINES, 'dp', corrupted)
    with indpoly_log_capture.start_capture() as capture:
        mismatches = analysis.check_reflected_identities(1, 1)
    star = [m for m in mismatches if m.equation == analysis.IDENTITY_STAR]
    assert len(star) == 1
    assert star[0].index == 1
    assert star[0].expected == 3
    assert star[0].actual == 4
    assert capture.select(level='ERROR', equation=analysis.IDENTITY_STAR)

    assert not analysis.verify_reflected_identities(1, 1)
    with pytest.raises(analysis.IdentityMismatchError):
        analysis.verify_reflected_identities(1, 1, strict=True)


@pytest.mark.parametrize('m, t, expected', GOLDEN)
def test_golden_sweep(m, t, expected):
    result = analysis.theorem_sweep(m, t, t_min=t)
    row = result.row(t)
    assert row.violations == expected
    assert row.expected == expected
    assert row.pattern_matches
    assert analysis.expected_violations(m, t) == expected


@pytest.fixture(scope='module', name='sweeps')
def _sweeps():
    return {m: analysis.theorem_sweep(m, 12) for m in range(1, 6)}


@pytest.mark.parametrize('m', range(1, 6))
def test_theorem_sweep(sweeps, m):
    result = sweeps[m]
    assert [row.t for row in result.rows] == list(range(13))
    assert result.minimal_t is not None
    assert result.pattern_holds
    for row in result.rows:
        assert row.degree == 3 * (row.t + 1) * m + 1
        if row.t >= result.minimal_t:
            assert len(row.violations) == m
            assert row.violations == analysis.expected_violations(m, row.t)
    assert analysis.minimal_t(m, 12) == result.minimal_t


def test_minimal_t_bounds(sweeps):
    assert sweeps[2].minimal_t <= 5
    assert sweeps[5].minimal_t <= 6


@pytest.mark.parametrize('m', range(2, 6))
def test_sign_property(sweeps, m):
    for t in range(sweeps[m].minimal_t, 13):
        assert analysis.sign_property_holds(m, t)
        gaps = asymptotics.even_index_gaps(m, t)
        assert [k for k, _ in gaps] == list(range(0, 2 * m - 1, 2))


def test_minimal_t_not_found():
    rows = [
        analysis.SweepRow(t=0, degree=4, violations=(), expected=(3,)),
        analysis.SweepRow(t=1, degree=7, violations=(6,), expected=(6,)),
        analysis.SweepRow(t=2, degree=10, violations=(), expected=(9,)),
    ]
    assert analysis._minimal_t(1, rows) is None
    assert analysis._minimal_t(1, rows[:2]) == 1
    result = analysis.SweepResult(m=1, rows=tuple(rows), minimal_t=None)
    assert not result.pattern_holds


def test_sweep_parallel_matches_serial():
    serial = analysis.theorem_sweep(2, 6, t_min=3)
    parallel = analysis.theorem_sweep(2, 6, t_min=3, jobs=2)
    assert parallel == serial
