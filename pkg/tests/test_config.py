import pytest

from indpoly import config
from indpoly import engines
from indpoly import families


def test_defaults():
    run_config = config.load_config()
    assert run_config.engine == 'dp'
    assert run_config.output == 'json'
    assert run_config.jobs == 1
    assert run_config.bruteforce_limit == engines.BRUTEFORCE_LIMIT
    assert run_config.log_level == 'warning'
    assert (run_config.probe_t_min, run_config.probe_t_max) == (10, 40)
    assert run_config.slope_tolerance == pytest.approx(0.05)
    assert run_config.sweep_t_max == 12
    assert run_config.reproduce_engine == engines.CLOSED_FORM_ENGINE
    assert [str(case.family) for case in run_config.golden_cases] == [
        'TG,2,5',
        'TG,4,6',
        'TG,5,6',
    ]
    first = run_config.golden_cases[0]
    assert first.degree == 37
    assert first.violations == (34, 36)
    assert run_config.golden_cases[2].violations == (97, 99, 101, 103, 105)


def test_override(tmp_path):
    path = tmp_path / 'indpoly.yaml'
    path.write_text(
        'engine: recursive\n'
        'jobs: 4\n'
        'logging:\n'
        '    level: debug\n'
        'probe:\n'
        '    t-max: 20\n',
    )
    run_config = config.load_config(str(path))
    assert run_config.engine == 'recursive'
    assert run_config.jobs == 4
    assert run_config.log_level == 'debug'
    assert run_config.log_timestamps
    assert run_config.probe_t_min == 10
    assert run_config.probe_t_max == 20
    assert len(run_config.golden_cases) == 3


def test_override_cases(tmp_path):
    path = tmp_path / 'indpoly.yaml'
    path.write_text(
        'reproduce:\n'
        '    cases:\n'
        '      - family: S2,3\n'
        '        violations: []\n',
    )
    run_config = config.load_config(str(path))
    (case,) = run_config.golden_cases
    assert case.family == families.FamilySpec(families.FamilyKind.STAR2, t=3)
    assert case.violations == ()
    assert case.degree is None
    assert run_config.reproduce_engine == engines.CLOSED_FORM_ENGINE


@pytest.mark.parametrize(
    'text',
    [
        'engine: quantum\n',
        'jobs: 0\n',
        'bruteforce-limit: 31\n',
        'format: xml\n',
        'logging:\n    level: loud\n',
        'unknown-key: 1\n',
        'reproduce:\n    cases:\n      - family: TG,0,1\n'
        '        violations: []\n',
        '- just\n- a list\n',
        'engine: [unclosed\n',
    ],
)
def test_invalid(tmp_path, text):
    path = tmp_path / 'indpoly.yaml'
    path.write_text(text)
    with pytest.raises(config.ConfigError):
        config.load_config(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(config.ConfigError, match='cannot read config'):
        config.load_config(str(tmp_path / 'missing.yaml'))


def test_run_config_validation():
    spec = families.parse_family('P,3')
    with pytest.raises(config.ConfigError):
        config.RunConfig(family=spec, tree_path='trees.txt')
    with pytest.raises(config.ConfigError):
        config.RunConfig(engine='quantum')
    with pytest.raises(config.ConfigError):
        config.RunConfig(command='draw')
    run_config = config.RunConfig(family=spec).replace(output='csv')
    assert run_config.output == 'csv'
    assert run_config.family == spec
