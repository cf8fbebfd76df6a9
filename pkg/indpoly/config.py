"""
Run configuration: packaged defaults from config.yaml, an optional user
yaml merged over them, and command-line overrides on top.
"""

import dataclasses
import logging
import os
import typing

import voluptuous
import yaml

from . import engines
from . import families
from .utils import logs

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), 'config.yaml',
)

COMMANDS = (
    'build',
    'compute',
    'analyze',
    'identities',
    'probe',
    'sweep',
    'reproduce',
)
OUTPUT_FORMATS = ('json', 'csv', 'text')


class BaseError(Exception):
    """Base class for exceptions of this module."""


class ConfigError(BaseError):
    pass


def _family(value):
    try:
        return families.parse_family(value)
    except families.FamilySpecError as exc:
        raise voluptuous.Invalid(str(exc))


CASE_SCHEMA = voluptuous.Schema(
    {
        voluptuous.Required('family'): voluptuous.All(str, _family),
        voluptuous.Required('violations'): [int],
        'degree': int,
    },
)

CONFIG_SCHEMA = voluptuous.Schema(
    {
        'engine': voluptuous.In(engines.ENGINE_NAMES),
        'format': voluptuous.In(OUTPUT_FORMATS),
        'jobs': voluptuous.All(int, voluptuous.Range(min=1)),
        'bruteforce-limit': voluptuous.All(
            int, voluptuous.Range(min=1, max=engines.BRUTEFORCE_LIMIT),
        ),
        'logging': {
            'level': voluptuous.In(logs.LOG_LEVELS),
            'timestamps': bool,
        },
        'probe': {
            't-min': voluptuous.All(int, voluptuous.Range(min=0)),
            't-max': voluptuous.All(int, voluptuous.Range(min=1)),
            'slope-tolerance': voluptuous.All(
                voluptuous.Coerce(float), voluptuous.Range(min=0),
            ),
        },
        'sweep': {'t-max': voluptuous.All(int, voluptuous.Range(min=1))},
        'reproduce': {
            'engine': voluptuous.In(engines.ENGINE_NAMES),
            'cases': [CASE_SCHEMA],
        },
    },
)


@dataclasses.dataclass(frozen=True)
class GoldenCase:
    family: families.FamilySpec
    violations: typing.Tuple[int, ...]
    degree: typing.Optional[int] = None


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: typing.Optional[str] = None
    family: typing.Optional[families.FamilySpec] = None
    tree_path: typing.Optional[str] = None
    engine: str = 'dp'
    output: str = 'json'
    out_path: typing.Optional[str] = None
    jobs: int = 1
    bruteforce_limit: int = engines.BRUTEFORCE_LIMIT
    log_level: str = 'warning'
    log_timestamps: bool = True
    probe_t_min: int = 10
    probe_t_max: int = 40
    slope_tolerance: float = 0.05
    sweep_t_max: int = 12
    reproduce_engine: str = engines.CLOSED_FORM_ENGINE
    golden_cases: typing.Tuple[GoldenCase, ...] = ()

    def __post_init__(self) -> None:
        if self.command is not None and self.command not in COMMANDS:
            raise ConfigError(f'unknown command {self.command!r}')
        if self.family is not None and self.tree_path is not None:
            raise ConfigError('--family and --tree are mutually exclusive')
        if self.engine not in engines.ENGINE_NAMES:
            raise ConfigError(f'unknown engine {self.engine!r}')
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f'unknown output format {self.output!r}')

    def replace(self, **changes: typing.Any) -> 'RunConfig':
        return dataclasses.replace(self, **changes)


def _load_yaml(path):
    with open(path, encoding='utf-8') as fin:
        return yaml.load(fin, getattr(yaml, 'CSafeLoader', yaml.SafeLoader))


def _merge(base: dict, override: dict) -> dict:
    result = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def load_config(path: typing.Optional[str] = None) -> RunConfig:
    """Loads the packaged defaults, merging the yaml at `path` over them."""
    data = _load_yaml(DEFAULT_CONFIG_PATH)
    if path is not None:
        try:
            user = _load_yaml(path)
        except OSError as exc:
            raise ConfigError(f'cannot read config {path}: {exc}')
        except yaml.YAMLError as exc:
            raise ConfigError(f'malformed config {path}: {exc}')
        if user is not None and not isinstance(user, dict):
            raise ConfigError(f'config {path} must be a mapping')
        data = _merge(data, user or {})
    try:
        data = CONFIG_SCHEMA(data)
    except voluptuous.Invalid as exc:
        raise ConfigError(f'invalid config: {exc}')

    cases = tuple(
        GoldenCase(
            family=case['family'],
            violations=tuple(case['violations']),
            degree=case.get('degree'),
        )
        for case in data['reproduce']['cases']
    )
    config = RunConfig(
        engine=data['engine'],
        output=data['format'],
        jobs=data['jobs'],
        bruteforce_limit=data['bruteforce-limit'],
        log_level=data['logging']['level'],
        log_timestamps=data['logging']['timestamps'],
        probe_t_min=data['probe']['t-min'],
        probe_t_max=data['probe']['t-max'],
        slope_tolerance=data['probe']['slope-tolerance'],
        sweep_t_max=data['sweep']['t-max'],
        reproduce_engine=data['reproduce']['engine'],
        golden_cases=cases,
    )
    logger.debug('Loaded config', extra={'fields': {'path': path or ''}})
    return config
