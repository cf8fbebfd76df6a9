"""
Command line front end: builds tree families, computes independence
polynomials, checks log-concavity and reproduces the known violation sets.
"""

import argparse
import logging
import sys
import typing

from . import analysis
from . import asymptotics
from . import config as config_module
from . import engines
from . import families
from . import polynomial
from . import report
from . import trees
from .utils import logs

logger = logging.getLogger(__name__)

_KNOWN_ERRORS = (
    analysis.BaseError,
    asymptotics.BaseError,
    config_module.BaseError,
    engines.BaseError,
    families.BaseError,
    polynomial.BaseError,
    trees.BaseError,
)

_DEFAULT_FORMATS = {'build': 'text', 'probe': 'csv', 'reproduce': 'text'}

__EXAMPLES = """
Examples:
    indpoly build TG 2 5
    indpoly compute --family TG,2,5 --engine closed-form
    indpoly analyze --family TG,2,5 --format text
    indpoly identities 2 5
    indpoly probe 2 --k 3 --t-min 10 --t-max 40
    indpoly sweep 4 --t-max 12 --format text
    indpoly reproduce
"""


class _Source(typing.NamedTuple):
    label: str
    description: typing.Dict[str, typing.Any]
    tree: typing.Optional[trees.RootedTree]
    spec: typing.Optional[families.FamilySpec]


def _create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Path to a yaml config file')
    common.add_argument(
        '--log-level',
        choices=logs.LOG_LEVELS,
        help='Log level of the tskv log written to stderr',
    )
    common.add_argument(
        '--format',
        choices=config_module.OUTPUT_FORMATS,
        help='Output format',
    )
    common.add_argument('--out', help='Write output to this file')
    common.add_argument(
        '--jobs', type=int, help='Worker processes for per-t computations',
    )

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument(
        '--engine',
        choices=engines.ENGINE_NAMES,
        help='Independence polynomial engine',
    )

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument(
        '--family', help='Family instance: P,m | S2,t | T,m,t | TG,m,t',
    )
    group.add_argument('--tree', help='File with one tree per line')

    parser = argparse.ArgumentParser(
        prog='indpoly',
        description='Independence polynomials of trees and their breaks '
        'of log-concavity',
        epilog=__EXAMPLES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest='command', required=True)

    build = commands.add_parser(
        'build', parents=[common, source], help='Emit a family tree',
    )
    build.add_argument(
        'family_tokens',
        nargs='*',
        metavar='FAMILY',
        help='Family as separate tokens, e.g. "TG 2 5"',
    )

    commands.add_parser(
        'compute',
        parents=[common, engine, source],
        help='Compute the independence polynomial',
    )
    commands.add_parser(
        'analyze',
        parents=[common, engine, source],
        help='Report log-concavity of the independence polynomial',
    )

    identities = commands.add_parser(
        'identities',
        parents=[common, engine],
        help='Check the reflected identities of TG(m,t)',
    )
    identities.add_argument('m', type=int)
    identities.add_argument('t', type=int)

    probe = commands.add_parser(
        'probe',
        parents=[common],
        help='Probe the growth of reflected coefficients of TG(m,t)',
    )
    probe.add_argument('m', type=int)
    probe.add_argument(
        '--k',
        type=int,
        action='append',
        help='Coefficient index, repeatable (default: all k <= 2m)',
    )
    probe.add_argument('--t-min', type=int)
    probe.add_argument('--t-max', type=int)
    probe.add_argument(
        '--target', choices=asymptotics.TARGETS, default=asymptotics.TARGET_TG,
    )
    probe.add_argument(
        '--check',
        action='store_true',
        help='Exit with status 1 when a probe does not pass',
    )

    sweep = commands.add_parser(
        'sweep',
        parents=[common, engine],
        help='Violation sets of TG(m,t) for a range of t',
    )
    sweep.add_argument('m', type=int)
    sweep.add_argument('--t-min', type=int, default=0)
    sweep.add_argument('--t-max', type=int)

    commands.add_parser(
        'reproduce',
        parents=[common, engine],
        help='Check the known violation sets of TG(2,5), TG(4,6), TG(5,6)',
    )
    return parser


def _make_config(args: argparse.Namespace) -> config_module.RunConfig:
    config = config_module.load_config(args.config)
    changes: typing.Dict[str, typing.Any] = {
        'command': args.command,
        'output': args.format
        or _DEFAULT_FORMATS.get(args.command, config.output),
        'out_path': args.out,
    }
    if args.log_level:
        changes['log_level'] = args.log_level
    if args.jobs is not None:
        if args.jobs < 1:
            raise config_module.ConfigError('--jobs must be positive')
        changes['jobs'] = args.jobs
    if getattr(args, 'engine', None):
        changes['engine'] = args.engine
        if args.command == 'reproduce':
            changes['reproduce_engine'] = args.engine

    family_text = getattr(args, 'family', None)
    tokens = getattr(args, 'family_tokens', None)
    if tokens:
        if family_text:
            raise config_module.ConfigError(
                'family given both as --family and as arguments',
            )
        family_text = ','.join(tokens)
    if family_text:
        changes['family'] = families.parse_family(family_text)
    if getattr(args, 'tree', None):
        changes['tree_path'] = args.tree
    return config.replace(**changes)


def _load_sources(config: config_module.RunConfig) -> typing.List[_Source]:
    if config.family is not None:
        spec = config.family
        return [_Source(str(spec), spec.as_dict(), None, spec)]
    if config.tree_path is None:
        raise config_module.ConfigError('either --family or --tree is required')
    try:
        with open(config.tree_path, encoding='utf-8') as fin:
            text = fin.read()
    except OSError as exc:
        raise config_module.ConfigError(
            f'cannot read tree file {config.tree_path}: {exc}',
        )
    forest = trees.parse_forest(text)
    if not forest:
        raise trees.TreeFormatError('tree file is empty')
    return [
        _Source(
            trees.serialize_tree(tree),
            {'kind': 'tree', 'n': tree.n},
            tree,
            None,
        )
        for tree in forest
    ]


def _compute(
        config: config_module.RunConfig, source: _Source,
) -> polynomial.DensePolynomial:
    tree = source.tree
    if config.engine == 'bruteforce':
        if tree is None:
            tree = families.build_family(source.spec)
        if tree.n > config.bruteforce_limit:
            raise engines.TreeTooLargeError(tree.n, config.bruteforce_limit)
    return engines.compute(config.engine, tree=tree, spec=source.spec)


def _emit_many(
        config: config_module.RunConfig,
        template: str,
        payloads: typing.Sequence[report.Payload],
        csv_header: typing.Sequence[str],
        csv_rows: typing.Sequence[typing.Sequence],
        stdout,
) -> None:
    if config.output == 'json':
        text = ''.join(report.render_json(p) for p in payloads)
    elif config.output == 'csv':
        text = report.render_csv(csv_header, csv_rows)
    else:
        text = ''.join(report.render_text(template, p) for p in payloads)
    report.write_output(text, config.out_path, stdout)


def cmd_build(config: config_module.RunConfig, stdout) -> int:
    sources = _load_sources(config)
    payloads = []
    for source in sources:
        tree = source.tree or families.build_family(source.spec)
        payloads.append(report.tree_payload(tree))
    _emit_many(
        config,
        'tree',
        payloads,
        ('n', 'tree'),
        [(p['n'], p['tree']) for p in payloads],
        stdout,
    )
    return 0


def cmd_compute(config: config_module.RunConfig, stdout) -> int:
    payloads = []
    rows = []
    for index, source in enumerate(_load_sources(config)):
        poly = _compute(config, source)
        payloads.append(report.polynomial_payload(poly))
        rows.extend((index, k, c) for k, c in enumerate(poly.coeffs))
    if config.output == 'text':
        payloads = [
            {'degree': len(p['coeffs']) - 1, 'coeffs': p['coeffs']}
            for p in payloads
        ]
    _emit_many(
        config, 'compute', payloads, ('tree', 'k', 'coeff'), rows, stdout,
    )
    return 0


def cmd_analyze(config: config_module.RunConfig, stdout) -> int:
    payloads = []
    rows = []
    for index, source in enumerate(_load_sources(config)):
        poly_report = analysis.log_concavity_report(_compute(config, source))
        payload = report.analyze_payload(source.description, poly_report)
        if config.output == 'text':
            payload = {**payload, 'label': source.label}
        payloads.append(payload)
        rows.extend(
            (index, *row) for row in report.analyze_rows(poly_report)
        )
    _emit_many(
        config,
        'analyze',
        payloads,
        ('tree', 'k', 'coeff', 'diff', 'violation'),
        rows,
        stdout,
    )
    return 0


def cmd_identities(
        config: config_module.RunConfig, m: int, t: int, stdout,
) -> int:
    mismatches = analysis.check_reflected_identities(m, t, engine=config.engine)
    payload = report.identities_payload(m, t, mismatches)
    _emit_many(
        config,
        'identities',
        [payload],
        ('equation', 'holds', 'index'),
        [
            (e['equation'], int(e['holds']), '' if e['index'] is None else e['index'])
            for e in payload['equations']
        ],
        stdout,
    )
    return 0 if payload['holds'] else 1


def cmd_probe(
        config: config_module.RunConfig,
        m: int,
        ks: typing.Optional[typing.Sequence[int]],
        target: str,
        t_min: typing.Optional[int],
        t_max: typing.Optional[int],
        check: bool,
        stdout,
) -> int:
    t_values = range(
        config.probe_t_min if t_min is None else t_min,
        (config.probe_t_max if t_max is None else t_max) + 1,
    )
    probes = []
    if target == asymptotics.TARGET_GAP:
        if ks is None:
            ks = range(0, 2 * m - 1, 2)
        for k in ks:
            if k % 2:
                raise asymptotics.ProbeRangeError(
                    f'gap probe needs an even k, got k={k}',
                )
            probes.append(
                asymptotics.gap_probe(m, k // 2, t_values, jobs=config.jobs),
            )
    else:
        for k in range(2 * m + 1) if ks is None else ks:
            probes.append(
                asymptotics.asymptotic_probe(
                    m, k, t_values, target=target, jobs=config.jobs,
                ),
            )
    _emit_many(
        config,
        'probe',
        [report.probe_payload(probes, config.slope_tolerance)],
        report.PROBE_CSV_HEADER,
        list(report.probe_rows(probes)),
        stdout,
    )
    if check and not all(p.passes(config.slope_tolerance) for p in probes):
        return 1
    return 0


def cmd_sweep(
        config: config_module.RunConfig,
        m: int,
        t_min: int,
        t_max: typing.Optional[int],
        stdout,
) -> int:
    result = analysis.theorem_sweep(
        m,
        config.sweep_t_max if t_max is None else t_max,
        t_min=t_min,
        engine=config.engine,
        jobs=config.jobs,
    )
    payload = report.sweep_payload(result)
    _emit_many(
        config,
        'sweep',
        [payload],
        ('t', 'degree', 'violations', 'expected', 'pattern_matches'),
        [
            (
                row['t'],
                row['degree'],
                ' '.join(map(str, row['violations'])),
                ' '.join(map(str, row['expected'])),
                int(row['pattern_matches']),
            )
            for row in payload['rows']
        ],
        stdout,
    )
    return 0


def reproduce_payload(config: config_module.RunConfig) -> report.Payload:
    cases = []
    for case in config.golden_cases:
        spec = case.family
        poly = engines.compute(config.reproduce_engine, spec=spec)
        poly_report = analysis.log_concavity_report(poly)
        passed = poly_report.violations == case.violations and (
            case.degree is None or poly_report.degree == case.degree
        )
        if not passed:
            logger.error(
                'Golden case mismatch',
                extra={
                    'fields': {
                        'family': str(spec),
                        'expected': ','.join(map(str, case.violations)),
                        'computed': ','.join(
                            map(str, poly_report.violations),
                        ),
                    },
                },
            )
        cases.append(
            {
                'family': str(spec),
                'label': f'{spec.kind.value}({spec.m},{spec.t})',
                'degree': poly_report.degree,
                'expected_degree': case.degree,
                'expected': list(case.violations),
                'computed': list(poly_report.violations),
                'passed': passed,
            },
        )
    return {
        'passed': all(case['passed'] for case in cases),
        'cases': cases,
    }


def cmd_reproduce(config: config_module.RunConfig, stdout) -> int:
    payload = reproduce_payload(config)
    _emit_many(
        config,
        'reproduce',
        [payload],
        ('family', 'expected', 'computed', 'passed'),
        [
            (
                case['family'],
                ' '.join(map(str, case['expected'])),
                ' '.join(map(str, case['computed'])),
                int(case['passed']),
            )
            for case in payload['cases']
        ],
        stdout,
    )
    return 0 if payload['passed'] else 1


def _run(args: argparse.Namespace, stdout) -> int:
    config = _make_config(args)
    logs.setup_logging(config.log_level, timestamps=config.log_timestamps)
    logger.info(
        'Running command',
        extra={'fields': {'command': config.command, 'engine': config.engine}},
    )
    if args.command == 'build':
        return cmd_build(config, stdout)
    if args.command == 'compute':
        return cmd_compute(config, stdout)
    if args.command == 'analyze':
        return cmd_analyze(config, stdout)
    if args.command == 'identities':
        return cmd_identities(config, args.m, args.t, stdout)
    if args.command == 'probe':
        return cmd_probe(
            config,
            args.m,
            args.k,
            args.target,
            args.t_min,
            args.t_max,
            args.check,
            stdout,
        )
    if args.command == 'sweep':
        return cmd_sweep(config, args.m, args.t_min, args.t_max, stdout)
    return cmd_reproduce(config, stdout)


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = _create_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, sys.stdout)
    except _KNOWN_ERRORS as exc:
        sys.stderr.write(f'error: {exc}\n')
        return 1


if __name__ == '__main__':
    sys.exit(main())
