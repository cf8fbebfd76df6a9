"""
Payload builders and emitters for the command line: compact JSON with a
fixed key order, csv rows and jinja2-rendered text.
"""

import csv
import io
import json
import os
import typing

import jinja2

from . import analysis
from . import asymptotics
from . import polynomial
from . import trees

Payload = typing.Dict[str, typing.Any]

_TEMPLATES_DIR = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), 'templates',
)


def _residual(value: float) -> str:
    text = f'{value:.6f}'
    return '0.000000' if text == '-0.000000' else text


def _index_set(values: typing.Iterable[int]) -> str:
    return '{' + ','.join(str(v) for v in values) + '}'


def create_environment(
        loader: typing.Optional[jinja2.BaseLoader] = None,
) -> jinja2.Environment:
    if loader is None:
        loader = jinja2.FileSystemLoader(_TEMPLATES_DIR)
    env = jinja2.Environment(
        loader=loader,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters['index_set'] = _index_set
    env.filters['residual'] = _residual
    return env


def render_text(template_name: str, payload: Payload) -> str:
    template = create_environment().get_template(f'{template_name}.txt.jinja')
    return template.render(payload=payload)


def render_json(payload: typing.Any) -> str:
    return json.dumps(payload, separators=(',', ':'), ensure_ascii=False) + '\n'


def render_csv(
        header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence],
) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_output(text: str, out_path: typing.Optional[str], stream) -> None:
    if out_path is None:
        stream.write(text)
        stream.flush()
        return
    with open(out_path, 'w', encoding='utf-8', newline='') as fout:
        fout.write(text)


def tree_payload(tree: trees.RootedTree) -> Payload:
    return {'n': tree.n, 'tree': trees.serialize_tree(tree)}


def polynomial_payload(p: polynomial.DensePolynomial) -> Payload:
    return polynomial.to_json(p)


def analyze_payload(
        source: Payload, report: analysis.LogConcavityReport,
) -> Payload:
    return {
        'family': source,
        'degree': report.degree,
        'coeffs': [str(c) for c in report.coeffs],
        'violations': list(report.violations),
        'diffs_sign': report.diffs_sign,
        'unimodal': report.unimodal,
    }


def analyze_rows(report: analysis.LogConcavityReport):
    for k, coeff in enumerate(report.coeffs):
        if 1 <= k <= report.degree - 1:
            diff = report.diff(k)
            yield k, coeff, diff, int(diff < 0)
        else:
            yield k, coeff, '', 0


def identities_payload(
        m: int, t: int, mismatches: typing.Sequence[analysis.IdentityMismatch],
) -> Payload:
    failed = {mismatch.equation: mismatch for mismatch in mismatches}
    equations = []
    for equation in (
            analysis.IDENTITY_MAIN,
            analysis.IDENTITY_STAR,
            analysis.IDENTITY_TREE,
    ):
        mismatch = failed.get(equation)
        equations.append(
            {
                'equation': equation,
                'holds': mismatch is None,
                'index': None if mismatch is None else mismatch.index,
            },
        )
    return {
        'm': m,
        't': t,
        'holds': not mismatches,
        'equations': equations,
    }


def sweep_payload(result: analysis.SweepResult) -> Payload:
    return {
        'm': result.m,
        'minimal_t': result.minimal_t,
        'pattern_holds': result.pattern_holds,
        'rows': [
            {
                't': row.t,
                'degree': row.degree,
                'violations': list(row.violations),
                'expected': list(row.expected),
                'pattern_matches': row.pattern_matches,
            }
            for row in result.rows
        ],
    }


PROBE_CSV_HEADER = (
    't',
    'k',
    'c_k_bitlength',
    'residual',
    'predicted_exponent',
)


def probe_rows(probes: typing.Iterable[asymptotics.AsymptoticProbe]):
    for probe in probes:
        for t, bits, residual in zip(
                probe.t_values, probe.bit_lengths, probe.residuals,
        ):
            yield t, probe.k, bits, _residual(residual), probe.predicted_exponent


def probe_payload(
        probes: typing.Sequence[asymptotics.AsymptoticProbe],
        slope_tolerance: float,
) -> Payload:
    return {
        'slope_tolerance': slope_tolerance,
        'probes': [
            {
                'target': probe.target,
                'm': probe.m,
                'k': probe.k,
                'predicted_exponent': probe.predicted_exponent,
                'measured_slope': _residual(probe.measured_slope),
                'residuals_bounded': probe.residuals_bounded(),
                'passes': probe.passes(slope_tolerance),
                'points': [
                    {
                        't': t,
                        'c_k_bitlength': bits,
                        'residual': _residual(residual),
                    }
                    for t, bits, residual in zip(
                        probe.t_values, probe.bit_lengths, probe.residuals,
                    )
                ],
            }
            for probe in probes
        ],
    }
