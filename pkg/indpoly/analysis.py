"""
Log-concavity of coefficient sequences, the reflected identities behind
R I(TG_{m,t}), and sweeps over t of the violation sets of I(TG_{m,t}).
"""

import dataclasses
import logging
import typing

from . import asymptotics
from . import engines
from . import families
from . import polynomial
from .polynomial import DensePolynomial
from .utils import workers

logger = logging.getLogger(__name__)


class BaseError(Exception):
    """Base class for exceptions of this module."""


class InvalidSequenceError(BaseError):
    pass


class IdentityMismatchError(BaseError):
    def __init__(self, mismatches: typing.Sequence['IdentityMismatch']):
        self.mismatches = list(mismatches)
        super().__init__('; '.join(str(m) for m in self.mismatches))


@dataclasses.dataclass(frozen=True)
class LogConcavityReport:
    """
    `diffs[k - 1]` holds a_k^2 - a_{k-1} a_{k+1} for 1 <= k <= degree - 1.
    """

    degree: int
    coeffs: typing.Tuple[int, ...]
    diffs: typing.Tuple[int, ...]
    violations: typing.Tuple[int, ...]
    unimodal: bool
    mode_index: int
    trivially_log_concave: bool = False

    def diff(self, k: int) -> int:
        if not 1 <= k <= self.degree - 1:
            raise IndexError(f'k={k} is outside 1..{self.degree - 1}')
        return self.diffs[k - 1]

    @property
    def log_concave(self) -> bool:
        return not self.violations

    @property
    def diffs_sign(self) -> str:
        return ''.join(
            '+' if d > 0 else '-' if d < 0 else '0' for d in self.diffs
        )


def is_unimodal(coeffs: typing.Sequence[int]) -> bool:
    index = 0
    while index + 1 < len(coeffs) and coeffs[index] <= coeffs[index + 1]:
        index += 1
    while index + 1 < len(coeffs) and coeffs[index] >= coeffs[index + 1]:
        index += 1
    return index + 1 >= len(coeffs)


def log_concavity_report(p: DensePolynomial) -> LogConcavityReport:
    if p.is_zero():
        raise InvalidSequenceError('zero polynomial has no coefficients')
    coeffs = p.coeffs
    if any(c < 0 for c in coeffs):
        raise InvalidSequenceError('coefficients must be nonnegative')

    degree = len(coeffs) - 1
    mode_index = coeffs.index(max(coeffs))
    unimodal = is_unimodal(coeffs)
    if degree < 2:
        return LogConcavityReport(
            degree=degree,
            coeffs=coeffs,
            diffs=(),
            violations=(),
            unimodal=unimodal,
            mode_index=mode_index,
            trivially_log_concave=True,
        )

    diffs = tuple(
        coeffs[k] ** 2 - coeffs[k - 1] * coeffs[k + 1]
        for k in range(1, degree)
    )
    violations = tuple(k for k, d in enumerate(diffs, start=1) if d < 0)
    return LogConcavityReport(
        degree=degree,
        coeffs=coeffs,
        diffs=diffs,
        violations=violations,
        unimodal=unimodal,
        mode_index=mode_index,
    )


@dataclasses.dataclass(frozen=True)
class IdentityMismatch:
    equation: str
    index: int
    expected: int
    actual: int

    def __str__(self) -> str:
        return (
            f'{self.equation}: first difference at x^{self.index}, '
            f'{self.actual} != {self.expected}'
        )


IDENTITY_MAIN = 'R I(TG) = (x+1) R I(T3)^m + R I(S2)^(3m)'
IDENTITY_STAR = 'R I(S2) = (x+1)^t + x (x+2)^t'
IDENTITY_TREE = 'R I(T3) = R I(S2)^3 + x^2 (x+2)^(3t)'


def check_reflected_identities(
        m: int, t: int, *, engine: str = 'dp',
) -> typing.List[IdentityMismatch]:
    """
    Computes R I(TG_{m,t}), R I(T_{3,t}) and R I(S_{2,t}) with `engine` and
    compares them with the binomial right-hand sides. Returns the failed
    identities, empty when all hold.
    """
    if m < 1 or t < 0:
        raise families.FamilySpecError(
            f'TG: m >= 1, t >= 0 required, got m={m}, t={t}',
        )
    x_plus_1 = DensePolynomial.of(1, 1)
    x_plus_2 = DensePolynomial.of(2, 1)

    def reflected(spec: families.FamilySpec) -> DensePolynomial:
        return polynomial.reflect(engines.compute(engine, spec=spec))

    ri_tg = reflected(families.FamilySpec(families.FamilyKind.TG, m=m, t=t))
    ri_t3 = reflected(families.FamilySpec(families.FamilyKind.T, m=3, t=t))
    ri_s2 = reflected(families.FamilySpec(families.FamilyKind.STAR2, t=t))

    checks = [
        (IDENTITY_MAIN, ri_tg, x_plus_1 * ri_t3 ** m + ri_s2 ** (3 * m)),
        (
            IDENTITY_STAR,
            ri_s2,
            x_plus_1 ** t + polynomial.X * x_plus_2 ** t,
        ),
        (
            IDENTITY_TREE,
            ri_t3,
            ri_s2 ** 3 + polynomial.shift(x_plus_2 ** (3 * t), 2),
        ),
    ]
    mismatches = []
    for equation, actual, expected in checks:
        index = polynomial.first_difference(actual, expected)
        if index is None:
            continue
        mismatch = IdentityMismatch(
            equation=equation,
            index=index,
            expected=expected[index],
            actual=actual[index],
        )
        logger.error(
            'Reflected identity failed',
            extra={
                'fields': {
                    'm': m,
                    't': t,
                    'equation': equation,
                    'index': index,
                },
            },
        )
        mismatches.append(mismatch)
    return mismatches


def verify_reflected_identities(
        m: int, t: int, *, engine: str = 'dp', strict: bool = False,
) -> bool:
    mismatches = check_reflected_identities(m, t, engine=engine)
    if mismatches and strict:
        raise IdentityMismatchError(mismatches)
    return not mismatches


def expected_violations(m: int, t: int) -> typing.Tuple[int, ...]:
    """Indices alpha - 1 - 2j for 0 <= j < m, ascending."""
    alpha = asymptotics.tg_degree(m, t)
    return tuple(sorted(alpha - 1 - 2 * j for j in range(m)))


@dataclasses.dataclass(frozen=True)
class SweepRow:
    t: int
    degree: int
    violations: typing.Tuple[int, ...]
    expected: typing.Tuple[int, ...]

    @property
    def count_matches(self) -> bool:
        return len(self.violations) == len(self.expected)

    @property
    def pattern_matches(self) -> bool:
        return self.violations == self.expected


@dataclasses.dataclass(frozen=True)
class SweepResult:
    m: int
    rows: typing.Tuple[SweepRow, ...]
    minimal_t: typing.Optional[int]

    @property
    def pattern_holds(self) -> bool:
        """Violations sit at alpha - 1 - 2j for every t >= minimal_t."""
        if self.minimal_t is None:
            return False
        return all(
            row.pattern_matches for row in self.rows if row.t >= self.minimal_t
        )

    def row(self, t: int) -> SweepRow:
        for row in self.rows:
            if row.t == t:
                return row
        raise KeyError(t)


def _sweep_row(args: typing.Tuple[int, int, str]) -> SweepRow:
    m, t, engine = args
    spec = families.FamilySpec(families.FamilyKind.TG, m=m, t=t)
    report = log_concavity_report(engines.compute(engine, spec=spec))
    row = SweepRow(
        t=t,
        degree=report.degree,
        violations=report.violations,
        expected=expected_violations(m, t),
    )
    logger.info(
        'Swept TG instance',
        extra={
            'fields': {
                'family': str(spec),
                'violations': ','.join(map(str, row.violations)),
            },
        },
    )
    return row


def _minimal_t(m: int, rows: typing.Sequence[SweepRow]) -> typing.Optional[int]:
    result = None
    for row in reversed(rows):
        if len(row.violations) != m:
            break
        result = row.t
    return result


def theorem_sweep(
        m: int,
        t_max: int,
        *,
        t_min: int = 0,
        engine: str = engines.CLOSED_FORM_ENGINE,
        jobs: int = 1,
) -> SweepResult:
    if m < 1:
        raise families.FamilySpecError(f'TG: m >= 1 required, got m={m}')
    rows = workers.map_ordered(
        _sweep_row, [(m, t, engine) for t in range(t_min, t_max + 1)], jobs,
    )
    result = SweepResult(m=m, rows=tuple(rows), minimal_t=_minimal_t(m, rows))
    for row in rows:
        if len(row.violations) != m:
            logger.info(
                'Violation count differs from m',
                extra={
                    'fields': {
                        'm': m,
                        't': row.t,
                        'count': len(row.violations),
                    },
                },
            )
    return result


def minimal_t(
        m: int,
        t_max: int,
        *,
        engine: str = engines.CLOSED_FORM_ENGINE,
        jobs: int = 1,
) -> typing.Optional[int]:
    """
    Smallest t <= t_max such that TG_{m,t'} has exactly m violations for
    every t' in [t, t_max], `None` when TG_{m,t_max} itself does not.
    """
    return theorem_sweep(m, t_max, engine=engine, jobs=jobs).minimal_t


def sign_property_holds(
        m: int, t: int, *, engine: str = engines.CLOSED_FORM_ENGINE,
) -> bool:
    return all(gap > 0 for _, gap in asymptotics.even_index_gaps(
        m, t, engine=engine,
    ))
