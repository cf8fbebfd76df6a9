"""
Reflected coefficients c_k(m, t) of I(TG_{m,t}) and numerical probes of
their growth in t.

The coefficient c_k(m, t) is expected to grow like 2^{u_k t} with
u_k = k + floor(k/2) for k <= 2m. A probe measures log2 c_k over a window
of t, fits a least-squares slope and records the residuals
log2 c_k - u_k t.
"""

import dataclasses
import functools
import logging
import math
import typing

import numpy as np

from . import engines
from . import families
from . import polynomial
from .polynomial import DensePolynomial
from .utils import workers

logger = logging.getLogger(__name__)

TARGET_TG = 'tg'
TARGET_TREE_PART = 'tree-part'
TARGET_STAR_PART = 'star-part'
TARGET_GAP = 'gap'
TARGETS = (TARGET_TG, TARGET_TREE_PART, TARGET_STAR_PART, TARGET_GAP)

_MANTISSA_BITS = 64


class BaseError(Exception):
    """Base class for exceptions of this module."""


class CoefficientRangeError(BaseError):
    pass


class ProbeRangeError(BaseError):
    pass


def exact_log2(value: int) -> float:
    """log2 of a positive integer of any size, from its top 64 bits."""
    if value <= 0:
        raise ValueError(f'log2 of nonpositive value {value}')
    excess = value.bit_length() - _MANTISSA_BITS
    if excess <= 0:
        return math.log2(value)
    return excess + math.log2(value >> excess)


def predicted_exponent(k: int) -> int:
    return k + k // 2


def tg_degree(m: int, t: int) -> int:
    return 3 * (t + 1) * m + 1


@functools.lru_cache(maxsize=256)
def reflected_tg(
        m: int, t: int, engine: str = engines.CLOSED_FORM_ENGINE,
) -> DensePolynomial:
    """R I(TG_{m,t})."""
    spec = families.FamilySpec(families.FamilyKind.TG, m=m, t=t)
    return polynomial.reflect(engines.compute(engine, spec=spec))


def reflected_coefficient(
        m: int, t: int, k: int, *, engine: str = engines.CLOSED_FORM_ENGINE,
) -> int:
    alpha = tg_degree(m, t)
    if not 0 <= k <= alpha:
        raise CoefficientRangeError(
            f'k={k} is outside 0..{alpha} for TG({m},{t})',
        )
    return reflected_tg(m, t, engine)[k]


def tree_part(m: int, t: int) -> DensePolynomial:
    """(x + 1) * R I(T_{3,t})^m, the first summand of R I(TG_{m,t})."""
    return engines.I_P1 * polynomial.reflect(engines.closed_form_T(3, t)) ** m


def star_part(m: int, t: int) -> DensePolynomial:
    """R I(S_{2,t})^{3m}, the second summand of R I(TG_{m,t})."""
    return polynomial.reflect(engines.closed_form_S(t)) ** (3 * m)


def even_index_gaps(
        m: int, t: int, *, engine: str = engines.CLOSED_FORM_ENGINE,
) -> typing.List[typing.Tuple[int, int]]:
    """Pairs (k, c_k c_{k+2} - c_{k+1}^2) for k = 0, 2, ..., 2(m - 1)."""
    coeffs = reflected_tg(m, t, engine)
    return [
        (k, coeffs[k] * coeffs[k + 2] - coeffs[k + 1] ** 2)
        for k in range(0, 2 * m - 1, 2)
    ]


@dataclasses.dataclass(frozen=True)
class AsymptoticProbe:
    target: str
    m: int
    k: int
    t_values: typing.Tuple[int, ...]
    values: typing.Tuple[int, ...]
    predicted_exponent: int
    measured_slope: float
    residuals: typing.Tuple[float, ...]

    @property
    def bit_lengths(self) -> typing.Tuple[int, ...]:
        return tuple(v.bit_length() for v in self.values)

    def residual_drift(self) -> typing.List[typing.Tuple[int, float, float]]:
        """
        For every t: (t, |residual(t) - residual(t_last)|, allowed drift)
        where the allowed drift is 3 log2(t_last / t) + 2.
        """
        t_last = self.t_values[-1]
        reference = self.residuals[-1]
        result = []
        for t, residual in zip(self.t_values, self.residuals):
            bound = 3 * math.log2(t_last / t) + 2 if t > 0 else math.inf
            result.append((t, abs(residual - reference), bound))
        return result

    def residuals_bounded(self) -> bool:
        return all(drift <= bound for _, drift, bound in self.residual_drift())

    def slope_matches(self, tolerance: float) -> bool:
        return abs(self.measured_slope - self.predicted_exponent) <= tolerance

    def passes(self, slope_tolerance: float = 0.05) -> bool:
        return self.slope_matches(slope_tolerance) and self.residuals_bounded()


def _target_value(args: typing.Tuple[str, int, int, int, str]) -> int:
    target, m, k, t, engine = args
    if target == TARGET_TG:
        return reflected_coefficient(m, t, k, engine=engine)
    if target == TARGET_TREE_PART:
        return tree_part(m, t)[k]
    if target == TARGET_STAR_PART:
        return star_part(m, t)[k]
    coeffs = reflected_tg(m, t, engine)
    return coeffs[k] * coeffs[k + 2] - coeffs[k + 1] ** 2


def _fit(
        target: str,
        m: int,
        k: int,
        t_values: typing.Sequence[int],
        values: typing.Sequence[int],
        exponent: int,
) -> AsymptoticProbe:
    logs = []
    for t, value in zip(t_values, values):
        if value <= 0:
            raise ProbeRangeError(
                f'{target} value for m={m}, k={k}, t={t} is not positive: '
                f'{value}',
            )
        logs.append(exact_log2(value))
    residuals = tuple(lg - exponent * t for lg, t in zip(logs, t_values))
    slope = float(np.polyfit(np.asarray(t_values, dtype=float), logs, 1)[0])
    probe = AsymptoticProbe(
        target=target,
        m=m,
        k=k,
        t_values=tuple(t_values),
        values=tuple(values),
        predicted_exponent=exponent,
        measured_slope=slope,
        residuals=residuals,
    )
    logger.info(
        'Asymptotic probe finished',
        extra={
            'fields': {
                'target': target,
                'm': m,
                'k': k,
                'slope': f'{slope:.6f}',
                'predicted': exponent,
            },
        },
    )
    return probe


def _check_t_values(t_values: typing.Sequence[int]) -> None:
    if len(t_values) < 2:
        raise ProbeRangeError('a probe needs at least two values of t')
    if any(t < 0 for t in t_values):
        raise ProbeRangeError('t must be nonnegative')


def asymptotic_probe(
        m: int,
        k: int,
        t_values: typing.Iterable[int],
        *,
        target: str = TARGET_TG,
        engine: str = engines.CLOSED_FORM_ENGINE,
        jobs: int = 1,
) -> AsymptoticProbe:
    """
    Probes the growth of the k-th coefficient of R I(TG_{m,t}) (or of one of
    its two summands) over `t_values`.
    """
    if m < 1:
        raise ProbeRangeError(f'm >= 1 required, got m={m}')
    if not 0 <= k <= 2 * m:
        raise ProbeRangeError(f'k={k} is outside the window 0..{2 * m}')
    if target == TARGET_GAP:
        raise ProbeRangeError('use gap_probe for the even-index gaps')
    if target not in TARGETS:
        raise ProbeRangeError(f'unknown probe target {target!r}')
    t_values = sorted(set(t_values))
    _check_t_values(t_values)

    exponent = k if target == TARGET_STAR_PART else predicted_exponent(k)
    values = workers.map_ordered(
        _target_value, [(target, m, k, t, engine) for t in t_values], jobs,
    )
    return _fit(target, m, k, t_values, values, exponent)


def gap_probe(
        m: int,
        j: int,
        t_values: typing.Iterable[int],
        *,
        engine: str = engines.CLOSED_FORM_ENGINE,
        jobs: int = 1,
) -> AsymptoticProbe:
    """
    Probes c_{2j} c_{2j+2} - c_{2j+1}^2, expected to grow like 2^{(6j+3)t}.
    The returned probe has k = 2j.
    """
    if m < 1 or not 0 <= j <= m - 1:
        raise ProbeRangeError(f'j={j} is outside 0..{m - 1}')
    t_values = sorted(set(t_values))
    _check_t_values(t_values)
    k = 2 * j
    values = workers.map_ordered(
        _target_value, [(TARGET_GAP, m, k, t, engine) for t in t_values], jobs,
    )
    return _fit(TARGET_GAP, m, k, t_values, values, 6 * j + 3)
