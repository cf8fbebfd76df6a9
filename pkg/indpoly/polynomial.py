"""
Dense polynomials with arbitrary-precision integer coefficients.

`coeffs[k]` is the coefficient of x^k. Trailing zeros are stripped, so the
zero polynomial is the empty tuple and its degree is `None`.
"""

import dataclasses
import itertools
import typing


class BaseError(Exception):
    """Base class for exceptions of this module."""


class ZeroPolynomialError(BaseError):
    pass


class PolynomialFormatError(BaseError):
    pass


def _normalize(coeffs: typing.Iterable[int]) -> typing.Tuple[int, ...]:
    result = list(coeffs)
    while result and result[-1] == 0:
        result.pop()
    return tuple(result)


@dataclasses.dataclass(frozen=True)
class DensePolynomial:
    coeffs: typing.Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        normalized = _normalize(self.coeffs)
        if normalized != self.coeffs:
            object.__setattr__(self, 'coeffs', normalized)

    @classmethod
    def of(cls, *coeffs: int) -> 'DensePolynomial':
        return cls(coeffs=tuple(coeffs))

    @property
    def degree(self) -> typing.Optional[int]:
        if not self.coeffs:
            return None
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return coefficient(self, k)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: 'DensePolynomial') -> 'DensePolynomial':
        return add(self, other)

    def __sub__(self, other: 'DensePolynomial') -> 'DensePolynomial':
        return sub(self, other)

    def __mul__(self, other: 'DensePolynomial') -> 'DensePolynomial':
        return mul(self, other)

    def __pow__(self, exponent: int) -> 'DensePolynomial':
        return power(self, exponent)

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                monomial = 'x' if k == 1 else f'x^{k}'
                terms.append(monomial if c == 1 else f'{c}{monomial}')
        return ' + '.join(terms)


ZERO = DensePolynomial()
ONE = DensePolynomial.of(1)
X = DensePolynomial.of(0, 1)


def coefficient(p: DensePolynomial, k: int) -> int:
    if 0 <= k < len(p.coeffs):
        return p.coeffs[k]
    return 0


def add(p: DensePolynomial, q: DensePolynomial) -> DensePolynomial:
    return DensePolynomial(
        coeffs=tuple(
            a + b
            for a, b in itertools.zip_longest(p.coeffs, q.coeffs, fillvalue=0)
        ),
    )


def sub(p: DensePolynomial, q: DensePolynomial) -> DensePolynomial:
    return DensePolynomial(
        coeffs=tuple(
            a - b
            for a, b in itertools.zip_longest(p.coeffs, q.coeffs, fillvalue=0)
        ),
    )


def mul(p: DensePolynomial, q: DensePolynomial) -> DensePolynomial:
    if not p.coeffs or not q.coeffs:
        return ZERO
    result = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            result[i + j] += a * b
    return DensePolynomial(coeffs=tuple(result))


def power(p: DensePolynomial, exponent: int) -> DensePolynomial:
    if exponent < 0:
        raise ValueError(f'negative exponent {exponent}')
    result = ONE
    base = p
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        exponent >>= 1
        if exponent:
            base = mul(base, base)
    return result


def shift(p: DensePolynomial, k: int) -> DensePolynomial:
    """Multiplies by x^k."""
    if not p.coeffs:
        return ZERO
    return DensePolynomial(coeffs=(0,) * k + p.coeffs)


def reflect(p: DensePolynomial) -> DensePolynomial:
    """Returns x^deg(p) * p(1/x)."""
    if not p.coeffs:
        raise ZeroPolynomialError('reflection of the zero polynomial')
    return DensePolynomial(coeffs=p.coeffs[::-1])


def evaluate(p: DensePolynomial, value: int) -> int:
    result = 0
    for c in reversed(p.coeffs):
        result = result * value + c
    return result


def first_difference(
        p: DensePolynomial, q: DensePolynomial,
) -> typing.Optional[int]:
    """Smallest index where the coefficients differ, `None` if p == q."""
    for k, (a, b) in enumerate(
            itertools.zip_longest(p.coeffs, q.coeffs, fillvalue=0),
    ):
        if a != b:
            return k
    return None


def to_json(p: DensePolynomial) -> typing.Dict[str, typing.List[str]]:
    return {'coeffs': [str(c) for c in p.coeffs]}


def from_json(data: typing.Any) -> DensePolynomial:
    if not isinstance(data, dict) or not isinstance(data.get('coeffs'), list):
        raise PolynomialFormatError('expected {"coeffs": [...]} object')
    coeffs = []
    for index, value in enumerate(data['coeffs']):
        if not isinstance(value, str):
            raise PolynomialFormatError(
                f'coefficient {index} must be a decimal string, got {value!r}',
            )
        try:
            coeffs.append(int(value, 10))
        except ValueError:
            raise PolynomialFormatError(
                f'coefficient {index} is not a decimal integer: {value!r}',
            )
    return DensePolynomial(coeffs=tuple(coeffs))
