"""
Independence polynomial engines.

`indpoly_dp` is the production engine. `indpoly_recursive` applies the
vertex deletion recurrence literally and `indpoly_bruteforce` counts
independent subsets directly; both exist to cross-check it. The closed forms
cover the tree families of `indpoly.families`.
"""

import dataclasses
import logging
import math
import typing

import numpy as np

from . import families
from . import polynomial
from . import trees
from .polynomial import DensePolynomial

logger = logging.getLogger(__name__)

BRUTEFORCE_LIMIT = 30

I_P1 = DensePolynomial.of(1, 1)
I_P2 = DensePolynomial.of(1, 2)


class BaseError(Exception):
    """Base class for exceptions of this module."""


class TreeTooLargeError(BaseError):
    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(
            f'tree has {n} vertices, brute force is limited to {limit}',
        )


class UnknownEngineError(BaseError):
    pass


class NoClosedFormError(BaseError):
    pass


class NegativeCoefficientError(BaseError):
    pass


@dataclasses.dataclass(frozen=True)
class SubtreeTable:
    """
    Per-vertex pairs of the tree DP: `excluded[v]` counts independent sets
    of the subtree at v that avoid v, `included[v]` those that contain v.
    """

    excluded: typing.Tuple[DensePolynomial, ...]
    included: typing.Tuple[DensePolynomial, ...]

    def subtree_polynomial(self, vertex: int) -> DensePolynomial:
        return self.excluded[vertex] + self.included[vertex]


def subtree_table(tree: trees.RootedTree) -> SubtreeTable:
    excluded: typing.List[DensePolynomial] = [polynomial.ONE] * tree.n
    included: typing.List[DensePolynomial] = [polynomial.X] * tree.n
    for vertex in reversed(range(tree.n)):
        a = polynomial.ONE
        b = polynomial.X
        for child in tree.children[vertex]:
            a = a * (excluded[child] + included[child])
            b = b * excluded[child]
        excluded[vertex] = a
        included[vertex] = b
    return SubtreeTable(excluded=tuple(excluded), included=tuple(included))


def indpoly_dp(tree: trees.RootedTree) -> DensePolynomial:
    result = subtree_table(tree).subtree_polynomial(0)
    logger.debug(
        'Computed independence polynomial',
        extra={'fields': {'engine': 'dp', 'n': tree.n, 'degree': result.degree}},
    )
    return result


def _pivot(tree: trees.RootedTree) -> int:
    # The neighbour of the last leaf in vertex order.
    leaf = max(tree.leaves())
    return tree.neighbors(leaf)[0]


def _forest_polynomial(
        components: typing.Sequence[typing.Tuple[trees.RootedTree, str]],
        memo: typing.Mapping[str, DensePolynomial],
) -> DensePolynomial:
    result = polynomial.ONE
    for _, code in components:
        result = result * memo[code]
    return result


def indpoly_recursive(tree: trees.RootedTree) -> DensePolynomial:
    """
    I(T) = I(T - v) + x I(T - N[v]) with v next to a leaf, memoized on the
    canonical code of every component. Works on an explicit stack.
    """
    memo: typing.Dict[str, DensePolynomial] = {}
    # code -> (components of T - v, components of T - N[v])
    splits: typing.Dict[str, typing.Tuple[list, list]] = {}

    def labelled(components: typing.List[trees.RootedTree]) -> list:
        return [(c, c.canonical_code()) for c in components]

    root_code = tree.canonical_code()
    stack = [(tree, root_code)]
    while stack:
        component, code = stack[-1]
        if code in memo:
            stack.pop()
            continue
        if component.n == 1:
            memo[code] = I_P1
            stack.pop()
            continue
        split = splits.get(code)
        if split is None:
            pivot = _pivot(component)
            closed = {pivot, *component.neighbors(pivot)}
            split = (
                labelled(component.delete({pivot})),
                labelled(component.delete(closed)),
            )
            splits[code] = split
        missing = [
            item for item in (*split[0], *split[1]) if item[1] not in memo
        ]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        without, with_ = splits.pop(code)
        memo[code] = _forest_polynomial(
            without, memo,
        ) + polynomial.X * _forest_polynomial(with_, memo)

    result = memo[root_code]
    logger.debug(
        'Computed independence polynomial',
        extra={
            'fields': {
                'engine': 'recursive',
                'n': tree.n,
                'memo': len(memo),
            },
        },
    )
    return result


def _popcount(masks: np.ndarray, width: int) -> np.ndarray:
    result = np.zeros(masks.shape, dtype=np.int64)
    for bit in range(width):
        result += (masks >> bit) & 1
    return result


def _independent(
        masks: np.ndarray, edges: typing.Iterable[typing.Tuple[int, int]],
) -> np.ndarray:
    conflict = np.zeros(masks.shape, dtype=np.int64)
    for u, v in edges:
        conflict |= (masks >> u) & (masks >> v) & 1
    return conflict == 0


def indpoly_bruteforce(
        tree: trees.RootedTree, *, limit: int = BRUTEFORCE_LIMIT,
) -> DensePolynomial:
    """
    Counts independent vertex subsets by size over bitmasks.

    The vertices are split into a low half L and a high half H. For every
    subset A of L the number of independent subsets of A by size is
    tabulated with a subset-sum transform; every independent subset of H then
    contributes the row of the L-vertices it leaves free.
    """
    n = tree.n
    if n > min(limit, BRUTEFORCE_LIMIT):
        raise TreeTooLargeError(n, min(limit, BRUTEFORCE_LIMIT))

    low = n // 2
    high = n - low
    low_edges = [(u, v) for u, v in tree.edges() if v < low]
    high_edges = [(u - low, v - low) for u, v in tree.edges() if u >= low]
    cross_edges = [(u, v) for u, v in tree.edges() if u < low <= v]

    low_masks = np.arange(1 << low, dtype=np.int64)
    low_sizes = _popcount(low_masks, low)
    table = np.zeros((1 << low, low + 1), dtype=np.int64)
    low_ok = _independent(low_masks, low_edges)
    table[low_masks[low_ok], low_sizes[low_ok]] = 1
    for bit in range(low):
        view = table.reshape(-1, 2, 1 << bit, low + 1)
        view[:, 1] += view[:, 0]

    high_masks = np.arange(1 << high, dtype=np.int64)
    high_sizes = _popcount(high_masks, high)
    high_ok = _independent(high_masks, high_edges)
    blocked = np.zeros(high_masks.shape, dtype=np.int64)
    for u, v in cross_edges:
        blocked |= ((high_masks >> (v - low)) & 1) << u
    free = ((1 << low) - 1) & ~blocked

    counts = [0] * (n + 1)
    for size in range(high + 1):
        selected = free[high_ok & (high_sizes == size)]
        if not selected.size:
            continue
        row = table[selected].sum(axis=0)
        for k, value in enumerate(row.tolist()):
            counts[size + k] += value

    result = DensePolynomial(coeffs=tuple(counts))
    logger.debug(
        'Computed independence polynomial',
        extra={'fields': {'engine': 'bruteforce', 'n': n}},
    )
    return result


def independence_number(tree: trees.RootedTree) -> int:
    """Size of a maximum independent set, by the integer tree DP."""
    without = [0] * tree.n
    with_ = [1] * tree.n
    for vertex in reversed(range(tree.n)):
        for child in tree.children[vertex]:
            without[vertex] += max(without[child], with_[child])
            with_[vertex] += without[child]
    return max(without[0], with_[0])


def closed_form_path(m: int) -> DensePolynomial:
    if m < 1:
        raise families.FamilySpecError(f'P: m >= 1 required, got m={m}')
    return DensePolynomial(
        coeffs=tuple(math.comb(m - k + 1, k) for k in range((m + 1) // 2 + 1)),
    )


def closed_form_S(t: int) -> DensePolynomial:  # noqa: N802
    if t < 0:
        raise families.FamilySpecError(f'S2: t >= 0 required, got t={t}')
    return I_P2 ** t + polynomial.X * I_P1 ** t


def closed_form_T(m: int, t: int) -> DensePolynomial:  # noqa: N802
    if m < 0 or t < 0:
        raise families.FamilySpecError(
            f'T: m, t >= 0 required, got m={m}, t={t}',
        )
    return closed_form_S(t) ** m + polynomial.X * I_P2 ** (m * t)


def closed_form_TG(m: int, t: int) -> DensePolynomial:  # noqa: N802
    if m < 1 or t < 0:
        raise families.FamilySpecError(
            f'TG: m >= 1, t >= 0 required, got m={m}, t={t}',
        )
    return I_P1 * closed_form_T(3, t) ** m + polynomial.X * closed_form_S(
        t,
    ) ** (3 * m)


CLOSED_FORMS: typing.Dict[
    families.FamilyKind, typing.Callable[[families.FamilySpec], DensePolynomial],
] = {
    families.FamilyKind.PATH: lambda spec: closed_form_path(spec.m),
    families.FamilyKind.STAR2: lambda spec: closed_form_S(spec.t),
    families.FamilyKind.T: lambda spec: closed_form_T(spec.m, spec.t),
    families.FamilyKind.TG: lambda spec: closed_form_TG(spec.m, spec.t),
}


def closed_form(spec: families.FamilySpec) -> DensePolynomial:
    handler = CLOSED_FORMS.get(spec.kind)
    if handler is None:
        raise NoClosedFormError(f'no closed form for family {spec}')
    return handler(spec)


ENGINES: typing.Dict[
    str, typing.Callable[[trees.RootedTree], DensePolynomial],
] = {
    'dp': indpoly_dp,
    'recursive': indpoly_recursive,
    'bruteforce': indpoly_bruteforce,
}

CLOSED_FORM_ENGINE = 'closed-form'
ENGINE_NAMES = (*ENGINES, CLOSED_FORM_ENGINE)


def _checked(engine: str, result: DensePolynomial) -> DensePolynomial:
    for k, c in enumerate(result.coeffs):
        if c < 0:
            raise NegativeCoefficientError(
                f'engine {engine!r} returned coefficient {c} at x^{k}',
            )
    return result


def compute(
        engine: str,
        *,
        tree: typing.Optional[trees.RootedTree] = None,
        spec: typing.Optional[families.FamilySpec] = None,
) -> DensePolynomial:
    """Computes I(G) of a tree or a family instance with the named engine."""
    if engine == CLOSED_FORM_ENGINE:
        if spec is None:
            raise NoClosedFormError(
                'closed-form engine needs a family, not an arbitrary tree',
            )
        return _checked(engine, closed_form(spec))
    handler = ENGINES.get(engine)
    if handler is None:
        raise UnknownEngineError(
            f'unknown engine {engine!r}, expected one of '
            + ', '.join(ENGINE_NAMES),
        )
    if tree is None:
        if spec is None:
            raise ValueError('either tree or spec is required')
        tree = families.build_family(spec)
    return _checked(engine, handler(tree))
