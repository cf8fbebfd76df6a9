"""
The tree families P_m, S_{2,t}, T_{m,t} and TG_{m,t}.

Family instances are described by `FamilySpec` and written on the command
line as `P,m`, `S2,t`, `T,m,t` or `TG,m,t`.
"""

import dataclasses
import enum
import logging
import re
import typing

from . import trees

logger = logging.getLogger(__name__)

_PARAM_RE = re.compile(r'[0-9]+')


class BaseError(Exception):
    """Base class for exceptions of this module."""


class FamilySpecError(BaseError):
    pass


class FamilyKind(enum.Enum):
    PATH = 'P'
    STAR2 = 'S2'
    T = 'T'
    TG = 'TG'


_KIND_ALIASES = {
    'P': FamilyKind.PATH,
    'PATH': FamilyKind.PATH,
    'S2': FamilyKind.STAR2,
    'STAR2': FamilyKind.STAR2,
    'T': FamilyKind.T,
    'TG': FamilyKind.TG,
}

# Parameters that appear in the textual form of every kind.
_KIND_PARAMS = {
    FamilyKind.PATH: ('m',),
    FamilyKind.STAR2: ('t',),
    FamilyKind.T: ('m', 't'),
    FamilyKind.TG: ('m', 't'),
}


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    m: int = 0
    t: int = 0

    def __post_init__(self) -> None:
        for name in ('m', 't'):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise FamilySpecError(
                    f'{self.kind.value}: {name} must be a nonnegative '
                    f'integer, got {value!r}',
                )
        if self.kind in (FamilyKind.PATH, FamilyKind.TG) and self.m < 1:
            raise FamilySpecError(
                f'{self.kind.value}: m >= 1 required, got m={self.m}',
            )

    def __str__(self) -> str:
        params = [str(getattr(self, p)) for p in _KIND_PARAMS[self.kind]]
        return ','.join([self.kind.value, *params])

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        result: typing.Dict[str, typing.Any] = {'kind': self.kind.value}
        for name in _KIND_PARAMS[self.kind]:
            result[name] = getattr(self, name)
        return result


def parse_family(text: str) -> FamilySpec:
    kind_text, *values = text.split(',')
    kind = _KIND_ALIASES.get(kind_text.strip().upper())
    if kind is None:
        raise FamilySpecError(
            f'unknown family {kind_text!r}, expected one of '
            + ', '.join(k.value for k in FamilyKind),
        )
    names = _KIND_PARAMS[kind]
    if len(values) != len(names):
        raise FamilySpecError(
            f'{kind.value} expects parameters ({", ".join(names)}), '
            f'got {text!r}',
        )
    params = {}
    for name, value in zip(names, values):
        value = value.strip()
        if not _PARAM_RE.fullmatch(value):
            raise FamilySpecError(
                f'{kind.value}: {name} must be a nonnegative integer, '
                f'got {value!r}',
            )
        params[name] = int(value)
    return FamilySpec(kind=kind, **params)


def path(m: int) -> trees.RootedTree:
    if m < 1:
        raise FamilySpecError(f'P: m >= 1 required, got m={m}')
    return trees.RootedTree.from_parents(range(m - 1))


def star2(t: int) -> trees.RootedTree:
    if t < 0:
        raise FamilySpecError(f'S2: t >= 0 required, got t={t}')
    return trees.join([path(2)] * t)


def tree_T(m: int, t: int) -> trees.RootedTree:  # noqa: N802
    if m < 0 or t < 0:
        raise FamilySpecError(f'T: m, t >= 0 required, got m={m}, t={t}')
    return trees.join([star2(t)] * m)


def tree_TG(m: int, t: int) -> trees.RootedTree:  # noqa: N802
    if m < 1 or t < 0:
        raise FamilySpecError(f'TG: m >= 1, t >= 0 required, got m={m}, t={t}')
    return trees.join([path(1), *[tree_T(3, t)] * m])


def vertex_count(spec: FamilySpec) -> int:
    if spec.kind is FamilyKind.PATH:
        return spec.m
    if spec.kind is FamilyKind.STAR2:
        return 1 + 2 * spec.t
    if spec.kind is FamilyKind.T:
        return 1 + spec.m * (1 + 2 * spec.t)
    return 2 + spec.m * (6 * spec.t + 4)


def build_family(spec: FamilySpec) -> trees.RootedTree:
    if spec.kind is FamilyKind.PATH:
        tree = path(spec.m)
    elif spec.kind is FamilyKind.STAR2:
        tree = star2(spec.t)
    elif spec.kind is FamilyKind.T:
        tree = tree_T(spec.m, spec.t)
    else:
        tree = tree_TG(spec.m, spec.t)
    logger.debug(
        'Built family tree', extra={'fields': {'family': str(spec), 'n': tree.n}},
    )
    return tree


def iter_small_members(max_vertices: int) -> typing.Iterator[FamilySpec]:
    """Yields every family instance with at most `max_vertices` vertices."""
    for m in range(1, max_vertices + 1):
        yield FamilySpec(FamilyKind.PATH, m=m)
    for t in range((max_vertices - 1) // 2 + 1):
        yield FamilySpec(FamilyKind.STAR2, t=t)
    for m in range(max_vertices):
        for t in range(max_vertices):
            spec = FamilySpec(FamilyKind.T, m=m, t=t)
            if vertex_count(spec) > max_vertices:
                break
            yield spec
            if m == 0:
                break
    for m in range(1, max_vertices):
        for t in range(max_vertices):
            spec = FamilySpec(FamilyKind.TG, m=m, t=t)
            if vertex_count(spec) > max_vertices:
                break
            yield spec
