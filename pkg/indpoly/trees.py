"""
Rooted trees given by parent arrays.

A tree with `n` vertices is stored as a tuple `parent` where `parent[0]` is
the root sentinel and `parent[i] < i` for every other vertex. The text form
used by the command line is `<n>:_,<p_1>,...,<p_{n-1}>`.
"""

import dataclasses
import functools
import logging
import re
import typing

logger = logging.getLogger(__name__)

ROOT = -1
ROOT_TOKEN = '_'

_INT_RE = re.compile(r'0|[1-9][0-9]*')


class BaseError(Exception):
    """Base class for exceptions of this module."""


class InvalidTreeError(BaseError):
    pass


class TreeFormatError(BaseError):
    def __init__(self, message: str, *, line: int = 1, position: int = 1):
        self.line = line
        self.position = position
        super().__init__(f'line {line}, position {position}: {message}')


@dataclasses.dataclass(frozen=True)
class RootedTree:
    """
    Immutable rooted tree. Vertex 0 is the root and every vertex is listed
    after its parent.
    """

    parent: typing.Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parent:
            raise InvalidTreeError('tree must have at least one vertex')
        if self.parent[0] != ROOT:
            raise InvalidTreeError(
                f'vertex 0 must be the root, got parent {self.parent[0]}',
            )
        for vertex, parent in enumerate(self.parent[1:], start=1):
            if not 0 <= parent < vertex:
                raise InvalidTreeError(
                    f'vertex {vertex} has parent {parent}, '
                    f'expected 0 <= parent < {vertex}',
                )

    @classmethod
    def from_parents(cls, parents: typing.Iterable[int]) -> 'RootedTree':
        """Builds a tree from parents of vertices 1..n-1."""
        return cls(parent=(ROOT, *parents))

    @property
    def n(self) -> int:
        return len(self.parent)

    @functools.cached_property
    def children(self) -> typing.Tuple[typing.Tuple[int, ...], ...]:
        result: typing.List[typing.List[int]] = [[] for _ in self.parent]
        for vertex in range(1, self.n):
            result[self.parent[vertex]].append(vertex)
        return tuple(tuple(kids) for kids in result)

    def neighbors(self, vertex: int) -> typing.Tuple[int, ...]:
        if vertex == 0:
            return self.children[0]
        return (self.parent[vertex], *self.children[vertex])

    def degree(self, vertex: int) -> int:
        return len(self.children[vertex]) + (vertex != 0)

    def edges(self) -> typing.Iterator[typing.Tuple[int, int]]:
        for vertex in range(1, self.n):
            yield self.parent[vertex], vertex

    def leaves(self) -> typing.List[int]:
        """Vertices of degree one (the root counts when it has one child)."""
        return [v for v in range(self.n) if self.degree(v) == 1]

    def depth_first_order(self) -> typing.List[int]:
        """Preorder from the root, children in increasing index order."""
        order = []
        stack = [0]
        while stack:
            vertex = stack.pop()
            order.append(vertex)
            stack.extend(reversed(self.children[vertex]))
        return order

    def delete(
            self, vertices: typing.AbstractSet[int],
    ) -> typing.List['RootedTree']:
        """
        Removes `vertices` and returns the connected components of the rest.

        Each component is rooted at its smallest surviving vertex and keeps
        the relative order of the original vertices.
        """
        component_of: typing.Dict[int, int] = {}
        new_index: typing.Dict[int, int] = {}
        parents: typing.List[typing.List[int]] = []
        for vertex in range(self.n):
            if vertex in vertices:
                continue
            parent = self.parent[vertex]
            if parent == ROOT or parent in vertices:
                component_of[vertex] = len(parents)
                new_index[vertex] = 0
                parents.append([ROOT])
                continue
            component = component_of[parent]
            component_of[vertex] = component
            new_index[vertex] = len(parents[component])
            parents[component].append(new_index[parent])
        return [RootedTree(parent=tuple(p)) for p in parents]

    def canonical_code(self) -> str:
        """
        AHU code of the rooted tree: equal codes iff the rooted trees are
        isomorphic.
        """
        codes = [''] * self.n
        for vertex in reversed(range(self.n)):
            kids = sorted(codes[c] for c in self.children[vertex])
            codes[vertex] = '(' + ''.join(kids) + ')'
        return codes[0]


def join(subtrees: typing.Sequence[RootedTree]) -> RootedTree:
    """
    Returns a tree with a new root whose children are the roots of
    `subtrees`, in the given order. Vertices of every subtree keep their
    relative order, shifted after the vertices of the preceding subtrees.
    """
    parents: typing.List[int] = [ROOT]
    for subtree in subtrees:
        offset = len(parents)
        parents.append(0)
        parents.extend(p + offset for p in subtree.parent[1:])
    return RootedTree(parent=tuple(parents))


def serialize_tree(tree: RootedTree) -> str:
    return f'{tree.n}:' + ','.join(
        [ROOT_TOKEN, *(str(p) for p in tree.parent[1:])],
    )


def parse_tree(text: str, *, line: int = 1) -> RootedTree:
    text = text.rstrip('\r\n')
    count_text, sep, body = text.partition(':')
    if not sep:
        raise TreeFormatError('missing ":" after vertex count', line=line)
    if not _INT_RE.fullmatch(count_text):
        raise TreeFormatError(
            f'invalid vertex count {count_text!r}', line=line, position=1,
        )
    count = int(count_text)
    if count < 1:
        raise TreeFormatError(
            'vertex count must be positive', line=line, position=1,
        )

    tokens = body.split(',')
    if len(tokens) != count:
        raise TreeFormatError(
            f'expected {count} entries, got {len(tokens)}',
            line=line,
            position=len(count_text) + 2,
        )

    position = len(count_text) + 2
    parents: typing.List[int] = []
    for vertex, token in enumerate(tokens):
        if vertex == 0:
            if token != ROOT_TOKEN:
                raise TreeFormatError(
                    f'first entry must be {ROOT_TOKEN!r}, got {token!r}',
                    line=line,
                    position=position,
                )
            parents.append(ROOT)
        else:
            if not _INT_RE.fullmatch(token):
                raise TreeFormatError(
                    f'invalid parent index {token!r}',
                    line=line,
                    position=position,
                )
            parent = int(token)
            if parent >= vertex:
                raise TreeFormatError(
                    f'parent {parent} of vertex {vertex} is out of range, '
                    f'expected < {vertex}',
                    line=line,
                    position=position,
                )
            parents.append(parent)
        position += len(token) + 1
    return RootedTree(parent=tuple(parents))


def parse_forest(text: str) -> typing.List[RootedTree]:
    """Parses one tree per non-empty line."""
    result = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        result.append(parse_tree(line, line=lineno))
    logger.debug(
        'Parsed tree file', extra={'fields': {'trees': len(result)}},
    )
    return result
