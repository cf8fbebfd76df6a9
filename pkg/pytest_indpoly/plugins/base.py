import random
import typing

import pytest

from indpoly import engines
from indpoly import trees


def pytest_addoption(parser) -> None:
    group = parser.getgroup('indpoly')
    group.addoption(
        '--random-seed',
        type=int,
        default=20240,
        help='Seed of the random trees and polynomials (default is '
        '%(default)s)',
    )
    group.addoption(
        '--random-trees',
        type=int,
        default=200,
        help='Number of random trees checked against the brute force '
        'oracle (default is %(default)s)',
    )
    group.addoption(
        '--bruteforce-max-vertices',
        type=int,
        default=engines.BRUTEFORCE_LIMIT,
        help='Largest family member checked by the brute force oracle '
        '(default is %(default)s)',
    )


@pytest.fixture(scope='session')
def random_seed(pytestconfig) -> int:
    """
    Returns the seed set by command line `--random-seed` option.
    """
    return pytestconfig.option.random_seed


@pytest.fixture(scope='session')
def random_trees_count(pytestconfig) -> int:
    return pytestconfig.option.random_trees


@pytest.fixture(scope='session')
def bruteforce_max_vertices(pytestconfig) -> int:
    return min(
        pytestconfig.option.bruteforce_max_vertices, engines.BRUTEFORCE_LIMIT,
    )


@pytest.fixture
def rng(random_seed) -> random.Random:
    """Fresh generator per test, so tests do not depend on their order."""
    return random.Random(random_seed)


@pytest.fixture
def random_tree_factory(rng):
    """
    Returns a factory `create(n) -> RootedTree` of random rooted trees where
    every vertex picks its parent uniformly among the earlier vertices.
    """

    def create(n: int) -> trees.RootedTree:
        return trees.RootedTree.from_parents(
            rng.randrange(vertex) for vertex in range(1, n)
        )

    return create


@pytest.fixture
def random_trees(
        random_tree_factory, rng, random_trees_count,
) -> typing.List[trees.RootedTree]:
    return [
        random_tree_factory(rng.randint(1, 22))
        for _ in range(random_trees_count)
    ]
