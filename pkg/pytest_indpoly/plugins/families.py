import typing

import pytest

from indpoly import families


@pytest.fixture(scope='session')
def small_family_members(
        bruteforce_max_vertices,
) -> typing.List[families.FamilySpec]:
    """
    Every family instance whose tree has at most `--bruteforce-max-vertices`
    vertices.
    """
    return list(families.iter_small_members(bruteforce_max_vertices))


@pytest.fixture(scope='session')
def small_family_trees(small_family_members):
    return [
        (spec, families.build_family(spec)) for spec in small_family_members
    ]
