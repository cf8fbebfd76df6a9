import networkx as nx
import pytest

from indpoly import families
from indpoly import trees


def _to_networkx(tree: trees.RootedTree) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(tree.n))
    graph.add_edges_from(tree.edges())
    return graph


def test_parse_star():
    tree = trees.parse_tree('3:_,0,0')
    assert tree.parent == (trees.ROOT, 0, 0)
    assert tree.children[0] == (1, 2)
    assert tree.leaves() == [1, 2]


def test_serialize_path():
    assert trees.serialize_tree(families.path(3)) == '3:_,0,1'
    assert trees.serialize_tree(families.path(1)) == '1:_'


def test_parent_out_of_range():
    with pytest.raises(trees.TreeFormatError) as exc_info:
        trees.parse_tree('2:_,5')
    assert exc_info.value.line == 1
    assert exc_info.value.position == 5
    assert 'out of range' in str(exc_info.value)


@pytest.mark.parametrize(
    'text',
    [
        '3_,0,0',
        '3:_, 0,0',
        '3:_,0',
        '0:',
        'x:_',
        '2:0,0',
        '2:_,a',
        '2:_,-1',
        '2:_,1',
    ],
)
def test_malformed(text):
    with pytest.raises(trees.TreeFormatError):
        trees.parse_tree(text)


def test_forest_line_numbers():
    with pytest.raises(trees.TreeFormatError) as exc_info:
        trees.parse_forest('1:_\n\n2:_,1\n')
    assert exc_info.value.line == 3

    forest = trees.parse_forest('1:_\n\n3:_,0,1\n')
    assert forest == [families.path(1), families.path(3)]


def test_invalid_parent_array():
    with pytest.raises(trees.InvalidTreeError):
        trees.RootedTree(parent=())
    with pytest.raises(trees.InvalidTreeError):
        trees.RootedTree(parent=(trees.ROOT, 0, 2))
    with pytest.raises(trees.InvalidTreeError):
        trees.RootedTree(parent=(0,))


def test_delete_splits_components():
    components = families.path(5).delete({2})
    assert components == [families.path(2), families.path(2)]

    star = trees.parse_tree('4:_,0,0,0')
    assert star.delete({0}) == [families.path(1)] * 3
    assert star.delete({0, 1, 2, 3}) == []


def test_neighbors_and_degree():
    tree = families.tree_T(2, 1)
    assert tree.degree(0) == 2
    assert tree.neighbors(1) == (0, 2)
    assert sum(tree.degree(v) for v in range(tree.n)) == 2 * (tree.n - 1)


def test_join_keeps_order():
    tree = trees.join([families.path(2), families.path(1)])
    assert tree.parent == (trees.ROOT, 0, 1, 0)


def test_depth_first_order():
    tree = trees.parse_tree('4:_,0,0,1')
    assert tree.depth_first_order() == [0, 1, 3, 2]
    assert families.path(1).depth_first_order() == [0]


def test_canonical_code_matches_isomorphism(random_tree_factory, rng):
    for _ in range(200):
        n = rng.randint(2, 7)
        first = random_tree_factory(n)
        second = random_tree_factory(n)
        isomorphic = bool(
            nx.isomorphism.rooted_tree_isomorphism(
                _to_networkx(first), 0, _to_networkx(second), 0,
            ),
        )
        assert (
            first.canonical_code() == second.canonical_code()
        ) == isomorphic


def test_canonical_code_ignores_child_order():
    first = trees.join([families.path(2), families.path(1)])
    second = trees.join([families.path(1), families.path(2)])
    assert first != second
    assert first.canonical_code() == second.canonical_code()


def test_random_trees_are_trees(random_trees):
    for tree in random_trees:
        assert nx.is_tree(_to_networkx(tree))
        assert trees.parse_tree(trees.serialize_tree(tree)) == tree
