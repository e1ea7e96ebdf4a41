import json
from itertools import product

import pytest

from ratbase import Base, represent_integer
from ratbase.errors import DepthCapExceeded
from ratbase.tree import (
    appendable,
    children,
    enumerate_tree,
    export_tree,
    is_in_L,
    level_sizes,
    separating_suffix,
    suffix_residue,
)


def test_children_of_small_nodes(b32):
    assert children(b32, 0) == [(2, 1)]
    assert children(b32, 0, root_loop=True) == [(0, 0), (2, 1)]
    assert children(b32, 1) == [(1, 2)]
    assert children(b32, 2) == [(0, 3), (2, 4)]


@pytest.mark.parametrize("base", [Base(3, 2), Base(5, 3), Base(7, 2)], ids=str)
def test_tree_levels_are_consecutive_integers(base):
    root = enumerate_tree(base, 6)
    values = sorted(n.value for n in root.walk())
    assert values == list(range(len(values)))
    for node in root.walk():
        assert node.word(base) == represent_integer(base, node.value)


@pytest.mark.parametrize("base", [Base(3, 2), Base(5, 3), Base(7, 2)], ids=str)
def test_every_node_has_a_child(base):
    # prolongable: every integer representation extends by a digit
    for n in range(300):
        assert 1 <= len(children(base, n)) <= -(-base.p // base.q)


def test_level_sizes_grow(b32):
    sizes = level_sizes(b32, 10)
    assert sizes[:6] == [1, 1, 1, 2, 3, 4]
    assert sum(sizes) == len(list(enumerate_tree(b32, 10).walk()))


def test_depth_cap(b32):
    with pytest.raises(DepthCapExceeded):
        enumerate_tree(b32, 41)


def test_membership(b32):
    assert is_in_L(b32, "")
    assert is_in_L(b32, "2122")
    assert not is_in_L(b32, "0")
    assert not is_in_L(b32, "22")
    # prefix-closed
    for n in range(200):
        w = represent_integer(b32, n)
        assert all(is_in_L(b32, w[:k]) for k in range(len(w) + 1))


def test_appendable_matches_membership(b32):
    for n in range(1, 80):
        for k in range(4):
            for u in product(range(3), repeat=k):
                assert appendable(b32, n, u) == is_in_L(b32, represent_integer(b32, n).digits + u)


def test_appendable_zero_ignores_leading_zero(b32):
    # 0 and 4 share a class mod 4, and "00" is integral after both
    assert appendable(b32, 0, "00") and appendable(b32, 4, "00")


def test_suffix_residue(b32):
    assert suffix_residue(b32, "21") == (2, 9)
    assert suffix_residue(b32, "0") == (0, 3)
    with pytest.raises(ValueError):
        suffix_residue(b32, "")


def test_separating_suffix(b32):
    u, v = represent_integer(b32, 1), represent_integer(b32, 2)
    w = separating_suffix(b32, u, v)
    assert w is not None
    assert is_in_L(b32, u + w) and not is_in_L(b32, v + w)
    assert separating_suffix(b32, u, u, 4) is None


def test_export_tree(b32):
    root = enumerate_tree(b32, 2)
    data = json.loads(export_tree(root, "json"))
    assert data == {"value": 0, "edges": [{"digit": 2, "child": {
        "value": 1, "edges": [{"digit": 1, "child": {"value": 2, "edges": []}}]}}]}
    dot = export_tree(enumerate_tree(b32, 5), "dot")
    assert dot.startswith("digraph") and dot.count("->") >= 7
    with pytest.raises(ValueError):
        export_tree(root, "svg")
