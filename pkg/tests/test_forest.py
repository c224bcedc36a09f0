from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidthompson.forest import (
    Forest,
    Tree,
    balanced_tree,
    common_expansion,
    elementary_forest,
    graft,
    left_comb,
    refines,
    right_comb,
    trivial_forest,
)
from oracles import all_trees, preorder
from strategies import forests, trees

CARET = Tree(frozenset({""}))
LEAF = Tree()


def test_elementary_forest():
    F = elementary_forest(5, {2, 5})
    assert F.roots == 5 and F.n_leaves == 7
    assert F.caret_roots() == {2, 5}
    assert F.is_elementary()
    assert elementary_forest(4, set()) == trivial_forest(4)
    G = elementary_forest(1, {1})
    assert G.carets == 1 and G.n_leaves == 2
    with pytest.raises(ValueError):
        elementary_forest(3, {4})


def test_graft_examples():
    F = Forest.parse("100,0,10100")
    assert graft(F, [LEAF] * F.n_leaves) == F
    ts = (CARET, LEAF, left_comb(3))
    assert graft(trivial_forest(3), list(ts)) == Forest(ts)
    assert graft(elementary_forest(1, {1}), [CARET, LEAF]) == Forest((left_comb(3),))
    with pytest.raises(ValueError):
        graft(F, [LEAF])


def test_common_expansion_examples():
    A = Forest.parse("10100,0")
    E, ga, gb = common_expansion(A, A)
    assert E == A and all(t == LEAF for t in ga + gb)
    B = Forest.parse("100,100")
    assert common_expansion(trivial_forest(2), B)[0] == B
    L, R = Forest((left_comb(3),)), Forest((right_comb(3),))
    assert common_expansion(L, R)[0] == Forest((balanced_tree(2),))
    with pytest.raises(ValueError):
        common_expansion(trivial_forest(1), trivial_forest(2))


def test_serialization_is_preorder():
    assert left_comb(3).serialize() == "11000"
    assert right_comb(3).serialize() == "10100"
    assert balanced_tree(2).serialize() == "1100100"
    for c in range(5):
        for nodes in all_trees(c):
            t = Tree(nodes)
            s = t.serialize()
            assert s == preorder(nodes) and len(s) == 2 * c + 1
            assert Tree.parse(s) == t


def test_tree_counts():
    # Catalan numbers
    assert [len(all_trees(c)) for c in range(6)] == [1, 1, 2, 5, 14, 42]


def test_invalid_inputs():
    with pytest.raises(ValueError):
        Tree(frozenset({"0"}))
    with pytest.raises(ValueError):
        Tree.parse("10")
    with pytest.raises(ValueError):
        Forest(())


@given(trees())
def test_tree_leaves_and_carets(t):
    assert t.n_leaves == t.carets + 1
    assert list(t.leaves) == sorted(t.leaves)


@given(forests())
def test_forest_round_trip(F):
    assert Forest.parse(F.serialize()) == F


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(forests(r), forests(r), forests(r))))
def test_join_laws(abc):
    A, B, C = abc
    E, ga, gb = common_expansion(A, B)
    E2, gb2, ga2 = common_expansion(B, A)
    assert E == E2 and ga == ga2 and gb == gb2
    assert graft(A, ga) == E and graft(B, gb) == E
    assert common_expansion(A, A)[0] == A
    left = common_expansion(common_expansion(A, B)[0], C)[0]
    right = common_expansion(A, common_expansion(B, C)[0])[0]
    assert left == right
    # minimality: anything refining both refines the join
    assert refines(E, A) and refines(E, B)
    for D in (left, graft(E, [CARET] * E.n_leaves)):
        assert refines(D, E)


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(forests(r, max_carets=3), forests(r, max_carets=3))))
def test_join_is_least_by_enumeration(ab):
    A, B = ab
    E = common_expansion(A, B)[0]
    # every tree-wise union of A and B's trees is contained in E's trees
    for ta, tb, te in zip(A.trees, B.trees, E.trees):
        assert te.nodes == ta.nodes | tb.nodes
