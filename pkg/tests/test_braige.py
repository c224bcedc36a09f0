from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidthompson import arcs, braige
from braidthompson.braid import BraidWord, cable, is_pure, random_pure_word, random_word
from braidthompson.braige import (
    FlatBraige,
    block_widths,
    build_truncation,
    dangling_flat_equals,
    descending_link_model,
    fiber_join_check,
    fiber_join_witness,
    find_simplex,
    find_vertex,
    has_face,
    stabilizer_membership,
    transport_edges,
    word_ball,
)
from braidthompson.forest import Forest
from braidthompson.spraige import DanglingSpraige, Spraige

rngs = st.randoms(use_true_random=False)


def B(n, *w):
    return BraidWord(n, tuple(w))


def F(b, *edges):
    return FlatBraige(b, frozenset(edges))


class TestDangling:
    def test_examples(self):
        x = F(B(3, 1, -2), 1)
        assert dangling_flat_equals(x, x)
        assert not dangling_flat_equals(F(B(2, 1, 1), 1), F(B(2), 1))
        rng = random.Random(1)
        for _ in range(10):
            b = random_word(rng, 5, 5)
            c = cable(random_pure_word(rng, 3, 3), [2, 2, 1])
            assert dangling_flat_equals(F(b, 1, 3), F(b * c, 1, 3), pure_only=True)

    def test_non_pure_dangling_moves_the_graph(self):
        c = cable(B(2, 1), [2, 1])
        assert transport_edges({1}, c) == frozenset({2})
        assert dangling_flat_equals(F(B(3), 1), F(c, 2))
        assert not dangling_flat_equals(F(B(3), 1), F(c, 2), pure_only=True)
        assert not dangling_flat_equals(F(B(3), 1), F(c, 1))

    @given(rngs)
    def test_transport_matches_block_motion(self, rng):
        n = rng.randint(2, 7)
        G = frozenset(e for e in range(1, n) if rng.random() < 0.4)
        widths = block_widths(n, G)
        u = random_word(rng, len(widths), 6) if len(widths) > 1 else B(1)
        c = cable(u, widths)
        # follow each block to its bottom position through the decabled braid
        from oracles import strand_positions

        pos = strand_positions(len(widths), u.w)
        start_at = {}
        offset = 1
        for k in sorted(range(len(widths)), key=lambda k: pos[k]):
            start_at[k] = offset
            offset += widths[k]
        moved = frozenset(start_at[k] + t for k in range(len(widths)) for t in range(widths[k] - 1))
        assert transport_edges(G, c) == moved
        assert dangling_flat_equals(F(B(n), *G), F(c, *moved))


class TestStabilizers:
    def test_examples(self):
        assert stabilizer_membership(B(4), frozenset({1, 3}))
        assert not stabilizer_membership(B(2, 1, 1), frozenset({1}))
        assert stabilizer_membership(cable(B(2, 1, 1), [2, 1]), frozenset({1}))
        with pytest.raises(ValueError):
            stabilizer_membership(B(3, 1), frozenset({1}))

    @pytest.mark.parametrize("n,radius", [(2, 3), (3, 2), (4, 1)])
    def test_stabilizer_equals_clone_subgroup(self, n, radius):
        graphs = [frozenset(G) for k in range(1, n) for G in itertools.combinations(range(1, n), k)]
        for p in word_ball(n, radius, pure=True):
            for G in graphs:
                fixes = dangling_flat_equals(F(B(n), *G), FlatBraige(p, G), pure_only=True)
                assert stabilizer_membership(p, G) == fixes

    @given(rngs)
    def test_cloned_pure_braids_stabilize(self, rng):
        n = rng.randint(2, 6)
        G = frozenset(e for e in range(1, n) if rng.random() < 0.5)
        widths = block_widths(n, G)
        p = cable(random_pure_word(rng, len(widths), 3), widths)
        assert stabilizer_membership(p, G)


class TestTruncations:
    def test_small_counts(self):
        assert build_truncation(2, 0).count_by_dim() == [1]
        X = build_truncation(3, 0)
        assert X.count_by_dim() == [2]
        X = build_truncation(4, 0)
        assert X.count_by_dim() == [3, 1]
        (edge,) = [s for s in X.simplices if len(s) == 2]
        assert {frozenset(X.vertices[i].edges) for i in edge} == {frozenset({1}), frozenset({3})}

    def test_regression_counts(self):
        # frozen from enumeration
        assert build_truncation(4, 2, "EB").count_by_dim() == [39, 31]
        assert build_truncation(4, 2, "PB").count_by_dim() == [237, 405, 137]

    @pytest.mark.parametrize("variant", braige.VARIANTS)
    def test_invariants(self, variant):
        X = build_truncation(4, 1, variant)
        simplices = set(X.simplices)
        for s in X.simplices:
            for k in range(1, len(s)):
                for face in itertools.combinations(s, k):
                    assert face in simplices
        for i, j in itertools.combinations(range(len(X.vertices)), 2):
            assert not dangling_flat_equals(X.vertices[i], X.vertices[j], X.pure)
        for rep, s in zip(X.simplex_reps, X.simplices):
            assert find_simplex(X, rep) == s
            if variant in ("EB", "EPB"):
                assert rep.is_elementary()
            if X.pure:
                assert is_pure(rep.braid)

    def test_monotone_in_length(self):
        small, big = build_truncation(4, 1, "EB"), build_truncation(4, 2, "EB")
        for v in small.vertices:
            assert find_vertex(big, v) is not None
        for rep in small.simplex_reps:
            assert find_simplex(big, rep) is not None

    def test_graph_parameter(self):
        X = build_truncation(4, 1, "PB", graph={1, 2})
        assert all(v.edges <= {1, 2} for v in X.vertices)
        assert max(len(s) for s in X.simplices) == 2

    def test_epb_classes_stay_distinct_under_full_dangling(self):
        X = build_truncation(4, 1, "EPB")
        for i, j in itertools.combinations(range(len(X.vertices)), 2):
            assert not dangling_flat_equals(X.vertices[i], X.vertices[j])

    def test_export(self):
        X = build_truncation(4, 0)
        data = json.loads(json.dumps(X.to_json()))
        assert data["simplices"] == [[0], [1], [2], [0, 2]]
        assert FlatBraige.from_json(data["vertices"][0]) == X.vertices[0]
        dot = X.to_dot()
        assert dot.startswith("graph") and "v0 -- v2" in dot

    def test_errors(self):
        with pytest.raises(ValueError):
            build_truncation(1, 0)
        with pytest.raises(ValueError):
            build_truncation(3, 0, "XX")
        with pytest.raises(Exception):
            build_truncation(5, 2, "flat", max_simplices=10)

    def test_left_action_is_simplicial(self):
        X = build_truncation(4, 1, "EB")
        for g in (B(4, 1), B(4, -3), B(4, 2)):
            for rep in X.simplex_reps:
                moved = FlatBraige(g * rep.braid, rep.edges)
                faces = [FlatBraige(moved.braid, frozenset({e})) for e in moved.edges]
                assert all(has_face(moved, f) for f in faces)
                assert len({arcs_key(f) for f in faces}) == len(faces)


def arcs_key(x):
    return tuple(sorted(a.key() for a in arcs.project_pi(x).arcs))


class TestDescendingLink:
    @pytest.mark.parametrize("tree,L", [("100", 0), ("10100", 1), ("1100100", 0), ("1100100", 1)])
    def test_model_matches_truncation(self, tree, L):
        T = Forest.parse(tree)
        n = T.n_leaves
        x = DanglingSpraige(Spraige(T, BraidWord(n), Forest.parse(",".join(["0"] * n))))
        m = descending_link_model(x, L)
        assert m.bijective and m.order_reversing
        assert len(m.elements) == len(m.truncation.simplices)
        if (tree, L) == ("1100100", 0):
            assert m.truncation.count_by_dim() == [3, 1]


class TestFiberWitness:
    def test_disjoint_pair(self):
        w = fiber_join_witness(F(B(4), 1), F(B(4), 3), F(B(4), 1, 3))
        assert dangling_flat_equals(w.simplex, F(B(4), 1, 3))

    def test_dangled_pair(self):
        c = cable(B(3, 2, 2), [1, 1, 2])  # pure, clone on the merged pair {3, 4}
        v, s = F(B(4), 1), F(c, 3)
        w = fiber_join_witness(v, s, F(B(4), 1, 3))
        assert has_face(w.simplex, v) and has_face(w.simplex, s)
        assert w.simplex.is_elementary()

    def test_twisted_pair(self):
        v, s = F(B(4, 1, 1), 1), F(B(4, 3, 3), 3)
        w = fiber_join_witness(v, s, F(B(4), 1, 3))
        assert w.simplex.edges == frozenset({1, 3})
        assert has_face(w.simplex, v) and has_face(w.simplex, s)

    @given(rngs)
    def test_pure_translates(self, rng):
        p = random_pure_word(rng, 5, 2)
        v, s = F(p, 1), F(p, 3)
        w = fiber_join_witness(v, s, F(p, 1, 3), pure=True)
        assert has_face(w.simplex, v, True) and has_face(w.simplex, s, True)

    def test_requires_a_frame(self):
        with pytest.raises(ValueError):
            fiber_join_witness(F(B(4), 1), F(B(4), 3), None)
        with pytest.raises(ValueError):
            fiber_join_witness(F(B(4), 1), F(B(4), 2), F(B(4), 1, 2))

    @pytest.mark.parametrize("n,L,variant", [(4, 1, "EB"), (4, 1, "EPB"), (5, 1, "EB")])
    def test_fiber_join_check(self, n, L, variant):
        rep = fiber_join_check(n, L, variant, random.Random(0))
        assert rep.ok, rep.failures[:3]
        assert rep.selections > 0
