from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidthompson import arcs
from braidthompson.arcs import (
    Arc,
    ArcSystem,
    apply_braid,
    apply_braid_system,
    arc_system_equals,
    base_arc,
    base_matching,
    is_faithful,
    project_pi,
    stabilizes_base_matching,
)
from braidthompson.braid import BraidWord, cable, equals, random_pure_word, random_word
from braidthompson.braige import FlatBraige, random_clone_braid, transport_edges
from oracles import arc_coords, exponent_sum
from strategies import braids

# Coordinates of the straight arcs, evaluated from the coordinate definition
# (a_i, then b_i) and frozen.
BASE_COORDS = {
    (3, 1): (0, 1),
    (3, 2): (0, -1),
    (4, 1): (0, 0, 1, 0),
    (4, 2): (0, 0, -1, 1),
    (4, 3): (0, 0, 0, -1),
    (5, 1): (0, 0, 0, 1, 0, 0),
    (5, 2): (0, 0, 0, -1, 1, 0),
    (5, 3): (0, 0, 0, 0, -1, 1),
    (5, 4): (0, 0, 0, 0, 0, -1),
}


def B(n, *w):
    return BraidWord(n, tuple(w))


@pytest.mark.parametrize("key", sorted(BASE_COORDS))
def test_base_arc_fixture(key):
    n, j = key
    a = base_arc(j, n)
    assert a.coords == BASE_COORDS[key] == arc_coords(j, n, ())
    assert a.ends == (j, j + 1)


def test_examples():
    a = base_arc(2, 4)
    assert apply_braid(a, B(4)) == a
    M = base_matching({1, 3}, 4)
    assert len(M.arcs) == 2 and set(M.arcs[0].ends).isdisjoint(M.arcs[1].ends)
    for n in range(3, 7):
        for j in range(1, n):
            assert apply_braid(base_arc(j, n), B(n, j)) == base_arc(j, n)
        for j in range(1, n - 1):
            img = apply_braid(base_arc(j, n), B(n, j + 1))
            assert img.ends == (j, j + 2)
            assert all(img.coords != base_arc(k, n).coords for k in range(1, n))
    with pytest.raises(ValueError):
        base_arc(4, 4)


def test_projection_examples():
    assert arc_system_equals(project_pi(FlatBraige(B(4), {1, 3})), base_matching({1, 3}, 4))
    p = cable(random_pure_word(random.Random(2), 3, 4), [2, 2, 1])
    assert arc_system_equals(project_pi(FlatBraige(p, {1, 3})), base_matching({1, 3}, 5))
    assert arc_system_equals(project_pi(FlatBraige(B(2, 1, 1), {1})), base_matching({1}, 2))


def test_equality_and_faithfulness():
    s = base_matching({1}, 3)
    assert arc_system_equals(s, s)
    assert arc_system_equals(s, apply_braid_system(s, B(3, 1, 1)))
    assert not arc_system_equals(s, base_matching({2}, 3))
    assert is_faithful(base_matching({1, 3}, 5))
    a = base_arc(1, 3)
    twin = apply_braid(a, B(3, 2, 2))
    assert twin.ends == a.ends and twin != a
    assert not is_faithful(ArcSystem(3, (a, twin)))
    assert is_faithful(apply_braid_system(base_matching({1, 3}, 5), B(5, 2, -4, 1)))


def test_stabilizer_examples():
    assert stabilizes_base_matching(B(3), {1, 2})
    assert stabilizes_base_matching(B(2, 1, 1), {1})
    assert not stabilizes_base_matching(B(3, 2, 1, 1, -2), {1})
    with pytest.raises(ValueError):
        stabilizes_base_matching(B(3, 1), {1})


def test_json_round_trip():
    a = apply_braid(base_arc(1, 4), B(4, 2, -3))
    assert Arc.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        Arc(3, (1, 1), (0, 0))
    with pytest.raises(ValueError):
        Arc(4, (1, 2), (0, 0))


@given(braids(min_n=3, max_n=7, max_len=14), st.data())
def test_action_matches_free_group_oracle(b, data):
    j = data.draw(st.integers(1, b.n - 1))
    assert apply_braid(base_arc(j, b.n), b).coords == arc_coords(j, b.n, b.w)


@given(braids(min_n=3, max_n=7, max_len=12), st.data())
def test_relations_and_inverse(b, data):
    n = b.n
    j = data.draw(st.integers(1, n - 1))
    a = apply_braid(base_arc(j, n), b)
    i = data.draw(st.integers(1, n - 2))
    assert apply_braid(a, B(n, i, i + 1, i)) == apply_braid(a, B(n, i + 1, i, i + 1))
    far = [k for k in range(1, n) if abs(k - i) >= 2]
    if far:
        k = data.draw(st.sampled_from(far))
        assert apply_braid(a, B(n, i, k)) == apply_braid(a, B(n, k, i))
    c = data.draw(braids(n=n, max_len=8))
    assert apply_braid(apply_braid(a, c), c.inverse()) == a


def test_action_cross_validates_word_problem():
    rng = random.Random(8)
    agree = 0
    for _ in range(300):
        n = rng.randint(3, 6)
        b = random_word(rng, n, 8)
        c = b * B(n, *((1, -1) * rng.randint(0, 2))) if rng.random() < 0.5 else random_word(rng, n, 8)
        same_action = all(
            apply_braid(base_arc(j, n), b) == apply_braid(base_arc(j, n), c) for j in range(1, n)
        ) and exponent_sum(b.w) == exponent_sum(c.w)
        assert same_action == equals(b, c)
        agree += same_action
    assert agree > 50


@given(st.randoms(use_true_random=False))
def test_pi_constant_on_dangling_classes(rng):
    n = rng.randint(2, 6)
    G = frozenset(e for e in range(1, n) if rng.random() < 0.5) or frozenset({1})
    b = random_word(rng, n, 6)
    c = random_clone_braid(rng, n, G, 4)
    x, y = FlatBraige(b, G), FlatBraige(b * c, transport_edges(G, c))
    assert arc_system_equals(project_pi(x), project_pi(y))
    assert len(project_pi(x).arcs) == len(G)


@given(st.randoms(use_true_random=False))
def test_translates_of_the_base_simplex(rng):
    n = rng.randint(3, 7)
    J = set(range(1, n, 2))
    p = random_pure_word(rng, n, 3)
    s = apply_braid_system(base_matching(J, n), p)
    assert is_faithful(s)
    assert arc_system_equals(apply_braid_system(s, p.inverse()), base_matching(J, n))
    assert arc_system_equals(s, project_pi(FlatBraige(p.inverse(), J)))


def test_coordinate_helper_matches_definition():
    up = [0, 1, 1, 0]
    down = [0, 1, 1, 0]
    beta = [0, 2, 0, 0]
    assert arcs.coords_from_intersections(3, up, down, beta) == (0, 1)
