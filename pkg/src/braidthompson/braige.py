"""Flat braiges (b, Gamma) and truncated braige complexes.

Gamma is a set of edges of the linear graph on n nodes; edge j joins nodes
j and j+1 at the bottom of b.  Dangling identifies (b, Gamma) with
(bc, Gamma^c) whenever c lies in B_n^{(J_Gamma)}, the braids in which every
merged pair of strands is a clone pair.  Pure dangling only allows pure c.

Complexes are truncated: vertices come from representatives whose braid lies
in a finite ball of words, and the bound is recorded with the output.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import arcs
from .braid import (
    BraidWord,
    _rho0,
    cable,
    equals,
    garside_normal_form,
    in_cabling_image,
    is_clone,
    is_pure,
    pure_generators,
)
from .homology import ResourceCapExceeded
from .forest import CARET, LEAF, Forest, trivial_forest
from .spraige import DanglingSpraige, Spraige, dangling_equals, leq, multiply

VARIANTS = ("EB", "EPB", "PB", "flat")


@dataclass(frozen=True)
class FlatBraige:
    braid: BraidWord
    edges: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        edges = frozenset(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for e in edges:
            if not 1 <= e <= self.braid.n - 1:
                raise ValueError(f"edge {e} out of range for {self.braid.n} nodes")

    @property
    def n(self) -> int:
        return self.braid.n

    def is_elementary(self) -> bool:
        return all(e + 1 not in self.edges for e in self.edges)

    def to_json(self) -> dict:
        return {"braid": self.braid.to_json(), "edges": sorted(self.edges)}

    @classmethod
    def from_json(cls, obj: dict) -> FlatBraige:
        return cls(BraidWord.from_json(obj["braid"]), frozenset(obj.get("edges", ())))


def block_widths(n: int, edges: Iterable[int]) -> list[int]:
    """Widths of the blocks of nodes joined by the edges, left to right."""
    edges = set(edges)
    widths = [1]
    for j in range(1, n):
        if j in edges:
            widths[-1] += 1
        else:
            widths.append(1)
    return widths


def transport_edges(edges: Iterable[int], c: BraidWord) -> frozenset[int]:
    """Gamma^c: edge j moves to rho_c(j)."""
    rho = _rho0(c.n, c.w)
    return frozenset(rho[j - 1] + 1 for j in edges)


def in_clone_subgroup(c: BraidWord, edges: Iterable[int]) -> bool:
    """c in B_n^{(J)} decided block-wise through the cabling image."""
    return in_cabling_image(c, block_widths(c.n, edges))


def dangling_flat_equals(x: FlatBraige, y: FlatBraige, pure_only: bool = False) -> bool:
    if x.n != y.n:
        raise ValueError("strand count mismatch")
    if len(x.edges) != len(y.edges):
        return False
    g = x.braid.inverse() * y.braid
    if pure_only:
        if not is_pure(g) or x.edges != y.edges:
            return False
    elif transport_edges(x.edges, g) != y.edges:
        return False
    return in_clone_subgroup(g, x.edges)


def stabilizer_membership(p: BraidWord, edges: Iterable[int]) -> bool:
    """p in PB_n^{(J_Gamma)}, by a clone test on each merged pair."""
    if not is_pure(p):
        raise ValueError("pure braid required")
    return all(is_clone(p, j) for j in edges)


def left_act(g: BraidWord, x: FlatBraige) -> FlatBraige:
    return FlatBraige(g * x.braid, x.edges)


# ----------------------------------------------------------------- word balls

def word_ball(n: int, L: int, pure: bool = False) -> list[BraidWord]:
    """Group elements of word length <= L, shortest representative first.

    Artin generators for ``pure=False``; standard pure generators A_ij and
    their inverses otherwise.  Duplicates are removed by normal form.
    """
    return list(_word_ball(n, L, pure))


@functools.lru_cache(maxsize=64)
def _word_ball(n: int, L: int, pure: bool) -> tuple[BraidWord, ...]:
    if pure:
        letters = []
        for _, _, a in pure_generators(n):
            letters.extend((a, a.inverse()))
    else:
        letters = [BraidWord(n, (s * i,)) for i in range(1, n) for s in (1, -1)]
    ident = BraidWord(n)
    seen = {garside_normal_form(ident)}
    ball = [ident]
    frontier = [ident]
    for _ in range(L):
        nxt = []
        for b in frontier:
            for a in letters:
                c = b * a
                key = garside_normal_form(c)
                if key not in seen:
                    seen.add(key)
                    nxt.append(c)
        ball.extend(nxt)
        frontier = nxt
    return tuple(ball)


def _graphs(n: int, variant: str, within: frozenset[int] | None) -> list[frozenset[int]]:
    universe = sorted(within) if within is not None else list(range(1, n))
    out = []
    for k in range(1, len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            g = frozenset(combo)
            if variant in ("EB", "EPB") and any(e + 1 in g for e in g):
                continue
            out.append(g)
    return out


@dataclass
class TruncatedComplex:
    n: int
    L: int
    variant: str
    vertices: list[FlatBraige]
    simplices: list[tuple[int, ...]]
    graph: frozenset[int] | None = None
    simplex_reps: list[FlatBraige] = field(default_factory=list)
    buckets: dict[tuple, list[int]] = field(default_factory=dict, repr=False)

    @property
    def pure(self) -> bool:
        return self.variant in ("EPB", "PB")

    def count_by_dim(self) -> list[int]:
        top = max((len(s) for s in self.simplices), default=0)
        counts = [0] * top
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "maxlen": self.L,
            "variant": self.variant,
            "graph": sorted(self.graph) if self.graph is not None else None,
            "vertices": [v.to_json() for v in self.vertices],
            "simplices": [list(s) for s in self.simplices],
        }

    def to_dot(self) -> str:
        lines = ["graph truncation {"]
        for i, v in enumerate(self.vertices):
            label = json.dumps(f"{list(v.braid.w)} | {sorted(v.edges)}")
            lines.append(f"  v{i} [label={label}];")
        for s in self.simplices:
            if len(s) == 2:
                lines.append(f"  v{s[0]} -- v{s[1]};")
        lines.append("}")
        return "\n".join(lines)


def _arc_key(x: FlatBraige) -> tuple:
    return tuple(sorted(a.key() for a in arcs.project_pi(x).arcs))


class _Dedup:
    """Dangling classes bucketed by their arc projection, then checked exactly."""

    def __init__(self, pure: bool):
        self.pure = pure
        self.buckets: dict[tuple, list[int]] = {}
        self.reps: list[FlatBraige] = []

    def add(self, x: FlatBraige) -> int:
        key = (len(x.edges), _arc_key(x))
        bucket = self.buckets.setdefault(key, [])
        for idx in bucket:
            if dangling_flat_equals(self.reps[idx], x, self.pure):
                return idx
        self.reps.append(x)
        bucket.append(len(self.reps) - 1)
        return len(self.reps) - 1


def build_truncation(
    n: int,
    L: int,
    variant: str = "EB",
    graph: Iterable[int] | None = None,
    max_simplices: int = 200_000,
) -> TruncatedComplex:
    """Truncated EB_n, EPB_n, PB_n(Gamma) or the non-elementary flat complex.

    Pure variants draw braids from the ball in the standard pure generators,
    the others from the ball in Artin generators.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n < 2 or L < 0:
        raise ValueError("need n >= 2 and L >= 0")
    pure = variant in ("EPB", "PB")
    within = frozenset(graph) if graph is not None else None
    ball = word_ball(n, L, pure)
    graphs = _graphs(n, variant, within)
    edges1 = sorted({e for g in graphs for e in g})
    vdedup = _Dedup(pure)
    vid: dict[tuple[int, int], int] = {}
    for bi, b in enumerate(ball):
        for e in edges1:
            vid[bi, e] = vdedup.add(FlatBraige(b, frozenset({e})))
    simplices: dict[tuple[int, ...], FlatBraige] = {}
    for bi, b in enumerate(ball):
        for g in graphs:
            s = tuple(sorted({vid[bi, e] for e in g}))
            if s not in simplices:
                if len(simplices) >= max_simplices:
                    raise ResourceCapExceeded(f"simplex cap {max_simplices} exceeded")
                simplices[s] = FlatBraige(b, g)
    order = sorted(simplices, key=lambda s: (len(s), s))
    return TruncatedComplex(
        n, L, variant, vdedup.reps, order, within,
        [simplices[s] for s in order], vdedup.buckets,
    )


def find_vertex(X: TruncatedComplex, x: FlatBraige) -> int | None:
    if X.buckets:
        for i in X.buckets.get((len(x.edges), _arc_key(x)), ()):
            if dangling_flat_equals(X.vertices[i], x, X.pure):
                return i
        return None
    for i, v in enumerate(X.vertices):
        if dangling_flat_equals(v, x, X.pure):
            return i
    return None


def find_simplex(X: TruncatedComplex, x: FlatBraige) -> tuple[int, ...] | None:
    """The vertex set of [(b, Gamma)] within the truncation, if all its faces are there."""
    ids = []
    for e in sorted(x.edges):
        i = find_vertex(X, FlatBraige(x.braid, frozenset({e})))
        if i is None:
            return None
        ids.append(i)
    s = tuple(sorted(ids))
    if not hasattr(X, "_simplex_set"):
        X._simplex_set = set(X.simplices)
    return s if s in X._simplex_set else None


def has_face(big: FlatBraige, small: FlatBraige, pure_only: bool = False) -> bool:
    """Is [small] a face of [big]?  Faces of [(b, G)] are [(b, G')] for G' in G."""
    k = len(small.edges)
    for sub in itertools.combinations(sorted(big.edges), k):
        if dangling_flat_equals(FlatBraige(big.braid, frozenset(sub)), small, pure_only):
            return True
    return False


# ------------------------------------------------------- descending link model

def forest_from_edges(n: int, edges: Iterable[int]) -> Forest:
    """The elementary forest merging leaf pairs (j, j+1) for j in the edges."""
    edges = set(edges)
    trees = []
    j = 1
    while j <= n:
        if j in edges:
            trees.append(CARET)
            j += 2
        else:
            trees.append(LEAF)
            j += 1
    return Forest(tuple(trees))


@dataclass
class DescendingLinkModel:
    x: DanglingSpraige
    elements: list[DanglingSpraige]
    braiges: list[FlatBraige]
    truncation: TruncatedComplex
    correspondence: list[tuple[int, ...]]  # element index -> simplex of truncation
    bijective: bool
    order_reversing: bool

    def to_json(self) -> dict:
        return {
            "n": self.truncation.n,
            "maxlen": self.truncation.L,
            "elements": [e.rep.to_json() for e in self.elements],
            "correspondence": [list(s) for s in self.correspondence],
            "bijective": self.bijective,
            "order_reversing": self.order_reversing,
            "truncation": self.truncation.to_json(),
        }


def descending_link_model(x: DanglingSpraige, L: int) -> DescendingLinkModel:
    """Elements y below x by elementary merges, matched with EB_n by left cancellation."""
    n = x.feet
    X = build_truncation(n, L, "EB")
    elements: list[DanglingSpraige] = []
    braiges: list[FlatBraige] = []
    for b in word_ball(n, L):
        for g in _graphs(n, "EB", None):
            F = forest_from_edges(n, g)
            y = DanglingSpraige(multiply(x.rep, Spraige(trivial_forest(n), b, F)))
            if any(dangling_equals(y, z) for z in elements):
                continue
            elements.append(y)
            braiges.append(FlatBraige(b, g))
    corr = [find_simplex(X, fb) for fb in braiges]
    bijective = None not in corr and sorted(corr) == sorted(X.simplices)
    order_rev = True
    for i, j in itertools.permutations(range(len(elements)), 2):
        if len(braiges[i].edges) >= len(braiges[j].edges):
            continue
        below = leq(elements[j], elements[i])
        face = corr[i] is not None and corr[j] is not None and set(corr[i]) <= set(corr[j])
        if below != face:
            order_rev = False
            break
    return DescendingLinkModel(x, elements, braiges, X, corr, bijective, order_rev)


# ------------------------------------------------------------- fiber witnesses

def random_clone_braid(rng: random.Random, n: int, edges: Iterable[int], length: int) -> BraidWord:
    """A random element of B_n^{(J)}: a cabled word on the blocks of the edges."""
    widths = block_widths(n, edges)
    m = len(widths)
    w = [rng.randint(1, m - 1) * rng.choice((1, -1)) for _ in range(length)] if m > 1 else []
    return cable(BraidWord(m, tuple(w)), widths)


def arc_keys(x: FlatBraige) -> set[tuple]:
    return {a.key() for a in arcs.project_pi(x).arcs}


def _ball_by_radius(m: int, radius: int, pure: bool) -> Iterable[BraidWord]:
    done = 0
    for r in range(radius + 1):
        ball = _word_ball(m, r, pure)
        yield from ball[done:]
        done = len(ball)


@dataclass(frozen=True)
class FiberWitness:
    simplex: FlatBraige
    dangling: BraidWord  # the clone braid applied to the representative of s
    searched: int  # candidates tried


def fiber_join_witness(
    v: FlatBraige,
    s: FlatBraige,
    frame: FlatBraige | None,
    radius: int = 4,
    pure: bool = False,
) -> FiberWitness:
    """A dangling elementary braige with both v and s as faces.

    ``frame`` is the generative tag: an elementary braige whose arc image
    contains the arc images of v and s.  Its arcs are disjoint by
    construction, which is the hypothesis that cannot be decided from
    coordinates alone.  The witness follows the fiber lemma: dangle s by a
    clone braid c until v's merge pairs are clone pairs in the common
    representative, then merge along the union graph.  Candidates c are
    cables of words of length at most ``radius`` (pure words when ``pure``).
    """
    if frame is None:
        raise ValueError("inputs are not generatively tagged: no frame simplex given")
    if not frame.is_elementary():
        raise ValueError("frame simplex is not elementary")
    fk = arc_keys(frame)
    if not (arc_keys(v) <= fk and arc_keys(s) <= fk):
        raise ValueError("arc images do not lie in the frame simplex")
    if arc_keys(v) & arc_keys(s):
        raise ValueError("v and s share an arc")
    n = v.n
    widths = block_widths(n, s.edges)
    head = v.braid.inverse() * s.braid
    tried = 0
    for u in _ball_by_radius(len(widths), radius, pure):
        tried += 1
        c = cable(u, widths)
        k = head * c
        if pure and not is_pure(k):
            continue
        # a clone braid carries each merged base arc rigidly to a base arc
        rho = _rho0(n, k.w)
        if any(rho[e] != rho[e - 1] + 1 for e in v.edges) or any(
            arcs.apply_braid(arcs.base_arc(e, n), k).coords
            != arcs.base_arc(rho[e - 1] + 1, n).coords
            for e in v.edges
        ):
            continue
        if not in_clone_subgroup(k, v.edges):
            continue
        w = s.braid * c
        union_s = transport_edges(s.edges, c)
        union_v = transport_edges(v.edges, k)
        edges = union_s | union_v
        cand = FlatBraige(w, edges)
        if len(edges) != len(union_s) + len(union_v) or not cand.is_elementary():
            continue
        return FiberWitness(cand, c, tried)
    raise ValueError(f"no witness among {tried} dangling candidates of length <= {radius}")


@dataclass
class FiberReport:
    n: int
    L: int
    variant: str
    simplices: int
    selections: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def fiber_join_check(
    n: int,
    L: int,
    variant: str = "EB",
    rng: random.Random | None = None,
    per_simplex: int = 8,
    radius: int = 4,
) -> FiberReport:
    """For each simplex of a truncation, pick one vertex in the fiber of each
    of its arcs and join them with iterated witnesses."""
    if variant not in ("EB", "EPB"):
        raise ValueError("fiber checks run on EB or EPB truncations")
    rng = rng or random.Random(0)
    X = build_truncation(n, L, variant)
    pure = X.pure
    by_key: dict[tuple, list[int]] = {}
    for i, vx in enumerate(X.vertices):
        (key,) = arc_keys(vx)
        by_key.setdefault(key, []).append(i)
    failures: list[str] = []
    count = 0
    for frame in X.simplex_reps:
        if len(frame.edges) < 2:
            continue
        fibers = []
        for e in sorted(frame.edges):
            (key,) = arc_keys(FlatBraige(frame.braid, frozenset({e})))
            fibers.append(by_key.get(key, []))
        if any(not f for f in fibers):
            failures.append(f"empty fiber over a face of {frame.to_json()}")
            continue
        total = 1
        for f in fibers:
            total *= len(f)
        if total <= per_simplex:
            picks = list(itertools.product(*fibers))
        else:
            picks = [tuple(rng.choice(f) for f in fibers) for _ in range(per_simplex)]
        for pick in picks:
            count += 1
            verts = [X.vertices[i] for i in pick]
            try:
                cur = verts[0]
                for vx in verts[1:]:
                    cur = fiber_join_witness(vx, cur, frame, radius, pure).simplex
            except ValueError as exc:
                failures.append(f"{frame.to_json()} pick {pick}: {exc}")
                continue
            if not all(has_face(cur, vx, pure) for vx in verts):
                failures.append(f"{frame.to_json()} pick {pick}: witness misses a face")
    return FiberReport(n, L, variant, len(X.simplices), count, failures)


def flat_to_json_list(xs: Sequence[FlatBraige]) -> list[dict]:
    return [x.to_json() for x in xs]
