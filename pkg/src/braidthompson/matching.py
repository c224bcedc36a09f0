"""Graph complexes: matching complexes, full subgraph complexes and the defect.

Graph constructors take the NODE count everywhere.  ``Graph`` stores both
the node and the edge count, so statements phrased by edge count (the
linear graph with m edges has m+1 nodes) can be converted explicitly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .homology import (
    HomologyReport,
    ResourceCapExceeded,
    SimplicialComplex,
    pi1_verdict,
    reduced_homology,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    nodes: int
    edges: tuple[Edge, ...]
    name: str = "custom"

    def __post_init__(self) -> None:
        clean = []
        for a, b in self.edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (1 <= a <= self.nodes and 1 <= b <= self.nodes):
                raise ValueError(f"edge {(a, b)} out of range")
            clean.append((min(a, b), max(a, b)))
        if len(set(clean)) != len(clean):
            raise ValueError("multiple edges are not allowed")
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)), f"K{n}")


def linear_graph(nodes: int) -> Graph:
    return Graph(nodes, tuple((i, i + 1) for i in range(1, nodes)), f"L[{nodes} nodes]")


def linear_graph_by_edges(m: int) -> Graph:
    return linear_graph(m + 1)


def cyclic_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 nodes")
    edges = tuple((i, i + 1) for i in range(1, n)) + ((1, n),)
    return Graph(n, edges, f"C{n}")


def matchings(g: Graph, max_size: int | None = None) -> Iterable[tuple[int, ...]]:
    """Nonempty matchings as sorted tuples of edge indices."""
    E = g.edges
    limit = len(E) if max_size is None else max_size

    def rec(start: int, used: frozenset[int], cur: list[int]):
        for k in range(start, len(E)):
            a, b = E[k]
            if a in used or b in used:
                continue
            cur.append(k)
            yield tuple(cur)
            if len(cur) < limit:
                yield from rec(k + 1, used | {a, b}, cur)
            cur.pop()

    yield from rec(0, frozenset(), [])


def matching_complex(g: Graph, max_dim: int | None = None) -> SimplicialComplex:
    """M(g): a simplex for every nonempty matching.

    ``max_dim`` truncates to that skeleton.
    """
    by_dim: list[list[tuple[int, ...]]] = []
    size = None if max_dim is None else max_dim + 1
    for m in matchings(g, size):
        while len(by_dim) < len(m):
            by_dim.append([])
        by_dim[len(m) - 1].append(m)
    for layer in by_dim:
        layer.sort()
    skel = max_dim
    return SimplicialComplex(list(g.edges), by_dim, skel)


def full_subgraph_complex(n: int) -> SimplicialComplex:
    """H(K_n): every nonempty set of edges is a simplex."""
    if n < 2:
        raise ValueError("need n >= 2")
    E = complete_graph(n).edges
    if len(E) > 16:
        raise ResourceCapExceeded("full subgraph complex too large to list")
    return SimplicialComplex.from_facets(list(E), [range(len(E))])


def defect(edges: Iterable[Edge]) -> int:
    edges = list(edges)
    if not edges:
        raise ValueError("defect needs at least one edge")
    nodes = {v for e in edges for v in e}
    return 2 * len(edges) - len(nodes)


def _defect0(edges: Sequence[Edge]) -> int:
    return 2 * len(edges) - len({v for e in edges for v in e}) if edges else 0


# -------------------------------------------------------------- arithmetic

def nu(m: int) -> int:
    return (m + 1) // 3 - 1


def eta_main(ell: int) -> int:
    return (ell - 1) // 4


def eta_app(ell: int) -> int:
    return (ell - 2) // 4


def floor_lemma_check(ms: Sequence[int]) -> bool:
    """sum nu(m_i) >= nu(sum m_i - 4(l-1))."""
    ell = len(ms)
    return sum(nu(m) for m in ms) >= nu(sum(ms) - 4 * (ell - 1))


def floor_lemma_exhaustive(max_ell: int = 4, lo: int = -10, hi: int = 10) -> list[tuple[int, ...]]:
    """All violations for 1 <= l <= max_ell and m_i in [lo, hi]."""
    bad = []
    for ell in range(1, max_ell + 1):
        for ms in itertools.product(range(lo, hi + 1), repeat=ell):
            if not floor_lemma_check(ms):
                bad.append(ms)
    return bad


# ------------------------------------------------------------ Morse check

@dataclass
class MorseReport:
    graph: tuple[Edge, ...]
    n: int
    defect: int
    edges: int
    used_nodes: int
    isolated_edges: tuple[Edge, ...]
    down_size: int
    up_size: int
    join_ok: bool
    up_iso_ok: bool
    down_kind: str  # "sphere" or "contractible"
    down_ok: bool
    down_homology: HomologyReport | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.join_ok and self.up_iso_ok and self.down_ok

    def to_json(self) -> dict:
        return {
            "graph": [list(e) for e in self.graph],
            "n": self.n,
            "defect": self.defect,
            "edges": self.edges,
            "used_nodes": self.used_nodes,
            "isolated_edges": [list(e) for e in self.isolated_edges],
            "down_link_size": self.down_size,
            "up_link_size": self.up_size,
            "join": self.join_ok,
            "up_link_iso": self.up_iso_ok,
            "down_link": self.down_kind,
            "down_link_ok": self.down_ok,
            "ok": self.ok,
        }


def _height(edges: Sequence[Edge]) -> tuple[int, int]:
    return (_defect0(edges), -len(edges))


def morse_decomposition_check(n: int, graph: Iterable[Edge], max_edges: int = 12) -> MorseReport:
    """Check the descending-link structure of a subgraph of K_n.

    The height is (defect, -edge count) on nonempty subgraphs.  The
    descending link is gathered straight from that definition: proper
    subgraphs and supergraphs of lower height.  Supergraphs are found by
    depth-first search, pruned as soon as the defect goes up (defect never
    decreases when edges are added).
    """
    G = tuple(sorted({(min(a, b), max(a, b)) for a, b in graph}))
    e = len(G)
    if e < 2:
        raise ValueError("need at least two edges")
    d = _defect0(G)
    if d < 1:
        raise ValueError("graph is a matching (defect 0)")
    if e > max_edges:
        raise ResourceCapExceeded(f"{e} edges exceeds the cap {max_edges}")
    h = _height(G)
    all_edges = complete_graph(n).edges
    if any(x not in all_edges for x in G):
        raise ValueError("edge outside K_n")
    problems: list[str] = []

    # proper nonempty subgraphs of lower height
    down: list[frozenset[Edge]] = []
    for k in range(1, e):
        for sub in itertools.combinations(G, k):
            if _height(sub) < h:
                down.append(frozenset(sub))

    # proper supergraphs of lower height
    up: list[frozenset[Edge]] = []
    rest = [x for x in all_edges if x not in G]
    gset = frozenset(G)

    def grow(start: int, cur: list[Edge]) -> None:
        for k in range(start, len(rest)):
            cand = cur + [rest[k]]
            full = list(G) + cand
            if _defect0(full) > d:
                continue
            if _height(full) < h:
                up.append(gset | frozenset(cand))
            grow(k + 1, cand)

    grow(0, [])

    # join: every down element is below every up element
    join_ok = all(a < b for a in down for b in up)
    if not join_ok:
        problems.append("descending link is not the join of its halves")

    # up-link against the face poset of M(K_{n-r})
    used = sorted({v for x in G for v in x})
    free = [v for v in range(1, n + 1) if v not in used]
    relabel = {v: i + 1 for i, v in enumerate(free)}
    images = set()
    up_iso_ok = True
    for sup in up:
        extra = sup - gset
        try:
            img = frozenset((relabel[a], relabel[b]) for a, b in extra)
        except KeyError:
            up_iso_ok = False
            break
        images.add(img)
    small = complete_graph(len(free))
    target = {frozenset(small.edges[i] for i in m) for m in matchings(small)}
    if up_iso_ok:
        up_iso_ok = images == target and len(images) == len(up)
    if not up_iso_ok:
        problems.append("up-link differs from the matching complex on the unused nodes")

    # down-link: a subcomplex of the boundary of the simplex on the edges of G
    isolated = tuple(
        x for x in G if all(set(x).isdisjoint(y) for y in G if y != x)
    )
    index = {x: i for i, x in enumerate(G)}
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(e - 1)]
    for s in down:
        by_dim[len(s) - 1].append(tuple(sorted(index[x] for x in s)))
    for layer in by_dim:
        layer.sort()
    K = SimplicialComplex(list(G), by_dim)
    rep = reduced_homology(K)
    if isolated:
        kind = "contractible"
        down_ok = all(rep.is_zero(i) for i in rep.betti)
        if down_ok and K.dim >= 2:
            down_ok = pi1_verdict(K, rep).verdict == "trivial"
    else:
        kind = "sphere"
        down_ok = all(
            rep.group(i) == ((1, []) if i == e - 2 else (0, [])) for i in rep.betti
        ) and rep.top_degree >= e - 2
    if not down_ok:
        problems.append(f"down-link homology does not match a {kind} down-link")
    return MorseReport(
        G, n, d, e, len(used), isolated, len(down), len(up),
        join_ok, up_iso_ok, kind, down_ok, rep, problems,
    )


def positive_defect_subgraphs(n: int) -> Iterable[tuple[Edge, ...]]:
    E = complete_graph(n).edges
    for mask in range(1, 1 << len(E)):
        G = tuple(E[i] for i in range(len(E)) if mask >> i & 1)
        if len(G) >= 2 and _defect0(G) >= 1:
            yield G


def random_positive_defect_subgraph(
    rng: random.Random, n: int, max_edges: int = 10
) -> tuple[Edge, ...]:
    E = complete_graph(n).edges
    while True:
        k = rng.randint(2, min(max_edges, len(E)))
        G = tuple(sorted(rng.sample(E, k)))
        if _defect0(G) >= 1:
            return G
