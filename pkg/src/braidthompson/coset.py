"""Coset complexes of pure braid groups for the arc and clone families.

A family is a list of subgroups of PB_n given by membership oracles.  Its
coset complex has a vertex for every coset gH and a simplex for every set
of cosets with a common element.  Truncations only look at common elements
g in a finite ball of pure braids, so they under-approximate the nerve and
always carry their bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from . import arcs
from .braid import BraidWord, is_pure, is_trivial, pure_generators
from .homology import ResourceCapExceeded
from .braige import (
    FlatBraige,
    TruncatedComplex,
    build_truncation,
    find_vertex,
    stabilizer_membership,
    word_ball,
)

AF = "af"
BF = "bf"


@dataclass(frozen=True)
class SubgroupOracle:
    """PB_n^J (family af) or PB_n^{(J_Gamma)} (family bf) for an index set J."""

    n: int
    family: str
    J: frozenset[int]

    @property
    def name(self) -> str:
        tag = "PB^" if self.family == AF else "PB^clone"
        return f"{tag}{{{','.join(map(str, sorted(self.J)))}}}"

    def contains(self, p: BraidWord) -> bool:
        if p.n != self.n:
            raise ValueError("strand count mismatch")
        if self.family == AF:
            return arcs.stabilizes_base_matching(p, self.J)
        return stabilizer_membership(p, self.J)

    def coset_key(self, g: BraidWord) -> tuple:
        """A value that is constant on the coset gH (the translated base arcs)."""
        img = arcs.apply_braid_system(arcs.base_matching(self.J, self.n), g.inverse())
        return tuple(sorted(a.key() for a in img.arcs))


def family(n: int, kind: str, s: int) -> list[SubgroupOracle]:
    """AF_n^s (all J of size s) or BF_n^s (all s-edge subgraphs of L_n)."""
    if kind not in (AF, BF):
        raise ValueError(f"unknown family {kind!r}")
    if not 1 <= s <= n - 1:
        raise ValueError("need 1 <= s <= n-1")
    return [SubgroupOracle(n, kind, frozenset(J)) for J in itertools.combinations(range(1, n), s)]


def coset_equals(g1: BraidWord, g2: BraidWord, H: SubgroupOracle) -> bool:
    if not (is_pure(g1) and is_pure(g2)):
        raise ValueError("pure braids required")
    return H.contains(g1.inverse() * g2)


@dataclass
class CosetComplexTruncation:
    n: int
    L: int
    family: list[SubgroupOracle]
    ball: list[BraidWord]
    vertices: list[tuple[int, BraidWord]]  # (family index, representative)
    simplices: list[tuple[int, ...]]
    reps: dict[tuple[int, ...], BraidWord] = field(default_factory=dict)

    def count_by_dim(self) -> list[int]:
        top = max((len(s) for s in self.simplices), default=0)
        counts = [0] * top
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def base_simplex(self) -> tuple[int, ...]:
        return tuple(sorted(self.find_vertex(a, BraidWord(self.n)) for a in range(len(self.family))))

    def find_vertex(self, alpha: int, g: BraidWord) -> int | None:
        H = self.family[alpha]
        for idx in self._index.get((alpha, H.coset_key(g)), ()):
            if coset_equals(self.vertices[idx][1], g, H):
                return idx
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "maxlen": self.L,
            "family": [H.name for H in self.family],
            "vertices": [
                {"subgroup": self.family[a].name, "rep": g.to_json()} for a, g in self.vertices
            ],
            "simplices": [list(s) for s in self.simplices],
        }

    _index: dict = field(default_factory=dict, repr=False)


def build_nerve_truncation(
    n: int, L: int, fam: Sequence[SubgroupOracle], max_simplices: int = 500_000
) -> CosetComplexTruncation:
    """Cosets gH with g in the pure ball of radius L; simplices from common elements."""
    if n < 2:
        raise ValueError("need n >= 2")
    fam = list(fam)
    ball = word_ball(n, L, pure=True)
    vertices: list[tuple[int, BraidWord]] = []
    index: dict[tuple, list[int]] = {}

    def vertex(alpha: int, g: BraidWord) -> int:
        H = fam[alpha]
        bucket = index.setdefault((alpha, H.coset_key(g)), [])
        for idx in bucket:
            if coset_equals(vertices[idx][1], g, H):
                return idx
        vertices.append((alpha, g))
        bucket.append(len(vertices) - 1)
        return len(vertices) - 1

    simplices: dict[tuple[int, ...], BraidWord] = {}
    for g in ball:
        ids = [vertex(a, g) for a in range(len(fam))]
        for k in range(1, len(ids) + 1):
            for sub in itertools.combinations(ids, k):
                s = tuple(sorted(sub))
                if s not in simplices:
                    if len(simplices) >= max_simplices:
                        raise ResourceCapExceeded(f"simplex cap {max_simplices} exceeded")
                    simplices[s] = g
    order = sorted(simplices, key=lambda s: (len(s), s))
    X = CosetComplexTruncation(n, L, fam, ball, vertices, order, {s: simplices[s] for s in order})
    X._index = index
    return X


# ------------------------------------------------------- fundamental domains

@dataclass
class FundamentalDomainReport:
    covered: bool
    orbit_separated: bool
    uncovered: list = field(default_factory=list)
    collisions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.covered and self.orbit_separated


def fundamental_domain_check(
    simplices: Iterable[Iterable[Hashable]],
    C: Iterable[Hashable],
    group: Sequence,
    act: Callable[[object, Hashable], Hashable | None],
) -> FundamentalDomainReport:
    """Is the simplex C a fundamental domain for the action on the listed simplices?

    Every simplex must be g(tau) for a face tau of C and some listed g, and
    no listed g may carry a vertex of C to a different vertex of C (that is
    exactly when two distinct faces of C share an orbit, given that the
    action is by simplicial automorphisms).  ``act`` returns None for images
    outside the truncation.
    """
    C = list(C)
    cset = set(C)
    images = []
    collisions = []
    for g in group:
        img = {v: act(g, v) for v in C}
        images.append(set(w for w in img.values() if w is not None))
        for v, w in img.items():
            if w in cset and w != v:
                collisions.append((g, v, w))
    uncovered = []
    for s in simplices:
        s = set(s)
        if not any(s <= im for im in images):
            uncovered.append(sorted(s, key=repr))
    return FundamentalDomainReport(not uncovered, not collisions, uncovered, collisions)


def braige_fundamental_domain_check(X: TruncatedComplex) -> FundamentalDomainReport:
    """[(id, L_n)] against a truncated PB_n(L_n), acting by the pure ball."""
    n = X.n
    C = [find_vertex(X, FlatBraige(BraidWord(n), frozenset({j}))) for j in range(1, n)]
    if None in C:
        return FundamentalDomainReport(False, True, [["base simplex missing"]])
    group = word_ball(n, X.L, pure=X.pure)

    def act(g: BraidWord, v: int):
        rep = X.vertices[v]
        return find_vertex(X, FlatBraige(g * rep.braid, rep.edges))

    return fundamental_domain_check(X.simplices, C, group, act)


@dataclass
class IsomorphismReport:
    n: int
    L: int
    nerve_counts: list[int]
    braige_counts: list[int]
    vertex_bijection: bool
    simplex_bijection: bool
    fundamental_domain: bool

    @property
    def ok(self) -> bool:
        return self.vertex_bijection and self.simplex_bijection and self.fundamental_domain

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "maxlen": self.L,
            "nerve_counts": self.nerve_counts,
            "braige_counts": self.braige_counts,
            "vertex_bijection": self.vertex_bijection,
            "simplex_bijection": self.simplex_bijection,
            "fundamental_domain": self.fundamental_domain,
            "ok": self.ok,
        }


def nerve_braige_isomorphism(n: int, L: int) -> IsomorphismReport:
    """Compare the truncated coset complex of BF_n^1 with truncated PB_n(L_n).

    The coset gH_j goes to [(g, {j})].  Both sides are deduplicated by their
    own oracles (clone tests on pairs for cosets, block decabling for
    dangling), so agreement is a genuine cross-check.
    """
    fam = family(n, BF, 1)
    N = build_nerve_truncation(n, L, fam)
    X = build_truncation(n, L, "PB")
    vmap: list[int | None] = []
    for alpha, g in N.vertices:
        j = min(fam[alpha].J)
        vmap.append(find_vertex(X, FlatBraige(g, frozenset({j}))))
    vbij = None not in vmap and len(set(vmap)) == len(vmap) == len(X.vertices)
    sbij = False
    if vbij:
        images = {tuple(sorted(vmap[v] for v in s)) for s in N.simplices}
        sbij = len(images) == len(N.simplices) and images == set(X.simplices)
    fd = braige_fundamental_domain_check(X).ok
    return IsomorphismReport(n, L, N.count_by_dim(), X.count_by_dim(), vbij, sbij, fd)


# ----------------------------------------------------------------- generation

@dataclass
class GenerationReport:
    n: int
    family: str
    s: int
    coverage: dict[tuple[int, int], list[str]]

    @property
    def all_covered(self) -> bool:
        return all(self.coverage.values())

    @property
    def uncovered(self) -> list[tuple[int, int]]:
        return [k for k, v in self.coverage.items() if not v]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "s": self.s,
            "all_covered": self.all_covered,
            "coverage": {f"A{i},{j}": v for (i, j), v in self.coverage.items()},
            "uncovered": [f"A{i},{j}" for i, j in self.uncovered],
        }


def generation_check(n: int, kind: str, s: int = 1) -> GenerationReport:
    """Which family members contain each standard generator A_ij."""
    fam = family(n, kind, s)
    coverage = {}
    for i, j, a in pure_generators(n):
        coverage[(i, j)] = [H.name for H in fam if H.contains(a)]
    return GenerationReport(n, kind, s, coverage)


def extreme_family_check(n: int, L: int) -> list[BraidWord]:
    """Ball elements where BF_n^{n-1} membership disagrees with triviality."""
    (H,) = family(n, BF, n - 1)
    return [p for p in word_ball(n, L, pure=True) if H.contains(p) != is_trivial(p)]
