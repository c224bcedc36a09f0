"""Finite simplicial complexes, exact integer homology and pi_1 verdicts.

Simplices are sorted tuples of vertex indices, oriented by that order.
Reduced homology comes from the Smith normal form of the boundary maps,
with the augmentation C_0 -> Z standing in as the boundary in degree 0.
The Smith form is computed by sparse elimination on unit pivots, which
clears almost everything for the complexes met here, followed by a dense
reduction of whatever is left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, Sequence

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

PI1_TRIVIAL = "trivial"
PI1_NONTRIVIAL = "nontrivial"
PI1_INCONCLUSIVE = "inconclusive"


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass
class SimplicialComplex:
    """A complex stored as its simplices grouped by dimension.

    ``by_dim[k]`` lists the k-simplices.  When ``skeleton`` is set, only
    simplices up to that dimension were generated and homology is exact
    only below it.
    """

    labels: list[Hashable]
    by_dim: list[list[tuple[int, ...]]]
    skeleton: int | None = None

    def __post_init__(self) -> None:
        while self.by_dim and not self.by_dim[-1]:
            self.by_dim.pop()

    @classmethod
    def from_facets(
        cls,
        labels: Sequence[Hashable],
        facets: Iterable[Iterable[int]],
        max_dim: int | None = None,
        cap: int = 5_000_000,
    ) -> SimplicialComplex:
        faces: list[set[tuple[int, ...]]] = []
        total = 0
        for f in facets:
            f = tuple(sorted(set(f)))
            top = len(f) - 1 if max_dim is None else min(len(f) - 1, max_dim)
            for k in range(top + 1):
                while len(faces) <= k:
                    faces.append(set())
                for s in itertools.combinations(f, k + 1):
                    if s not in faces[k]:
                        faces[k].add(s)
                        total += 1
                        if total > cap:
                            raise ResourceCapExceeded(f"more than {cap} simplices")
        return cls(list(labels), [sorted(s) for s in faces], max_dim)

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    def is_empty(self) -> bool:
        return not self.by_dim

    def count(self, k: int) -> int:
        return len(self.by_dim[k]) if 0 <= k < len(self.by_dim) else 0

    def f_vector(self) -> list[int]:
        return [len(s) for s in self.by_dim]

    def simplices(self) -> Iterable[tuple[int, ...]]:
        for layer in self.by_dim:
            yield from layer

    def is_downward_closed(self) -> bool:
        present = [set(layer) for layer in self.by_dim]
        for k in range(1, len(self.by_dim)):
            for s in self.by_dim[k]:
                for i in range(k + 1):
                    if s[:i] + s[i + 1:] not in present[k - 1]:
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "labels": [str(x) for x in self.labels],
            "f_vector": self.f_vector(),
            "skeleton": self.skeleton,
            "simplices": [list(s) for s in self.simplices()],
        }

    def to_dot(self) -> str:
        lines = ["graph complex {"]
        for v in range(len(self.labels)):
            lines.append(f'  v{v} [label="{self.labels[v]}"];')
        for a, b in self.by_dim[1] if len(self.by_dim) > 1 else ():
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines)


def boundary_rows(X: SimplicialComplex, k: int) -> list[dict[int, int]]:
    """Rows of the boundary map from k-chains to (k-1)-chains, one per k-simplex."""
    if k == 0:
        return [{0: 1} for _ in range(X.count(0))]
    index = {s: i for i, s in enumerate(X.by_dim[k - 1])}
    rows = []
    for s in X.by_dim[k]:
        row = {}
        for i in range(k + 1):
            row[index[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


# ------------------------------------------------------------ Smith form

def _dense_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    a = [row[:] for row in mat if any(row)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
                        break
            if changed:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a[t:]:
                            row[t], row[j] = row[j], row[t]
                        changed = True
                        break
            if changed:
                continue
            # row and column t are clear; enforce divisibility
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(t, n):
                a[t][j] += a[bad][j]
        diag.append(abs(a[t][t]))
        t += 1
    # normalize to a divisibility chain
    out = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            g = gcd(out[i], out[i + 1])
            lcm = out[i] * out[i + 1] // g if g else 0
            if g != out[i]:
                out[i], out[i + 1] = g, lcm
                changed = True
    return [d for d in out if d]


def smith_invariants(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero invariant factors (divisibility order) of a sparse integer matrix."""
    rows = [dict(r) for r in rows if r]
    cols: dict[int, set[int]] = {}
    for ri, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(ri)
    alive = set(range(len(rows)))
    units = 0
    progress = True
    while progress:
        progress = False
        for ri in range(len(rows)):
            if ri not in alive:
                continue
            r = rows[ri]
            if not r:
                alive.discard(ri)
                continue
            best = None
            for c, v in r.items():
                if v in (1, -1) and (best is None or len(cols[c]) < best[1]):
                    best = (c, len(cols[c]))
            if best is None:
                continue
            c = best[0]
            v = r[c]
            for rj in list(cols[c]):
                if rj == ri:
                    continue
                other = rows[rj]
                f = other[c] * v  # v = +-1, so this is other[c] / v
                for cc, vv in r.items():
                    nv = other.get(cc, 0) - f * vv
                    if nv:
                        if cc not in other:
                            cols[cc].add(rj)
                        other[cc] = nv
                    else:
                        del other[cc]
                        cols[cc].discard(rj)
            for cc in r:
                cols[cc].discard(ri)
            rows[ri] = {}
            alive.discard(ri)
            units += 1
            progress = True
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [1] * units
    used = sorted({c for r in rest for c in r})
    if len(rest) * len(used) > 4_000_000:
        raise ResourceCapExceeded(f"dense residual {len(rest)}x{len(used)} too large")
    pos = {c: i for i, c in enumerate(used)}
    dense = [[0] * len(used) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][pos[c]] = v
    return [1] * units + _dense_invariants(dense)


# -------------------------------------------------------------- homology

@dataclass
class HomologyReport:
    betti: dict[int, int]
    torsion: dict[int, list[int]]
    top_degree: int  # homology is exact in degrees <= top_degree
    pi1: str | None = None
    certified_level: int | None = None
    euler_from_counts: int | None = None
    notes: list[str] = field(default_factory=list)

    def group(self, i: int) -> tuple[int, list[int]]:
        return self.betti.get(i, 0), self.torsion.get(i, [])

    def is_zero(self, i: int) -> bool:
        b, t = self.group(i)
        return b == 0 and not t

    def describe(self, i: int) -> str:
        b, t = self.group(i)
        parts = (["Z"] * b if b <= 3 else [f"Z^{b}"]) + [f"Z/{d}" for d in t]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "reduced_homology": {
                str(i): {"betti": self.betti[i], "torsion": self.torsion[i]}
                for i in sorted(self.betti)
            },
            "exact_through_degree": self.top_degree,
            "pi1": self.pi1,
            "certified_level": self.certified_level,
        }


def reduced_homology(X: SimplicialComplex, max_degree: int | None = None) -> HomologyReport:
    """Exact reduced homology in degrees -1..max_degree.

    Degrees at or above the generated skeleton are not reported.
    """
    complete = X.skeleton is None or X.dim < X.skeleton
    avail = max(X.dim, 0) if complete else X.skeleton - 1
    top = avail if max_degree is None else min(max_degree, avail)
    # invariant factors of the boundary from degree k to k-1, k = 0..top+1
    inv: dict[int, list[int]] = {}
    for k in range(0, top + 2):
        if k > X.dim:
            inv[k] = []
            continue
        ncols = 1 if k == 0 else X.count(k - 1)
        inv[k] = smith_invariants(boundary_rows(X, k), ncols)
    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    if X.is_empty():
        betti[-1], torsion[-1] = 1, []
    else:
        betti[-1], torsion[-1] = 0, []
    for i in range(0, top + 1):
        betti[i] = X.count(i) - len(inv[i]) - len(inv[i + 1])
        torsion[i] = [d for d in inv[i + 1] if d > 1]
    euler = None
    if complete:
        euler = sum((-1) ** k * X.count(k) for k in range(X.dim + 1))
    return HomologyReport(betti, torsion, top, euler_from_counts=euler)


def euler_from_homology(rep: HomologyReport) -> int:
    """Unreduced Euler characteristic from the reduced Betti numbers."""
    if rep.betti.get(-1, 0):
        return 0
    return 1 + sum((-1) ** i * b for i, b in rep.betti.items() if i >= 0)


# ------------------------------------------------------------------- pi_1

@dataclass
class Pi1Result:
    verdict: str
    generators: int
    killed: int
    steps: list[tuple[str, int, int]] = field(default_factory=list)


def pi1_verdict(X: SimplicialComplex, homology: HomologyReport | None = None) -> Pi1Result:
    """Edge-path presentation simplified by generator elimination.

    Each triangle gives a relator in the non-tree edges.  Relators that
    reduce to one letter kill a generator; relators with two letters
    identify two generators.  "trivial" is reported only when every
    generator has been killed, and the sequence of moves is returned.
    """
    if X.count(0) == 0:
        raise ValueError("empty complex")
    if homology is None:
        homology = reduced_homology(X, 1)
    if not homology.is_zero(0):
        raise ValueError("complex is not connected")
    if not homology.is_zero(1):
        return Pi1Result(PI1_NONTRIVIAL, 0, 0)
    nv = X.count(0)
    edges = X.by_dim[1] if X.dim >= 1 else []
    adj: list[list[int]] = [[] for _ in range(nv)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * nv
    seen[0] = True
    tree: set[tuple[int, int]] = set()
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                tree.add((min(u, w), max(u, w)))
                stack.append(w)
    gen = {e: i for i, e in enumerate(x for x in edges if x not in tree)}
    ng = len(gen)
    parent = list(range(ng))
    sign = [1] * ng  # g = parent^sign
    dead = [False] * ng
    steps: list[tuple[str, int, int]] = []

    def find(g: int) -> tuple[int, int]:
        s = 1
        path = []
        while parent[g] != g:
            path.append(g)
            s *= sign[g]
            g = parent[g]
        # path compression
        acc = s
        for h in path:
            sh = sign[h]
            parent[h] = g
            sign[h] = acc
            acc *= sh
        return g, s

    triangles = X.by_dim[2] if X.dim >= 2 else []
    relators = []
    for a, b, c in triangles:
        word = []
        for e, ex in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            if e in gen:
                word.append((gen[e], ex))
        relators.append(word)

    changed = True
    while changed:
        changed = False
        for word in relators:
            red: list[list[int]] = []
            for g, ex in word:
                r, s = find(g)
                if dead[r]:
                    continue
                e = ex * s
                if red and red[-1][0] == r:
                    red[-1][1] += e
                    if red[-1][1] == 0:
                        red.pop()
                else:
                    red.append([r, e])
            while len(red) >= 2 and red[0][0] == red[-1][0]:
                red[0][1] += red[-1][1]
                red.pop()
                if red[0][1] == 0:
                    red.pop(0)
            if len(red) == 1 and abs(red[0][1]) == 1:
                dead[red[0][0]] = True
                steps.append(("kill", red[0][0], 0))
                changed = True
            elif len(red) == 2 and abs(red[0][1]) == 1 and abs(red[1][1]) == 1:
                (r1, e1), (r2, e2) = red
                # r1^e1 r2^e2 = 1, so r1 = r2^(-e1 e2)
                parent[r1] = r2
                sign[r1] = -e1 * e2
                steps.append(("merge", r1, r2))
                changed = True
    killed = sum(1 for g in range(ng) if dead[find(g)[0]])
    verdict = PI1_TRIVIAL if killed == ng else PI1_INCONCLUSIVE
    return Pi1Result(verdict, ng, killed, steps)


def connectivity_verdict(
    X: SimplicialComplex, k: int, homology: HomologyReport | None = None
) -> tuple[str, HomologyReport | None]:
    """Certify, refute or leave open that X is k-connected.

    Every complex is (-2)-connected, so k < -1 is certified outright.
    """
    if k < -1:
        return CERTIFIED, homology
    if X.is_empty():
        return REFUTED, homology
    if k == -1:
        return CERTIFIED, homology
    if homology is None or homology.top_degree < k:
        homology = reduced_homology(X, k)
    if homology.top_degree < k:
        return INCONCLUSIVE, homology
    for i in range(0, k + 1):
        if not homology.is_zero(i):
            homology.certified_level = i - 1
            return REFUTED, homology
    if k >= 1:
        p = pi1_verdict(X, homology)
        homology.pi1 = p.verdict
        if p.verdict == PI1_NONTRIVIAL:
            homology.certified_level = 0
            return REFUTED, homology
        if p.verdict != PI1_TRIVIAL:
            homology.certified_level = 0
            return INCONCLUSIVE, homology
    homology.certified_level = k
    return CERTIFIED, homology
