"""Arcs on the punctured disk in Dynnikov coordinates.

Punctures 1..n sit on a horizontal line.  An arc joining two punctures is
recorded by its endpoints and by the coordinates of the simple closed curve
bounding a regular neighbourhood of it.  For a curve, let ``up_k``/``down_k``
be its intersection numbers with the vertical rays from puncture k to the
boundary, and ``beta_k`` the intersection number with the vertical line
between punctures k and k+1.  The coordinate vector has length 2(n-2):

    a_i = (down_{i+1} - up_{i+1}) / 2,  b_i = (beta_i - beta_{i+1}) / 2

for i = 1..n-2.  Braids act by the piecewise-linear Dynnikov update rules.
To avoid special cases at the two ends the rules run on an extended vector
with a phantom fixed puncture added at each end; the extended vector has
length 2n and its outer entries are recovered from the standard ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .braid import BraidWord, _rho0, is_pure


@dataclass(frozen=True)
class Arc:
    n: int
    ends: tuple[int, int]
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        i, j = sorted(self.ends)
        if i == j or not (1 <= i and j <= self.n):
            raise ValueError(f"bad endpoints {self.ends}")
        object.__setattr__(self, "ends", (i, j))
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != 2 * max(self.n - 2, 0):
            raise ValueError("coordinate vector must have length 2(n-2)")

    def key(self) -> tuple:
        return (self.ends, self.coords)

    def to_json(self) -> dict:
        return {"n": self.n, "ends": list(self.ends), "coords": list(self.coords)}

    @classmethod
    def from_json(cls, obj: dict) -> Arc:
        return cls(int(obj["n"]), tuple(obj["ends"]), tuple(obj["coords"]))


@dataclass(frozen=True)
class ArcSystem:
    n: int
    arcs: tuple[Arc, ...]
    provenance: tuple | None = None  # (J, braid word) when built generatively

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "arcs": [a.to_json() for a in self.arcs]}
        if self.provenance is not None:
            J, b = self.provenance
            out["provenance"] = {"J": sorted(J), "braid": b.to_json()}
        return out


def coords_from_intersections(
    n: int, up: Sequence[int], down: Sequence[int], beta: Sequence[int]
) -> tuple[int, ...]:
    """Coordinates from intersection numbers.

    ``up[k]``, ``down[k]`` are the counts at puncture k and ``beta[k]`` the
    count on the gap between punctures k and k+1 (index 0 unused).
    """
    a = [(down[i + 1] - up[i + 1]) // 2 for i in range(1, n - 1)]
    b = [(beta[i] - beta[i + 1]) // 2 for i in range(1, n - 1)]
    return tuple(a + b)


def _to_ext(n: int, coords: Sequence[int]) -> tuple[list[int], list[int]]:
    m = n - 2
    a, b = list(coords[:m]), list(coords[m:])
    top = 0
    run = 0
    for k in range(m):
        top = max(top, abs(a[k]) + max(b[k], 0) + run)
        run += b[k]
    # beta_1 = 2 * top; the phantom gaps carry no intersections
    return [0] + a + [0], [-top] + b + [top - run]


def _from_ext(a: list[int], b: list[int]) -> tuple[int, ...]:
    return tuple(a[1:-1] + b[1:-1])


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def _update(a: list[int], b: list[int], letter: int) -> None:
    # list entry k-1 of the extended vectors belongs to puncture k
    i = abs(letter) - 1
    j = i + 1
    ai, bi, aj, bj = a[i], b[i], a[j], b[j]
    if letter > 0:
        c = ai - _neg(bi) - aj + _pos(bj)
        a[i] = ai + _pos(bi) + _pos(_pos(bj) - c)
        b[i] = bj - _pos(c)
        a[j] = aj + _neg(bj) + _neg(_neg(bi) + c)
        b[j] = bi + _pos(c)
    else:
        d = ai + _neg(bi) - aj - _pos(bj)
        a[i] = ai - _pos(bi) - _pos(_pos(bj) + d)
        b[i] = bj + _neg(d)
        a[j] = aj - _neg(bj) - _neg(_neg(bi) - d)
        b[j] = bi - _neg(d)


def act_coords(n: int, coords: Sequence[int], b: BraidWord) -> tuple[int, ...]:
    if b.n != n:
        raise ValueError("strand count mismatch")
    if n < 3:
        return tuple(coords)
    a, bb = _to_ext(n, coords)
    for x in b.w:
        _update(a, bb, x)
    return _from_ext(a, bb)


def base_arc(j: int, n: int) -> Arc:
    """The straight arc joining punctures j and j+1."""
    if not 1 <= j <= n - 1:
        raise ValueError(f"arc index {j} out of range")
    # the neighbourhood boundary meets each ray at j, j+1 once and the gap
    # between them twice
    up = [0] * (n + 1)
    down = [0] * (n + 1)
    up[j] = up[j + 1] = down[j] = down[j + 1] = 1
    beta = [0] * (n + 1)
    beta[j] = 2
    coords = coords_from_intersections(n, up, down, beta)
    return Arc(n, (j, j + 1), coords)


def base_matching(J: Iterable[int], n: int) -> ArcSystem:
    J = sorted(set(J))
    arcs = tuple(base_arc(j, n) for j in J)
    return ArcSystem(n, arcs, (frozenset(J), BraidWord(n, ())))


def apply_braid(a: Arc, b: BraidWord) -> Arc:
    rho = _rho0(b.n, b.w)
    i, j = a.ends
    return Arc(a.n, (rho[i - 1] + 1, rho[j - 1] + 1), act_coords(a.n, a.coords, b))


def apply_braid_system(s: ArcSystem, b: BraidWord) -> ArcSystem:
    prov = None
    if s.provenance is not None:
        J, c = s.provenance
        prov = (J, c * b)
    return ArcSystem(s.n, tuple(apply_braid(a, b) for a in s.arcs), prov)


def project_pi(x) -> ArcSystem:
    """pi([(b, Gamma)]) = (base matching of Gamma) acted on by b^-1."""
    return apply_braid_system(base_matching(x.edges, x.braid.n), x.braid.inverse())


def arc_system_equals(s1: ArcSystem, s2: ArcSystem) -> bool:
    if s1.n != s2.n:
        raise ValueError("puncture count mismatch")
    return sorted(a.key() for a in s1.arcs) == sorted(a.key() for a in s2.arcs)


def is_faithful(s: ArcSystem) -> bool:
    ends = [a.ends for a in s.arcs]
    return len(ends) == len(set(ends))


def stabilizes_base_matching(p: BraidWord, J: Iterable[int]) -> bool:
    if not is_pure(p):
        raise ValueError("pure braid required")
    return all(apply_braid(a, p) == a for a in base_matching(J, p.n).arcs)
