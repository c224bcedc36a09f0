"""Braid group arithmetic on Artin words.

A braid on ``n`` strands is a word of nonzero integers.  Letter ``e > 0`` is
the generator sigma_e, in which the strand at position ``e`` crosses in front
of the strand at position ``e + 1``; ``-e`` is its inverse.  Words are read
left to right, which is top to bottom in a braid diagram.

Positions and strands are 1-indexed in the public functions.  ``rho`` of a
braid sends the top position of a strand to its bottom position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BraidWord:
    n: int
    w: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("strand count must be positive")
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        for x in self.w:
            if x == 0 or abs(x) > self.n - 1:
                raise ValueError(f"letter {x} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.w)

    def __mul__(self, other: BraidWord) -> BraidWord:
        _same_n(self, other)
        return BraidWord(self.n, self.w + other.w)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.w)))

    def to_json(self) -> dict:
        return {"n": self.n, "w": list(self.w)}

    @classmethod
    def from_json(cls, obj: dict) -> BraidWord:
        return cls(int(obj["n"]), tuple(obj.get("w", ())))


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def _same_n(b1: BraidWord, b2: BraidWord) -> None:
    if b1.n != b2.n:
        raise ValueError(f"strand count mismatch: {b1.n} vs {b2.n}")


# ---------------------------------------------------------------- permutations

def _rho0(n: int, w: Sequence[int]) -> list[int]:
    """0-indexed permutation: strand at top position i ends at rho[i]."""
    at = list(range(n))  # at[pos] = strand currently there
    for x in w:
        k = abs(x) - 1
        at[k], at[k + 1] = at[k + 1], at[k]
    rho = [0] * n
    for pos, s in enumerate(at):
        rho[s] = pos
    return rho


def permutation_of(b: BraidWord) -> tuple[int, ...]:
    """Image table (rho(1), ..., rho(n)) of the braid's permutation."""
    return tuple(p + 1 for p in _rho0(b.n, b.w))


def is_pure(b: BraidWord) -> bool:
    return all(p == i for i, p in enumerate(_rho0(b.n, b.w)))


# ------------------------------------------------------------ handle reduction

def _free_reduce(w: Sequence[int]) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _handle_reduce(w: list[int]) -> list[int]:
    """Dehornoy handle reduction until no handle remains.

    The first handle to close (scanning left to right) is always permitted,
    since no handle can sit strictly inside it.
    """
    w = _free_reduce(w)
    while True:
        last: dict[int, int] = {}
        found = None
        for j, x in enumerate(w):
            i = abs(x)
            k = max(last.get(i, -1), last.get(i - 1, -1))
            if k >= 0 and w[k] == -x:
                found = (k, j)
                break
            last[i] = j
        if found is None:
            return w
        k, j = found
        i = abs(w[k])
        e = 1 if w[k] > 0 else -1
        mid: list[int] = []
        for x in w[k + 1:j]:
            if abs(x) == i + 1:
                d = 1 if x > 0 else -1
                mid.extend(((i + 1) * -e, i * d, (i + 1) * e))
            else:
                mid.append(x)
        w = w[:k] + mid + w[j + 1:]


def is_trivial(b: BraidWord) -> bool:
    return not _handle_reduce(list(b.w))


def equals(b1: BraidWord, b2: BraidWord) -> bool:
    _same_n(b1, b2)
    if b1.w == b2.w:
        return True
    if _rho0(b1.n, b1.w) != _rho0(b2.n, b2.w):
        return False
    return is_trivial(b1 * b2.inverse())


# ---------------------------------------------------------- Garside normal form
#
# Simple braids are positive permutation braids, stored as 0-indexed tuples
# pi with pi[i] the bottom position of the strand starting at i.

Perm = tuple[int, ...]


def _compose(a: Perm, b: Perm) -> Perm:
    """Permutation of the product a*b (a on top)."""
    return tuple(b[x] for x in a)


def _inv_perm(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _starting_set(a: Perm) -> set[int]:
    return {i for i in range(len(a) - 1) if a[i] > a[i + 1]}


def _finishing_set(a: Perm) -> set[int]:
    ai = _inv_perm(a)
    return {i for i in range(len(a) - 1) if ai[i] > ai[i + 1]}


def _swap(n: int, i: int) -> Perm:
    s = list(range(n))
    s[i], s[i + 1] = i + 1, i
    return tuple(s)


def _tau(a: Perm) -> Perm:
    n = len(a)
    return tuple(n - 1 - a[n - 1 - k] for k in range(n))


def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm, bool]:
    changed = False
    n = len(a)
    while True:
        bad = _starting_set(b) - _finishing_set(a)
        if not bad:
            return a, b, changed
        i = min(bad)
        s = _swap(n, i)
        a = _compose(a, s)
        b = _compose(s, b)
        changed = True


@dataclass(frozen=True)
class GarsideForm:
    """Delta^power times a left-weighted sequence of simple factors."""

    n: int
    power: int
    factors: tuple[Perm, ...]

    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "power": self.power,
            "factors": [[x + 1 for x in f] for f in self.factors],
        }


def garside_normal_form(b: BraidWord) -> GarsideForm:
    n = b.n
    ident = tuple(range(n))
    delta = tuple(range(n - 1, -1, -1))
    power = 0
    factors: list[Perm] = []

    def push(f: Perm) -> None:
        nonlocal power
        factors.append(f)
        j = len(factors) - 2
        while j >= 0:
            a, c, changed = _left_weight(factors[j], factors[j + 1])
            factors[j], factors[j + 1] = a, c
            if not changed:
                break
            j -= 1
        while factors and factors[-1] == ident:
            factors.pop()
        while factors and factors[0] == delta:
            factors.pop(0)
            power += 1

    for x in b.w:
        i = abs(x) - 1
        if x > 0:
            push(_swap(n, i))
        else:
            power -= 1
            factors[:] = [_tau(f) for f in factors]
            # Delta * sigma_i^{-1}: applying it then sigma_i gives Delta
            s = _swap(n, i)
            push(tuple(s[d] for d in delta))
    return GarsideForm(n, power, tuple(factors))


def _simple_word(a: Perm) -> list[int]:
    """A positive word for the permutation braid of ``a`` (bubble sort)."""
    target = list(_inv_perm(a))  # target[pos] = strand that must end at pos
    at = list(range(len(a)))
    w: list[int] = []
    # bring strands into place left to right; each adjacent swap crosses a
    # pair that ``a`` inverts, so every pair crosses at most once
    for pos in range(len(a)):
        s = target[pos]
        k = at.index(s)
        while k > pos:
            at[k - 1], at[k] = at[k], at[k - 1]
            w.append(k)  # sigma_k swaps the 0-based positions k-1 and k
            k -= 1
    return w


def normal_form_word(f: GarsideForm) -> BraidWord:
    n = f.n
    delta_word = _simple_word(tuple(range(n - 1, -1, -1)))
    w: list[int] = []
    if f.power >= 0:
        w.extend(delta_word * f.power)
    else:
        inv = [-x for x in reversed(delta_word)]
        w.extend(inv * (-f.power))
    for a in f.factors:
        w.extend(_simple_word(a))
    return BraidWord(n, tuple(w))


# ------------------------------------------------------- deletion and cabling

def delete_strands(b: BraidWord, positions: Iterable[int]) -> BraidWord:
    """Delete the strands starting at the given top positions (1-indexed)."""
    dead = {p - 1 for p in positions}
    for p in dead:
        if not 0 <= p < b.n:
            raise ValueError(f"strand {p + 1} out of range")
    if not dead:
        return b
    at = list(range(b.n))
    out: list[int] = []
    for x in b.w:
        k = abs(x) - 1
        s, t = at[k], at[k + 1]
        if s not in dead and t not in dead:
            shift = sum(1 for q in range(k) if at[q] in dead)
            out.append((k + 1 - shift) * (1 if x > 0 else -1))
        at[k], at[k + 1] = t, s
    return BraidWord(b.n - len(dead), tuple(out))


def delete_strand(b: BraidWord, k: int) -> BraidWord:
    if not 1 <= k <= b.n:
        raise ValueError(f"strand {k} out of range")
    return delete_strands(b, [k])


def _block_crossing(s: int, p: int, q: int) -> list[int]:
    """Positive word moving a p-block starting at s in front of the next q-block."""
    w: list[int] = []
    for t in range(p - 1, -1, -1):
        w.extend(range(s + t, s + t + q))
    return w


def cable(b: BraidWord, widths: Sequence[int]) -> BraidWord:
    """Replace the strand starting at top position i by widths[i-1] parallel strands."""
    if len(widths) != b.n:
        raise ValueError("one width per strand required")
    if any(w < 1 for w in widths):
        raise ValueError("widths must be positive")
    cur = list(widths)
    out: list[int] = []
    for x in b.w:
        k = abs(x) - 1
        p, q = cur[k], cur[k + 1]
        s = 1 + sum(cur[:k])
        if x > 0:
            out.extend(_block_crossing(s, p, q))
        else:
            out.extend(-y for y in reversed(_block_crossing(s, q, p)))
        cur[k], cur[k + 1] = q, p
    return BraidWord(sum(widths), tuple(out))


def clone(b: BraidWord, i: int) -> BraidWord:
    """The cloning map kappa_i: double the strand starting at position i."""
    widths = [1] * b.n
    widths[i - 1] = 2
    return cable(b, widths)


def is_clone(b: BraidWord, i: int) -> bool:
    """Is the strand starting at i+1 a clone of the strand starting at i?"""
    if not 1 <= i <= b.n - 1:
        raise ValueError(f"index {i} out of range")
    rho = _rho0(b.n, b.w)
    if rho[i] != rho[i - 1] + 1:
        return False
    return equals(clone(delete_strand(b, i + 1), i), b)


def _blocks_contiguous(b: BraidWord, widths: Sequence[int]) -> bool:
    if sum(widths) != b.n or any(w < 1 for w in widths):
        raise ValueError("widths must be positive and sum to the strand count")
    rho = _rho0(b.n, b.w)
    start = 0
    for w in widths:
        for u in range(1, w):
            if rho[start + u] != rho[start] + u:
                return False
        start += w
    return True


def decable(b: BraidWord, widths: Sequence[int]) -> BraidWord:
    """Keep only the first strand of each top block."""
    if sum(widths) != b.n or any(w < 1 for w in widths):
        raise ValueError("widths must be positive and sum to the strand count")
    dead: list[int] = []
    start = 1
    for w in widths:
        dead.extend(range(start + 1, start + w))
        start += w
    return delete_strands(b, dead)


def in_cabling_image(b: BraidWord, widths: Sequence[int]) -> bool:
    if not _blocks_contiguous(b, widths):
        return False
    return equals(cable(decable(b, widths), widths), b)


# ------------------------------------------------------------ generators

def pure_generator(n: int, i: int, j: int) -> BraidWord:
    """A_ij = (s_{j-1}...s_{i+1}) s_i^2 (s_{i+1}...s_{j-1})^-1 for i < j."""
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    down = list(range(j - 1, i, -1))
    w = down + [i, i] + [-x for x in reversed(down)]
    return BraidWord(n, tuple(w))


def pure_generators(n: int) -> list[tuple[int, int, BraidWord]]:
    return [(i, j, pure_generator(n, i, j)) for i in range(1, n) for j in range(i + 1, n + 1)]


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    if n < 2:
        return identity(n)
    w = [rng.randint(1, n - 1) * rng.choice((1, -1)) for _ in range(length)]
    return BraidWord(n, tuple(w))


def random_pure_word(rng: random.Random, n: int, length: int) -> BraidWord:
    """Product of ``length`` random standard pure generators or inverses."""
    if n < 2:
        return identity(n)
    gens = pure_generators(n)
    w: list[int] = []
    for _ in range(length):
        g = rng.choice(gens)[2]
        w.extend(g.w if rng.random() < 0.5 else g.inverse().w)
    return BraidWord(n, tuple(w))
