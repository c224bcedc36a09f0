"""Spraiges: split-braid-merge diagrams (F_-, b, F_+).

Strand i of ``b`` starts at leaf i of the minus forest and ends at leaf
position rho_b(i) of the plus forest.  Heads are the roots of the minus
forest and feet the roots of the plus forest.  Multiplication composes the
plus side of the first diagram with the minus side of the second.

Dangling classes [s] are orbits of the right action of the braid group on
the feet; they are stored as reduced representatives and compared with
``dangling_equals``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .braid import (
    BraidWord,
    _rho0,
    cable,
    clone,
    decable,
    delete_strand,
    equals,
    garside_normal_form,
    in_cabling_image,
    is_clone,
    is_pure,
    random_word,
)
from .forest import (
    Forest,
    common_expansion,
    elementary_forest,
    graft,
    random_forest,
    trivial_forest,
)


@dataclass(frozen=True)
class Spraige:
    minus: Forest
    braid: BraidWord
    plus: Forest

    def __post_init__(self) -> None:
        if not (self.minus.n_leaves == self.braid.n == self.plus.n_leaves):
            raise ValueError(
                f"leaf counts {self.minus.n_leaves}, {self.braid.n}, "
                f"{self.plus.n_leaves} disagree"
            )

    @property
    def heads(self) -> int:
        return self.minus.roots

    @property
    def feet(self) -> int:
        return self.plus.roots

    @property
    def leaves(self) -> int:
        return self.braid.n

    def to_json(self) -> dict:
        return {
            "minus": self.minus.serialize(),
            "braid": self.braid.to_json(),
            "plus": self.plus.serialize(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Spraige:
        return cls(
            Forest.parse(obj["minus"]),
            BraidWord.from_json(obj["braid"]),
            Forest.parse(obj["plus"]),
        )


def identity(n: int) -> Spraige:
    f = trivial_forest(n)
    return Spraige(f, BraidWord(n), f)


def from_braid(b: BraidWord) -> Spraige:
    f = trivial_forest(b.n)
    return Spraige(f, b, f)


def split(n: int, J) -> Spraige:
    """lambda^{(n)}_J: split the heads indexed by J."""
    F = elementary_forest(n, J)
    return Spraige(F, BraidWord(F.n_leaves), trivial_forest(F.n_leaves))


def merge(n: int, J) -> Spraige:
    """mu^{(n)}_J, the inverse of ``split(n, J)``."""
    return inverse(split(n, J))


def feet(x) -> int:
    """f: the number of feet of a spraige or dangling class."""
    if isinstance(x, DanglingSpraige):
        x = x.rep
    return x.feet


def expand_at(s: Spraige, i: int) -> Spraige:
    """Add a caret at leaf i of the minus side (1-indexed) and double strand i."""
    if not 1 <= i <= s.leaves:
        raise ValueError(f"leaf {i} out of range")
    rho = _rho0(s.braid.n, s.braid.w)
    return Spraige(s.minus.add_caret(i - 1), clone(s.braid, i), s.plus.add_caret(rho[i - 1]))


def _reducible_at(s: Spraige, rho: Sequence[int], i: int) -> bool:
    return (
        s.minus.siblings_at(i)
        and rho[i + 1] == rho[i] + 1
        and s.plus.siblings_at(rho[i])
        and is_clone(s.braid, i + 1)
    )


def reduction_sites(s: Spraige) -> list[int]:
    """0-indexed leaves i at which a reduction applies."""
    rho = _rho0(s.braid.n, s.braid.w)
    return [i for i in range(s.leaves - 1) if _reducible_at(s, rho, i)]


def reduce_at(s: Spraige, i: int) -> Spraige:
    rho = _rho0(s.braid.n, s.braid.w)
    if not _reducible_at(s, rho, i):
        raise ValueError(f"no reduction at leaf {i + 1}")
    return Spraige(
        s.minus.remove_caret(i), delete_strand(s.braid, i + 2), s.plus.remove_caret(rho[i])
    )


def reduce(s: Spraige, rng: random.Random | None = None) -> Spraige:
    """The reduced representative; ``rng`` randomizes the order of reductions."""
    while True:
        rho = _rho0(s.braid.n, s.braid.w)
        order = list(range(s.leaves - 1))
        if rng is not None:
            rng.shuffle(order)
        for i in order:
            if _reducible_at(s, rho, i):
                s = Spraige(
                    s.minus.remove_caret(i),
                    delete_strand(s.braid, i + 2),
                    s.plus.remove_caret(rho[i]),
                )
                break
        else:
            return s


def is_reduced(s: Spraige) -> bool:
    return not reduction_sites(s)


def multiply_unreduced(s1: Spraige, s2: Spraige) -> Spraige:
    if s1.feet != s2.heads:
        raise ValueError(f"feet {s1.feet} do not match heads {s2.heads}")
    E, A, B = common_expansion(s1.plus, s2.minus)
    rho1 = _rho0(s1.braid.n, s1.braid.w)
    rho2 = _rho0(s2.braid.n, s2.braid.w)
    over1 = [A[rho1[i]] for i in range(s1.leaves)]
    b1 = cable(s1.braid, [t.n_leaves for t in over1])
    b2 = cable(s2.braid, [t.n_leaves for t in B])
    inv2 = [0] * s2.leaves
    for j, p in enumerate(rho2):
        inv2[p] = j
    plus = graft(s2.plus, [B[inv2[p]] for p in range(s2.leaves)])
    return Spraige(graft(s1.minus, over1), b1 * b2, plus)


def multiply(s1: Spraige, s2: Spraige) -> Spraige:
    return reduce(multiply_unreduced(s1, s2))


def inverse(s: Spraige) -> Spraige:
    return Spraige(s.plus, s.braid.inverse(), s.minus)


def spraige_equals(s1: Spraige, s2: Spraige) -> bool:
    """Equality in the groupoid: same reduced forests and equal braids."""
    r1, r2 = reduce(s1), reduce(s2)
    return r1.minus == r2.minus and r1.plus == r2.plus and equals(r1.braid, r2.braid)


# ------------------------------------------------------------------ dangling

@dataclass(frozen=True)
class DanglingSpraige:
    rep: Spraige

    def __post_init__(self) -> None:
        object.__setattr__(self, "rep", reduce(self.rep))

    @property
    def heads(self) -> int:
        return self.rep.heads

    @property
    def feet(self) -> int:
        return self.rep.feet

    def garside_key(self):
        return garside_normal_form(self.rep.braid)


def dangle(s: Spraige, c: BraidWord) -> Spraige:
    """s * c for c in B_m acting on the m feet."""
    if c.n != s.feet:
        raise ValueError("dangling braid must act on the feet")
    rho = _rho0(c.n, c.w)
    b = s.braid * cable(c, s.plus.tree_widths())
    return Spraige(s.minus, b, s.plus.permute_trees(rho))


def dangling_equals(x, y, pure_only: bool = False) -> bool:
    x = x.rep if isinstance(x, DanglingSpraige) else reduce(x)
    y = y.rep if isinstance(y, DanglingSpraige) else reduce(y)
    if x.heads != y.heads or x.feet != y.feet or x.minus != y.minus:
        return False
    g = x.braid.inverse() * y.braid
    widths = x.plus.tree_widths()
    if not in_cabling_image(g, widths):
        return False
    c = decable(g, widths)
    if pure_only and not is_pure(c):
        return False
    return x.plus.permute_trees(_rho0(c.n, c.w)) == y.plus


def _quotient(x, y) -> Spraige:
    x = x.rep if isinstance(x, DanglingSpraige) else x
    y = y.rep if isinstance(y, DanglingSpraige) else y
    if x.heads != y.heads:
        raise ValueError("head counts differ")
    return multiply(inverse(x), y)


def leq(x, y) -> bool:
    return _quotient(x, y).plus.is_trivial()


def elementary_leq(x, y) -> bool:
    q = _quotient(x, y)
    return q.plus.is_trivial() and q.minus.is_elementary()


def lub(x, y) -> DanglingSpraige:
    xr = x.rep if isinstance(x, DanglingSpraige) else x
    H = _quotient(x, y).minus
    return DanglingSpraige(multiply(xr, Spraige(H, BraidWord(H.n_leaves), trivial_forest(H.n_leaves))))


def conjugation_embedding(sigma: Spraige, b: BraidWord) -> Spraige:
    """sigma * b * sigma^-1 for a braid b on the feet of sigma."""
    return multiply(multiply(sigma, from_braid(b)), inverse(sigma))


def random_spraige(
    rng: random.Random,
    max_heads: int = 3,
    max_leaves: int = 8,
    max_len: int = 12,
    expansions: int = 3,
    heads: int | None = None,
) -> Spraige:
    """A random diagram, expanded a few times so that reductions are available."""
    if heads is None:
        heads = rng.randint(1, max_heads)
    leaves0 = rng.randint(heads, max(heads, max_leaves - expansions))
    feet = rng.randint(1, leaves0)
    minus = random_forest(rng, heads, leaves0 - heads)
    plus = random_forest(rng, feet, leaves0 - feet)
    s = Spraige(minus, random_word(rng, leaves0, rng.randint(0, max_len)), plus)
    for _ in range(expansions):
        if s.leaves >= max_leaves:
            break
        s = expand_at(s, rng.randint(1, s.leaves))
    return s
