"""Ordered rooted binary trees and forests.

A tree is the set of addresses of its internal nodes (carets).  Addresses
are strings over '0' (left child) and '1' (right child); the root is ''.
Leaves are the minimal addresses that are not internal, ordered
lexicographically, which is left to right.

Text format: preorder bitstring, '1' for a caret and '0' for a leaf, so a
tree with c carets has 2c+1 characters.  Forests are comma-joined trees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


@dataclass(frozen=True)
class Tree:
    nodes: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        nodes = frozenset(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        for a in nodes:
            if a and a[:-1] not in nodes:
                raise ValueError(f"address set not prefix-closed at {a!r}")

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        if not self.nodes:
            return ("",)
        out = [a + c for a in self.nodes for c in "01" if a + c not in self.nodes]
        return tuple(sorted(out))

    @property
    def n_leaves(self) -> int:
        return len(self.nodes) + 1

    @property
    def carets(self) -> int:
        return len(self.nodes)

    def is_trivial(self) -> bool:
        return not self.nodes

    def subtree(self, addr: str) -> Tree:
        k = len(addr)
        return Tree(frozenset(a[k:] for a in self.nodes if a.startswith(addr)))

    def serialize(self) -> str:
        out: list[str] = []
        stack = [""]
        while stack:
            a = stack.pop()
            if a in self.nodes:
                out.append("1")
                stack.append(a + "1")
                stack.append(a + "0")
            else:
                out.append("0")
        return "".join(out)

    @classmethod
    def parse(cls, s: str) -> Tree:
        nodes: set[str] = set()
        pos = 0

        def walk(addr: str) -> None:
            nonlocal pos
            if pos >= len(s):
                raise ValueError(f"truncated tree string {s!r}")
            ch = s[pos]
            pos += 1
            if ch == "1":
                nodes.add(addr)
                walk(addr + "0")
                walk(addr + "1")
            elif ch != "0":
                raise ValueError(f"bad character {ch!r} in tree string")

        walk("")
        if pos != len(s):
            raise ValueError(f"trailing characters in tree string {s!r}")
        return cls(frozenset(nodes))

    def __str__(self) -> str:
        return self.serialize()


CARET = Tree(frozenset({""}))
LEAF = Tree()


def left_comb(leaves: int) -> Tree:
    return Tree(frozenset("0" * k for k in range(leaves - 1)))


def right_comb(leaves: int) -> Tree:
    return Tree(frozenset("1" * k for k in range(leaves - 1)))


def balanced_tree(depth: int) -> Tree:
    nodes = {""}
    frontier = [""]
    for _ in range(depth - 1):
        frontier = [a + c for a in frontier for c in "01"]
        nodes.update(frontier)
    return Tree(frozenset(nodes if depth > 0 else ()))


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "trees", tuple(self.trees))
        if not self.trees:
            raise ValueError("a forest has at least one tree")

    @property
    def roots(self) -> int:
        return len(self.trees)

    @cached_property
    def leaf_table(self) -> tuple[tuple[int, str], ...]:
        """Leaf position (0-indexed) -> (tree index, address)."""
        return tuple((t, a) for t, tree in enumerate(self.trees) for a in tree.leaves)

    @property
    def n_leaves(self) -> int:
        return sum(t.n_leaves for t in self.trees)

    @property
    def carets(self) -> int:
        return sum(t.carets for t in self.trees)

    def tree_widths(self) -> list[int]:
        return [t.n_leaves for t in self.trees]

    def is_trivial(self) -> bool:
        return all(t.is_trivial() for t in self.trees)

    def is_elementary(self) -> bool:
        return all(t.carets <= 1 for t in self.trees)

    def caret_roots(self) -> set[int]:
        """1-indexed roots carrying a caret (meaningful for elementary forests)."""
        return {i + 1 for i, t in enumerate(self.trees) if t.carets}

    def siblings_at(self, p: int) -> bool:
        """Are leaf positions p, p+1 (0-indexed) the two leaves of one caret?"""
        table = self.leaf_table
        if p + 1 >= len(table):
            return False
        (t1, a1), (t2, a2) = table[p], table[p + 1]
        return (
            t1 == t2
            and bool(a1)
            and a1[:-1] == a2[:-1]
            and a1[-1] == "0"
            and a2[-1] == "1"
        )

    def add_caret(self, p: int) -> Forest:
        t, a = self.leaf_table[p]
        trees = list(self.trees)
        trees[t] = Tree(trees[t].nodes | {a})
        return Forest(tuple(trees))

    def remove_caret(self, p: int) -> Forest:
        """Remove the caret whose leaves are at positions p, p+1 (0-indexed)."""
        if not self.siblings_at(p):
            raise ValueError(f"no elementary caret at leaf {p + 1}")
        t, a = self.leaf_table[p]
        trees = list(self.trees)
        trees[t] = Tree(trees[t].nodes - {a[:-1]})
        return Forest(tuple(trees))

    def permute_trees(self, rho: Sequence[int]) -> Forest:
        """Tree k moves to root rho[k] (0-indexed)."""
        out: list[Tree] = [LEAF] * self.roots
        for k, t in enumerate(self.trees):
            out[rho[k]] = t
        return Forest(tuple(out))

    def serialize(self) -> str:
        return ",".join(t.serialize() for t in self.trees)

    @classmethod
    def parse(cls, s: str) -> Forest:
        return cls(tuple(Tree.parse(part.strip()) for part in s.split(",")))

    def __str__(self) -> str:
        return self.serialize()


def trivial_forest(n: int) -> Forest:
    return Forest((LEAF,) * n)


def elementary_forest(n: int, J) -> Forest:
    J = set(J)
    if any(not 1 <= j <= n for j in J):
        raise ValueError(f"J must be a subset of 1..{n}")
    return Forest(tuple(CARET if i + 1 in J else LEAF for i in range(n)))


def graft(base: Forest, at_leaves: Sequence[Tree]) -> Forest:
    if len(at_leaves) != base.n_leaves:
        raise ValueError("one tree per leaf required")
    nodes = [set(t.nodes) for t in base.trees]
    for (t, a), g in zip(base.leaf_table, at_leaves):
        nodes[t].update(a + x for x in g.nodes)
    return Forest(tuple(Tree(frozenset(s)) for s in nodes))


def expansion_list(base: Forest, target: Forest) -> list[Tree]:
    """The trees to graft on the leaves of ``base`` to obtain ``target``."""
    out = []
    for t, a in base.leaf_table:
        out.append(target.trees[t].subtree(a))
    return out


def refines(big: Forest, small: Forest) -> bool:
    return big.roots == small.roots and all(
        s.nodes <= b.nodes for b, s in zip(big.trees, small.trees)
    )


def common_expansion(A: Forest, B: Forest) -> tuple[Forest, list[Tree], list[Tree]]:
    if A.roots != B.roots:
        raise ValueError("root counts differ")
    E = Forest(tuple(Tree(a.nodes | b.nodes) for a, b in zip(A.trees, B.trees)))
    return E, expansion_list(A, E), expansion_list(B, E)


def random_tree(rng: random.Random, carets: int) -> Tree:
    nodes: set[str] = set()
    leaves = [""]
    for _ in range(carets):
        a = leaves.pop(rng.randrange(len(leaves)))
        nodes.add(a)
        leaves.extend((a + "0", a + "1"))
    return Tree(frozenset(nodes))


def random_forest(rng: random.Random, roots: int, carets: int) -> Forest:
    counts = [0] * roots
    for _ in range(carets):
        counts[rng.randrange(roots)] += 1
    return Forest(tuple(random_tree(rng, c) for c in counts))
