"""Named verification suites.

Each suite draws all randomness from one seed, counts its cases and records
every failure with a small reproducing input.  Re-running a suite with the
same seed gives the same result apart from the wall time.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import arcs, braige, coset, matching
from .braid import (
    BraidWord,
    _rho0,
    cable,
    clone,
    delete_strand,
    equals,
    garside_normal_form,
    in_cabling_image,
    is_pure,
    is_trivial,
    normal_form_word,
    permutation_of,
    random_pure_word,
    random_word,
)
from .braige import FlatBraige, dangling_flat_equals, stabilizer_membership, word_ball
from .forest import Forest, Tree, random_forest, trivial_forest
from .homology import INCONCLUSIVE, REFUTED, connectivity_verdict, reduced_homology
from .spraige import (
    DanglingSpraige,
    Spraige,
    conjugation_embedding,
    dangle,
    dangling_equals,
    elementary_leq,
    from_braid,
    identity,
    inverse,
    leq,
    lub,
    multiply,
    random_spraige,
    reduce,
    spraige_equals,
    split,
)

SUITES = (
    "braid-axioms",
    "spraige-axioms",
    "confluence",
    "order-lattice",
    "stabilizers",
    "cloning",
    "dangling",
    "arc-action",
    "pi-fibers",
    "matching-conn",
    "morse-decomp",
    "floor-lemma",
    "coset-iso",
    "generation",
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_BUDGET = 0, 1, 2, 3, 4


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SuiteResult:
    name: str
    seed: int
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    inconclusive: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    budget_exceeded: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.budget_exceeded and not self.inconclusive

    @property
    def exit_code(self) -> int:
        if self.failures:
            return EXIT_FAIL
        if self.budget_exceeded:
            return EXIT_BUDGET
        if self.inconclusive:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def signature(self) -> tuple:
        """Everything except the wall time."""
        return (
            self.name, self.seed, self.cases, repr(self.failures),
            repr(self.inconclusive), self.budget_exceeded, tuple(self.notes),
        )

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "budget_exceeded": self.budget_exceeded,
            "wall_time": round(self.wall_time, 3),
            "notes": self.notes,
            "passed": self.passed,
        }


class Ctx:
    def __init__(self, result: SuiteResult, budget: float | None, scale: float):
        self.result = result
        self.rng = random.Random(result.seed)
        self.deadline = None if budget is None else time.monotonic() + budget
        self.scale = scale

    def n(self, count: int) -> int:
        """Scaled trial count (never below one)."""
        return max(1, int(count * self.scale))

    def case(self, ok: bool, what: str, **data) -> bool:
        self.result.cases += 1
        if not ok:
            self.result.failures.append({"check": what, **_jsonable(data)})
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded
        return ok

    def note(self, text: str) -> None:
        self.result.notes.append(text)


def _jsonable(data: dict) -> dict:
    out = {}
    for k, v in data.items():
        if hasattr(v, "to_json"):
            out[k] = v.to_json()
        elif isinstance(v, (list, tuple)):
            out[k] = [x.to_json() if hasattr(x, "to_json") else x for x in v]
        elif isinstance(v, (set, frozenset)):
            out[k] = sorted(v)
        else:
            out[k] = v
    return out


# ------------------------------------------------------------------ braids

def _relation_variant(rng: random.Random, b: BraidWord) -> BraidWord:
    """Insert a trivial relator or a commutation at a random spot."""
    n = b.n
    w = list(b.w)
    pos = rng.randint(0, len(w))
    i = rng.randint(1, n - 1)
    kind = rng.randrange(3)
    if kind == 0 or n < 3:
        ins = [i, -i] if rng.random() < 0.5 else [-i, i]
    elif kind == 1 and i <= n - 2:
        # s_i s_{i+1} s_i (s_{i+1} s_i s_{i+1})^-1
        ins = [i, i + 1, i, -(i + 1), -i, -(i + 1)]
    else:
        j = rng.randint(1, n - 1)
        if abs(i - j) >= 2:
            ins = [i, j, -i, -j]
        else:
            ins = [j, -j]
    return BraidWord(n, tuple(w[:pos] + ins + w[pos:]))


def suite_braid_axioms(ctx: Ctx) -> None:
    rng = ctx.rng
    for _ in range(ctx.n(1000)):
        n = rng.randint(2, 8)
        b = random_word(rng, n, rng.randint(0, 20))
        ctx.case(is_trivial(b * b.inverse()), "w w^-1 trivial", braid=b)
        b2 = _relation_variant(rng, b)
        c = random_word(rng, n, rng.randint(0, 20))
        ctx.case(equals(b, b2), "relation insertion keeps equality", braid=b, variant=b2)
        ctx.case(equals(b, c) == equals(b2, c), "relation insertion keeps verdicts", braid=b, other=c)
        same = garside_normal_form(b) == garside_normal_form(b2)
        ctx.case(same, "equal braids share a normal form", braid=b, variant=b2)
        eq_bc = equals(b, c)
        ctx.case(eq_bc == (garside_normal_form(b) == garside_normal_form(c)),
                 "normal forms decide equality", braid=b, other=c)
        ctx.case(equals(normal_form_word(garside_normal_form(b)), b), "normal form round trip", braid=b)
        k = rng.randint(1, n)
        ctx.case(equals(delete_strand(clone(b, k), k + 1), b), "delete after clone", braid=b, k=k)
    for _ in range(ctx.n(200)):
        n = rng.randint(1, 5)
        widths = [rng.randint(1, 3) for _ in range(n)]
        b1 = random_word(rng, n, rng.randint(0, 8))
        b2 = random_word(rng, n, rng.randint(0, 8))
        rho = _rho0(n, b1.w)
        permuted = [0] * n
        for i in range(n):
            permuted[rho[i]] = widths[i]
        lhs = cable(b1 * b2, widths)
        rhs = cable(b1, widths) * cable(b2, permuted)
        ctx.case(equals(lhs, rhs), "cable functoriality", b1=b1, b2=b2, widths=widths)


# --------------------------------------------------------------- spraiges

def _composable(rng: random.Random, heads: int, **kw) -> Spraige:
    return random_spraige(rng, heads=heads, **kw)


def suite_spraige_axioms(ctx: Ctx) -> None:
    rng = ctx.rng
    kw = dict(max_leaves=7, max_len=8, expansions=2)
    for _ in range(ctx.n(200)):
        a = random_spraige(rng, **kw)
        b = _composable(rng, a.feet, **kw)
        c = _composable(rng, b.feet, **kw)
        lhs = multiply(multiply(a, b), c)
        rhs = multiply(a, multiply(b, c))
        ctx.case(spraige_equals(lhs, rhs), "associativity", a=a, b=b, c=c)
        ctx.case(spraige_equals(multiply(identity(a.heads), a), a), "left identity", a=a)
        ctx.case(spraige_equals(multiply(a, identity(a.feet)), a), "right identity", a=a)
        ctx.case(spraige_equals(multiply(a, inverse(a)), identity(a.heads)), "right inverse", a=a)
        ctx.case(spraige_equals(multiply(inverse(a), a), identity(a.feet)), "left inverse", a=a)
    suite_left_cancellation(ctx, ctx.n(200))


def suite_left_cancellation(ctx: Ctx, trials: int) -> None:
    """[s t1] = [s t2] exactly when [t1] = [t2], on equal and unequal pairs."""
    rng = ctx.rng
    kw = dict(max_leaves=6, max_len=6, expansions=2)
    positives = 0
    for k in range(trials):
        s = random_spraige(rng, **kw)
        t1 = _composable(rng, s.feet, **kw)
        if k % 2 == 0:
            c = random_word(rng, t1.feet, rng.randint(0, 5))
            t2 = dangle(t1, c)
        else:
            t2 = Spraige(t1.minus, t1.braid * random_pure_word(rng, t1.leaves, 1), t1.plus)
        same_t = dangling_equals(t1, t2)
        same_st = dangling_equals(multiply(s, t1), multiply(s, t2))
        positives += same_t
        ctx.case(same_t == same_st, "left cancellation", s=s, t1=t1, t2=t2)
    ctx.note(f"left cancellation: {positives} equal pairs")


def suite_confluence(ctx: Ctx) -> None:
    rng = ctx.rng
    for _ in range(ctx.n(1000)):
        s = random_spraige(rng, max_heads=3, max_leaves=8, max_len=12)
        r1 = reduce(s, random.Random(rng.random()))
        r2 = reduce(s, random.Random(rng.random()))
        ok = r1.minus == r2.minus and r1.plus == r2.plus and equals(r1.braid, r2.braid)
        ctx.case(ok, "reduction order independence", spraige=s)


def _forests(roots: int, carets: int) -> list[Forest]:
    """All forests with the given root count and exactly ``carets`` carets."""
    trees_by = {0: [Tree()]}

    def trees(c: int) -> list[Tree]:
        if c not in trees_by:
            out = []
            for left in range(c):
                for tl in trees(left):
                    for tr in trees(c - 1 - left):
                        nodes = {""} | {"0" + a for a in tl.nodes} | {"1" + a for a in tr.nodes}
                        out.append(Tree(frozenset(nodes)))
            trees_by[c] = out
        return trees_by[c]

    out = []
    for comp in _compositions(carets, roots):
        for combo in itertools.product(*(trees(c) for c in comp)):
            out.append(Forest(combo))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _above(x: DanglingSpraige, F: Forest) -> DanglingSpraige:
    return DanglingSpraige(multiply(x.rep, Spraige(F, BraidWord(F.n_leaves), trivial_forest(F.n_leaves))))


def _small_p1(rng: random.Random) -> DanglingSpraige:
    return DanglingSpraige(random_spraige(rng, heads=1, max_leaves=5, max_len=5, expansions=1))


def suite_order_lattice(ctx: Ctx) -> None:
    rng = ctx.rng
    # order axioms on constructed chains and random pairs
    for _ in range(ctx.n(100)):
        x = _small_p1(rng)
        F1 = random_forest(rng, x.feet, rng.randint(0, 2))
        y = DanglingSpraige(dangle(_above(x, F1).rep, random_word(rng, F1.n_leaves, 3)))
        F2 = random_forest(rng, y.feet, rng.randint(0, 2))
        z = _above(y, F2)
        ctx.case(leq(x, x), "reflexive", x=x.rep)
        ctx.case(leq(x, y) and leq(y, z), "chain members are ordered", x=x.rep, y=y.rep)
        ctx.case(leq(x, z), "transitive", x=x.rep, z=z.rep)
        if leq(y, x):
            ctx.case(dangling_equals(x, y), "antisymmetric", x=x.rep, y=y.rep)
        w = _small_p1(rng)
        if leq(x, w) and leq(w, x):
            ctx.case(dangling_equals(x, w), "antisymmetric (random)", x=x.rep, w=w.rep)
    # least upper bounds against bounded brute force
    skipped = 0
    for _ in range(ctx.n(60)):
        x, y = _small_p1(rng), _small_p1(rng)
        m = lub(x, y)
        K = m.feet - x.feet
        ctx.case(leq(x, m) and leq(y, m), "lub is an upper bound", x=x.rep, y=y.rep)
        if K > 3:
            skipped += 1
            continue
        for c in range(K + 1):
            for F in _forests(x.feet, c):
                z = _above(x, F)
                if leq(y, z):
                    ctx.case(leq(m, z), "lub below every upper bound", x=x.rep, y=y.rep, F=F.serialize())
                    ctx.case(c >= K, "no smaller upper bound", x=x.rep, y=y.rep, F=F.serialize())
    ctx.note(f"lub brute force skipped {skipped} pairs with more than 3 extra carets")
    # Boolean intervals
    for _ in range(ctx.n(30)):
        x = _small_p1(rng)
        f = x.feet
        size = rng.randint(1, min(3, f))
        J = frozenset(rng.sample(range(1, f + 1), size))
        top = DanglingSpraige(multiply(x.rep, split(f, J)))
        ctx.case(elementary_leq(x, top), "x below its elementary split", x=x.rep, J=J)
        found: list[DanglingSpraige] = []
        for c in range(size + 1):
            for F in _forests(f, c):
                z = _above(x, F)
                if leq(z, top) and not any(dangling_equals(z, u) for u in found):
                    found.append(z)
        subsets = [frozenset(S) for k in range(size + 1) for S in itertools.combinations(sorted(J), k)]
        ctx.case(len(found) == len(subsets), "interval size is 2^rank", x=x.rep, J=J, size=len(found))
        elems = {S: DanglingSpraige(multiply(x.rep, split(f, S))) for S in subsets}
        for S in subsets:
            ctx.case(any(dangling_equals(elems[S], z) for z in found), "subset element in interval", x=x.rep, S=S)
        for S, T in itertools.product(subsets, repeat=2):
            ctx.case(leq(elems[S], elems[T]) == (S <= T), "interval order is inclusion", x=x.rep, S=S, T=T)
            if S <= T:
                ctx.case(elementary_leq(elems[S], elems[T]), "interval steps are elementary", x=x.rep, S=S, T=T)


# -------------------------------------------------------------- stabilizers

def _cube_chunk(args) -> tuple[int, list[dict]]:
    sigma_json, n, words = args
    sigma = Spraige.from_json(sigma_json)
    Js = [frozenset(J) for k in range(1, n + 1) for J in itertools.combinations(range(1, n + 1), k)]
    base = {J: multiply(sigma, split(n, J)) for J in Js}
    bad = []
    cases = 0
    x = DanglingSpraige(sigma)
    for w in words:
        b = BraidWord(n, tuple(w))
        sb = multiply(sigma, from_braid(b))
        cases += 1
        if not dangling_equals(sb, x):
            bad.append({"check": "conjugate fixes x", "braid": b.to_json()})
        rho = permutation_of(b)
        for J in Js:
            cases += 1
            fixes = dangling_equals(multiply(sb, split(n, J)), base[J])
            stab = {rho[j - 1] for j in J} == set(J)
            if fixes != stab:
                bad.append({"check": "cube stabilizer criterion", "braid": b.to_json(), "J": sorted(J)})
    return cases, bad


def suite_stabilizers(ctx: Ctx, max_n: int = 5, max_len: int = 6, workers: int | None = None) -> None:
    rng = ctx.rng
    # conjugation embedding on samples
    for _ in range(ctx.n(100)):
        sigma = random_spraige(rng, heads=1, max_leaves=6, max_len=6, expansions=1)
        n = sigma.feet
        b1 = random_word(rng, n, rng.randint(0, 5))
        b2 = random_word(rng, n, rng.randint(0, 5))
        g1, g2 = conjugation_embedding(sigma, b1), conjugation_embedding(sigma, b2)
        ctx.case(g1.heads == 1 and g1.feet == 1, "conjugate is a (1,1)-spraige", sigma=sigma, b=b1)
        ctx.case(dangling_equals(multiply(g1, sigma), sigma), "conjugate fixes x", sigma=sigma, b=b1)
        g12 = conjugation_embedding(sigma, b1 * b2)
        ctx.case(spraige_equals(g12, multiply(g1, g2)), "embedding is multiplicative", sigma=sigma, b1=b1, b2=b2)
        ctx.case(spraige_equals(g1, identity(1)) == is_trivial(b1), "embedding is injective", sigma=sigma, b=b1)
    # cube criterion, exhaustive over distinct elements of the word balls
    jobs = []
    for n in range(2, max_n + 1):
        tree = _random_tree_with_leaves(rng, n)
        sigma = Spraige(Forest((tree,)), random_word(rng, n, 2), trivial_forest(n))
        ball = word_ball(n, max_len)
        words = [b.w for b in ball]
        step = 500
        for i in range(0, len(words), step):
            jobs.append((sigma.to_json(), n, words[i:i + step]))
        ctx.note(f"cube criterion: n={n}, {len(ball)} distinct braids of length <= {max_len}")
    workers = workers or os.cpu_count() or 1
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 and len(jobs) >= 4 else None
    try:
        results = pool.map(_cube_chunk, jobs) if pool else map(_cube_chunk, jobs)
        for cases, bad in results:
            ctx.result.cases += cases
            ctx.result.failures.extend(bad)
            if ctx.deadline is not None and time.monotonic() > ctx.deadline:
                raise BudgetExceeded
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)


def _random_tree_with_leaves(rng: random.Random, leaves: int) -> Tree:
    from .forest import random_tree

    return random_tree(rng, leaves - 1)


# ----------------------------------------------------------------- cloning

def find_nonhomomorphism_witness(n: int = 3, radius: int = 2):
    """Braids b1, b2 and a position i with clone(b1 b2) != clone(b1) clone(b2)."""
    ball = word_ball(n, radius)
    for b1 in ball:
        for b2 in ball:
            for i in range(1, n + 1):
                if not equals(clone(b1 * b2, i), clone(b1, i) * clone(b2, i)):
                    return b1, b2, i
    return None


def suite_cloning(ctx: Ctx) -> None:
    rng = ctx.rng
    for _ in range(ctx.n(300)):
        n = rng.randint(2, 5)
        p = random_pure_word(rng, n, rng.randint(0, 3))
        q = random_pure_word(rng, n, rng.randint(0, 3))
        I = [i for i in range(1, n + 1) if rng.random() < 0.5] or [1]
        widths = [2 if i + 1 in I else 1 for i in range(n)]
        ctx.case(equals(cable(p * q, widths), cable(p, widths) * cable(q, widths)),
                 "cloning is a homomorphism on pure braids", p=p, q=q, I=I)
    wit = find_nonhomomorphism_witness(3, 2)
    ctx.case(wit is not None, "non-homomorphism witness in B_3")
    if wit:
        ctx.note(f"non-homomorphism witness: b1={list(wit[0].w)} b2={list(wit[1].w)} i={wit[2]}")
    # stabilizer of [(id, Gamma)] equals PB_n^{(J_Gamma)}: both directions on balls
    members = 0
    for n in (2, 3, 4):
        ball = word_ball(n, 2 if n < 4 else 1, pure=True)
        gammas = [frozenset(G) for k in range(1, n) for G in itertools.combinations(range(1, n), k)]
        for p in ball:
            for G in gammas:
                a = stabilizer_membership(p, G)
                b = dangling_flat_equals(FlatBraige(BraidWord(n), G), FlatBraige(p, G), pure_only=True)
                members += a
                ctx.case(a == b, "stabilizer equals clone subgroup", p=p, graph=G)
        for _ in range(ctx.n(20)):
            G = rng.choice(gammas)
            widths = braige.block_widths(n, G)
            u = random_pure_word(rng, len(widths), rng.randint(0, 3))
            p = cable(u, widths)
            ctx.case(stabilizer_membership(p, G), "cloned pure braid stabilizes", p=p, graph=G)
            ctx.case(dangling_flat_equals(FlatBraige(BraidWord(n), G), FlatBraige(p, G), True),
                     "cloned pure braid fixes the braige", p=p, graph=G)
    ctx.note(f"stabilizer members found in balls: {members}")


# ---------------------------------------------------------------- dangling

def suite_dangling(ctx: Ctx) -> None:
    rng = ctx.rng
    for _ in range(ctx.n(150)):
        s = random_spraige(rng, max_leaves=7, max_len=6, expansions=2)
        c = random_word(rng, s.feet, rng.randint(0, 4)) if s.feet > 1 else BraidWord(1)
        d = dangle(s, c)
        ctx.case(dangling_equals(s, d), "dangling stays in the class", s=s, c=c)
        ctx.case(dangling_equals(s, d, pure_only=True) == is_pure(c), "pure dangling needs pure c", s=s, c=c)
    # Gamma^c through rho_c against pulling merges through the blocks
    for _ in range(ctx.n(200)):
        n = rng.randint(2, 7)
        G = frozenset(e for e in range(1, n) if rng.random() < 0.4)
        widths = braige.block_widths(n, G)
        u = random_word(rng, len(widths), rng.randint(0, 6))
        c = cable(u, widths)
        rho_u = _rho0(len(widths), u.w)
        starts_after = [0] * len(widths)
        order = sorted(range(len(widths)), key=lambda k: rho_u[k])
        pos = 1
        for k in order:
            starts_after[k] = pos
            pos += widths[k]
        pulled = frozenset(starts_after[k] + t for k in range(len(widths)) for t in range(widths[k] - 1))
        ctx.case(braige.transport_edges(G, c) == pulled, "Gamma^c via rho matches block transport",
                 graph=G, u=u, widths=widths)
        ctx.case(in_cabling_image(c, widths), "cabled braid is a clone braid", u=u, widths=widths)
    # EPB: two pure classes are equal under full dangling only if equal under pure dangling
    for n, L in ((3, 2), (4, 1)):
        X = braige.build_truncation(n, L, "EPB")
        for i, j in itertools.combinations(range(len(X.vertices)), 2):
            full = dangling_flat_equals(X.vertices[i], X.vertices[j])
            ctx.case(not full, "distinct pure classes stay distinct", x=X.vertices[i], y=X.vertices[j])
        for v in X.vertices:
            ctx.case(is_pure(v.braid), "pure representatives", v=v)
    # transitivity of the left action on simplices of each dimension
    for n in range(3, 7):
        gs = [frozenset(G) for k in range(1, n) for G in itertools.combinations(range(1, n), k)
              if all(e + 1 not in G for e in G)]
        for G1, G2 in itertools.combinations(gs, 2):
            if len(G1) != len(G2):
                continue
            g = block_shuffle(n, G1, G2)
            ok = dangling_flat_equals(FlatBraige(g, G1), FlatBraige(BraidWord(n), G2))
            ctx.case(ok, "left action is transitive on simplices", n=n, G1=G1, G2=G2, g=g)


def block_shuffle(n: int, G1: frozenset[int], G2: frozenset[int]) -> BraidWord:
    """A braid g with [(g, G1)] = [(id, G2)] for elementary graphs of equal size.

    The blocks of G1 are reordered by a bubble-sort word on block strands so
    that the widths line up with G2; g is the inverse of its cabling.
    """
    w1, w2 = braige.block_widths(n, G1), braige.block_widths(n, G2)
    if sorted(w1) != sorted(w2):
        raise ValueError("graphs have different block types")
    # target[k]: final position of block k (stable assignment by width)
    free = {w: [p for p, x in enumerate(w2) if x == w] for w in set(w2)}
    target = [free[w].pop(0) for w in w1]
    order = list(range(len(w1)))  # order[p] = block at position p
    word: list[int] = []
    changed = True
    while changed:
        changed = False
        for p in range(len(order) - 1):
            if target[order[p]] > target[order[p + 1]]:
                order[p], order[p + 1] = order[p + 1], order[p]
                word.append(p + 1)
                changed = True
    c = cable(BraidWord(len(w1), tuple(word)), w1)
    return c.inverse()


# --------------------------------------------------------------------- arcs

def _random_arc(rng: random.Random, n: int) -> arcs.Arc:
    a = arcs.base_arc(rng.randint(1, n - 1), n)
    return arcs.apply_braid(a, random_word(rng, n, rng.randint(0, 6)))


def _exponent_sum(b: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in b.w)


def suite_arc_action(ctx: Ctx) -> None:
    rng = ctx.rng
    agree = 0
    for _ in range(ctx.n(500)):
        n = rng.randint(3, 7)
        a = _random_arc(rng, n)
        b = random_word(rng, n, rng.randint(0, 12))
        i = rng.randint(1, n - 2)
        lhs = BraidWord(n, b.w + (i, i + 1, i))
        rhs = BraidWord(n, b.w + (i + 1, i, i + 1))
        ctx.case(arcs.apply_braid(a, lhs) == arcs.apply_braid(a, rhs), "braid relation", arc=a, b=b, i=i)
        far = [j for j in range(1, n) if abs(i - j) >= 2]
        if far:
            j = rng.choice(far)
            ctx.case(arcs.apply_braid(a, BraidWord(n, (i, j))) == arcs.apply_braid(a, BraidWord(n, (j, i))),
                     "far commutation", arc=a, i=i, j=j)
        ctx.case(arcs.apply_braid(arcs.apply_braid(a, b), b.inverse()) == a, "inverse action", arc=a, b=b)
        ctx.case(arcs.apply_braid(a, BraidWord(n)) == a, "identity action", arc=a)
        # cross-validation with the word problem
        b2 = b
        for _ in range(rng.randint(0, 3)):
            b2 = _relation_variant(rng, b2)
        if rng.random() < 0.5:
            b2 = BraidWord(n, b2.w + (rng.choice((1, -1)) * rng.randint(1, n - 1),) * 2)
        same_group = equals(b, b2)
        same_action = all(
            arcs.apply_braid(arcs.base_arc(j, n), b) == arcs.apply_braid(arcs.base_arc(j, n), b2)
            for j in range(1, n)
        ) and _exponent_sum(b) == _exponent_sum(b2)
        agree += same_group
        ctx.case(same_group == same_action, "arc action agrees with the word problem", b=b, b2=b2)
    ctx.note(f"word-problem cross-validation: {agree} equal pairs")


def suite_pi_fibers(ctx: Ctx, max_n: int = 5, max_L: int = 2) -> None:
    rng = ctx.rng
    for _ in range(ctx.n(200)):
        n = rng.randint(2, 6)
        G = frozenset(e for e in range(1, n) if rng.random() < 0.5) or frozenset({1})
        b = random_word(rng, n, rng.randint(0, 6))
        x = FlatBraige(b, G)
        c = braige.random_clone_braid(rng, n, G, rng.randint(0, 4))
        y = FlatBraige(b * c, braige.transport_edges(G, c))
        px, py = arcs.project_pi(x), arcs.project_pi(y)
        ctx.case(arcs.arc_system_equals(px, py), "pi is constant on dangling classes", x=x, c=c)
        ctx.case(len(px.arcs) == len(G) and len({a.key() for a in px.arcs}) == len(G),
                 "pi preserves dimension", x=x)
        if x.is_elementary():
            ctx.case(arcs.is_faithful(px), "elementary braiges give disjoint arcs", x=x)
        widths = braige.block_widths(n, G)
        p = cable(random_pure_word(rng, len(widths), rng.randint(0, 3)), widths)
        ctx.case(arcs.arc_system_equals(arcs.project_pi(FlatBraige(p, G)), arcs.base_matching(G, n)),
                 "clone pure braids fix the base matching", p=p, graph=G)
    for n in range(3, max_n + 1):
        for L in range(0, max_L + 1):
            for variant in ("EB", "EPB"):
                rep = braige.fiber_join_check(n, L, variant, random.Random(rng.random()))
                for f in rep.failures:
                    ctx.result.failures.append({"check": "fiber join", "n": n, "L": L, "variant": variant, "detail": f})
                ctx.result.cases += rep.selections
                ctx.note(f"fibers n={n} L={L} {variant}: {rep.selections} selections")
                if ctx.deadline is not None and time.monotonic() > ctx.deadline:
                    raise BudgetExceeded


# ---------------------------------------------------------------- matching

def suite_matching_conn(ctx: Ctx, max_n: int = 11, max_m: int = 11) -> None:
    for n in range(2, max_n + 1):
        k = matching.nu(n) - 1
        X = matching.matching_complex(matching.complete_graph(n), max_dim=max(k + 1, 0))
        verdict, rep = connectivity_verdict(X, k)
        if verdict == INCONCLUSIVE:
            ctx.result.inconclusive.append({"check": "M(K_n)", "n": n, "k": k})
        ctx.case(verdict != REFUTED, "M(K_n) is (nu(n)-1)-connected", n=n, k=k, verdict=verdict)
    for m in range(1, max_m + 1):
        k = matching.nu(m) - 1
        X = matching.matching_complex(matching.linear_graph_by_edges(m), max_dim=max(k + 1, 0))
        verdict, _ = connectivity_verdict(X, k)
        if verdict == INCONCLUSIVE:
            ctx.result.inconclusive.append({"check": "M(L)", "edges": m, "k": k})
        ctx.case(verdict != REFUTED, "M(L) with m edges is (nu(m)-1)-connected", edges=m, k=k, verdict=verdict)
    X = matching.matching_complex(matching.complete_graph(4))
    verdict, rep = connectivity_verdict(X, 0)
    ctx.case(verdict == REFUTED and rep.group(0) == (2, []), "M(K_4) is disconnected")
    rep = reduced_homology(matching.matching_complex(matching.complete_graph(7), max_dim=2), 1)
    ctx.case(rep.group(1) == (0, [3]), "H_1(M(K_7)) = Z/3", got=rep.describe(1))


def suite_morse_decomp(ctx: Ctx) -> None:
    rng = ctx.rng
    for G in matching.positive_defect_subgraphs(5):
        r = matching.morse_decomposition_check(5, G)
        ctx.case(r.ok, "Morse decomposition in K_5", graph=[list(e) for e in G], problems=r.problems)
    for n in (6, 7):
        for _ in range(ctx.n(200)):
            G = matching.random_positive_defect_subgraph(rng, n)
            r = matching.morse_decomposition_check(n, G)
            ctx.case(r.ok, f"Morse decomposition in K_{n}", graph=[list(e) for e in G], problems=r.problems)


def suite_floor_lemma(ctx: Ctx) -> None:
    for ell in range(1, 5):
        for ms in itertools.product(range(-10, 11), repeat=ell):
            ctx.case(matching.floor_lemma_check(ms), "floor lemma", ms=list(ms))


# ------------------------------------------------------------------- cosets

def suite_coset_iso(ctx: Ctx, max_n: int = 4, max_L: int = 2) -> None:
    rng = ctx.rng
    for n in range(2, max_n + 1):
        for L in range(0, max_L + 1):
            r = coset.nerve_braige_isomorphism(n, L)
            ctx.case(r.ok, "coset complex matches PB_n(L_n)", report=r.to_json())
    # a complex with two orbits of simplices has no single fundamental simplex
    neg = coset.fundamental_domain_check([[0], [1]], [0], [None], lambda g, v: v)
    ctx.case(not neg.ok, "two-orbit negative control")
    # coset equality is an equivalence relation on a ball
    for n in (3, 4):
        ball = word_ball(n, 1, pure=True)
        for H in coset.family(n, coset.BF, 1) + coset.family(n, coset.AF, 1):
            sample = [rng.choice(ball) for _ in range(6)]
            for g in sample:
                ctx.case(coset.coset_equals(g, g, H), "coset reflexive", g=g, H=H.name)
            for g1, g2, g3 in itertools.product(sample, repeat=3):
                e12, e23, e13 = (coset.coset_equals(g1, g2, H), coset.coset_equals(g2, g3, H),
                                 coset.coset_equals(g1, g3, H))
                ctx.case(e12 == coset.coset_equals(g2, g1, H), "coset symmetric", g1=g1, g2=g2, H=H.name)
                ctx.case(not (e12 and e23) or e13, "coset transitive", g1=g1, g2=g2, g3=g3, H=H.name)
    # extremes of the families
    for n in (2, 3, 4):
        bad = coset.extreme_family_check(n, 2 if n < 4 else 1)
        ctx.case(not bad, "top clone family is trivial", n=n, bad=bad)
    (H,) = coset.family(2, coset.AF, 1)
    for p in word_ball(2, 4, pure=True):
        ctx.case(H.contains(p), "AF_2^1 is all of PB_2", p=p)


def suite_generation(ctx: Ctx) -> None:
    r = coset.generation_check(6, coset.BF, 1)
    ctx.case(r.all_covered, "BF_6^1 covers all generators", uncovered=r.uncovered)
    r = coset.generation_check(6, coset.AF, 1)
    ctx.case(r.all_covered, "AF_6^1 covers all generators", uncovered=r.uncovered)
    r = coset.generation_check(5, coset.BF, 1)
    ctx.case(not r.all_covered, "BF_5^1 misses a generator")
    ctx.note(f"BF_5^1 misses {r.uncovered}")


_RUNNERS: dict[str, Callable[[Ctx], None]] = {
    "braid-axioms": suite_braid_axioms,
    "spraige-axioms": suite_spraige_axioms,
    "confluence": suite_confluence,
    "order-lattice": suite_order_lattice,
    "stabilizers": suite_stabilizers,
    "cloning": suite_cloning,
    "dangling": suite_dangling,
    "arc-action": suite_arc_action,
    "pi-fibers": suite_pi_fibers,
    "matching-conn": suite_matching_conn,
    "morse-decomp": suite_morse_decomp,
    "floor-lemma": suite_floor_lemma,
    "coset-iso": suite_coset_iso,
    "generation": suite_generation,
}


def run_suite(name: str, seed: int = 0, budget: float | None = None, scale: float = 1.0) -> SuiteResult:
    """Run a named suite.  ``scale`` multiplies randomized trial counts."""
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    result = SuiteResult(name, seed)
    ctx = Ctx(result, budget, scale)
    t0 = time.monotonic()
    try:
        _RUNNERS[name](ctx)
    except BudgetExceeded:
        result.budget_exceeded = True
    result.wall_time = time.monotonic() - t0
    return result
