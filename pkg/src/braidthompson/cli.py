"""Command-line interface: ``braidthompson <object> <verb> [operands] [flags]``.

Operands are JSON values (braids, spraiges, braiges, arcs) or forest
strings.  They can be passed as positional arguments or, when omitted, read
from standard input as a stream of whitespace-separated JSON values.
Results go to standard output as JSON; diagnostics go to standard error.

Exit codes: 0 success, 1 property violated or refuted, 2 usage or input
error, 3 inconclusive, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from . import arcs, braige, coset, matching
from .braid import (
    BraidWord,
    cable,
    delete_strand,
    equals,
    garside_normal_form,
    is_clone,
    is_trivial,
    normal_form_word,
    permutation_of,
)
from .braige import FlatBraige
from .forest import Forest, Tree, common_expansion, elementary_forest, graft
from .homology import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    ResourceCapExceeded,
    connectivity_verdict,
    pi1_verdict,
    reduced_homology,
)
from .spraige import (
    DanglingSpraige,
    Spraige,
    dangling_equals,
    inverse,
    leq,
    lub,
    multiply,
    reduce,
    spraige_equals,
)
from .suites import EXIT_BUDGET, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, SUITES, run_suite


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- plumbing

def _stdin_values() -> list[Any]:
    text = sys.stdin.read()
    dec = json.JSONDecoder()
    out, i = [], 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            return out
        try:
            val, i = dec.raw_decode(text, i)
        except json.JSONDecodeError:
            # a bare token such as a forest string
            j = i
            while j < len(text) and not text[j].isspace():
                j += 1
            val, i = text[i:j], j
        out.append(val)


def _operands(args: argparse.Namespace, count: int) -> list[Any]:
    raw = list(args.operands)
    if not raw:
        vals = _stdin_values()
    else:
        vals = []
        for r in raw:
            try:
                vals.append(json.loads(r))
            except json.JSONDecodeError:
                vals.append(r)
    if len(vals) != count:
        raise UsageError(f"expected {count} operand(s), got {len(vals)}")
    return vals


def _braid(obj: Any) -> BraidWord:
    if not isinstance(obj, dict) or "n" not in obj:
        raise UsageError('a braid is a JSON object {"n": int, "w": [int, ...]}')
    return BraidWord.from_json(obj)


def _spraige(obj: Any) -> Spraige:
    if not isinstance(obj, dict) or not {"minus", "braid", "plus"} <= obj.keys():
        raise UsageError('a spraige is {"minus": forest, "braid": braid, "plus": forest}')
    return Spraige.from_json(obj)


def _flat(obj: Any) -> FlatBraige:
    if not isinstance(obj, dict) or "braid" not in obj:
        raise UsageError('a flat braige is {"braid": braid, "edges": [int, ...]}')
    return FlatBraige.from_json(obj)


def _arc_system(obj: Any) -> arcs.ArcSystem:
    if isinstance(obj, dict) and "arcs" in obj:
        return arcs.ArcSystem(int(obj["n"]), tuple(arcs.Arc.from_json(a) for a in obj["arcs"]))
    if isinstance(obj, dict) and "ends" in obj:
        a = arcs.Arc.from_json(obj)
        return arcs.ArcSystem(a.n, (a,))
    raise UsageError('an arc is {"n", "ends", "coords"}; an arc system is {"n", "arcs": [...]}')


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _emit(args: argparse.Namespace, obj: Any) -> None:
    indent = 2 if args.json else None
    json.dump(obj, sys.stdout, indent=indent, sort_keys=False)
    sys.stdout.write("\n")


def _write_dot(path: str | None, dot: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dot)


# ---------------------------------------------------------------- handlers

def cmd_braid(args: argparse.Namespace) -> int:
    verb = args.verb
    if verb == "eq":
        b1, b2 = map(_braid, _operands(args, 2))
        _emit(args, {"equal": equals(b1, b2)})
    elif verb == "trivial":
        (b,) = map(_braid, _operands(args, 1))
        _emit(args, {"trivial": is_trivial(b)})
    elif verb == "nf":
        (b,) = map(_braid, _operands(args, 1))
        f = garside_normal_form(b)
        _emit(args, {"normal_form": f.to_json(), "word": normal_form_word(f).to_json()})
    elif verb == "perm":
        (b,) = map(_braid, _operands(args, 1))
        _emit(args, {"permutation": list(permutation_of(b))})
    elif verb == "delete":
        (b,) = map(_braid, _operands(args, 1))
        _emit(args, delete_strand(b, _need(args.strand, "--strand")).to_json())
    elif verb == "cable":
        (b,) = map(_braid, _operands(args, 1))
        _emit(args, cable(b, _ints(_need(args.widths, "--widths"))).to_json())
    elif verb == "clone-test":
        (b,) = map(_braid, _operands(args, 1))
        _emit(args, {"is_clone": is_clone(b, _need(args.strand, "--strand"))})
    return EXIT_OK


def cmd_forest(args: argparse.Namespace) -> int:
    if args.verb == "join":
        a, b = (Forest.parse(str(x)) for x in _operands(args, 2))
        E, ga, gb = common_expansion(a, b)
        _emit(args, {
            "expansion": E.serialize(),
            "left_grafts": [t.serialize() for t in ga],
            "right_grafts": [t.serialize() for t in gb],
        })
    elif args.verb == "graft":
        base, trees = (str(x) for x in _operands(args, 2))
        at = [Tree.parse(t) for t in trees.split(",")]
        _emit(args, {"forest": graft(Forest.parse(base), at).serialize()})
    elif args.verb == "elem":
        roots = _need(args.roots, "--roots")
        _emit(args, {"forest": elementary_forest(roots, set(_ints(args.set))).serialize()})
    return EXIT_OK


def cmd_spraige(args: argparse.Namespace) -> int:
    verb = args.verb
    if verb == "reduce":
        (s,) = map(_spraige, _operands(args, 1))
        _emit(args, reduce(s, random.Random(args.seed)).to_json())
    elif verb == "mul":
        s, t = map(_spraige, _operands(args, 2))
        _emit(args, multiply(s, t).to_json())
    elif verb == "inv":
        (s,) = map(_spraige, _operands(args, 1))
        _emit(args, inverse(s).to_json())
    elif verb == "eq":
        s, t = map(_spraige, _operands(args, 2))
        _emit(args, {"equal": spraige_equals(s, t)})
    elif verb == "dangling-eq":
        s, t = map(_spraige, _operands(args, 2))
        _emit(args, {"equal": dangling_equals(s, t, pure_only=args.pure)})
    elif verb == "leq":
        s, t = map(_spraige, _operands(args, 2))
        _emit(args, {"leq": leq(DanglingSpraige(s), DanglingSpraige(t))})
    elif verb == "lub":
        s, t = map(_spraige, _operands(args, 2))
        _emit(args, lub(DanglingSpraige(s), DanglingSpraige(t)).rep.to_json())
    return EXIT_OK


def _graph_from_args(args: argparse.Namespace) -> matching.Graph:
    n = _need(args.nodes, "--nodes")
    fam = args.family
    if fam == "complete":
        return matching.complete_graph(n)
    if fam == "linear":
        return matching.linear_graph(n)
    if fam == "cyclic":
        return matching.cyclic_graph(n)
    if not args.edges_file:
        raise UsageError("--family custom needs --edges-file")
    with open(args.edges_file, encoding="utf-8") as fh:
        edges = json.load(fh)
    return matching.Graph(n, tuple((int(a), int(b)) for a, b in edges), "custom")


def cmd_complex(args: argparse.Namespace) -> int:
    g = _graph_from_args(args)
    k = args.certify
    max_dim = args.max_dim
    if max_dim is None and k is not None:
        max_dim = max(k + 1, 0)
    X = matching.matching_complex(g, max_dim=max_dim)
    out: dict[str, Any] = {"graph": g.name, "nodes": g.nodes, "edges": g.edge_count, "f_vector": X.f_vector()}
    code = EXIT_OK
    report = None
    if args.homology or args.pi1:
        report = reduced_homology(X)
        out["homology"] = report.to_json()
    if args.pi1:
        if X.count(0) and report.is_zero(0):
            out["pi1"] = pi1_verdict(X, report).verdict
        else:
            out["pi1"] = "not applicable (disconnected or empty)"
    if k is not None:
        verdict, rep = connectivity_verdict(X, k, report)
        out["certify"] = {"k": k, "verdict": verdict}
        if rep is not None:
            out["certify"]["homology"] = rep.to_json()
        code = {CERTIFIED: EXIT_OK, REFUTED: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict]
    _write_dot(args.dot, X.to_dot())
    _emit(args, out)
    return code


def cmd_braige(args: argparse.Namespace) -> int:
    verb = args.verb
    if verb == "eq":
        x, y = map(_flat, _operands(args, 2))
        _emit(args, {"equal": braige.dangling_flat_equals(x, y, pure_only=args.pure)})
    elif verb == "stab":
        (p,) = map(_braid, _operands(args, 1))
        _emit(args, {"stabilizes": braige.stabilizer_membership(p, frozenset(_ints(args.edges)))})
    elif verb == "truncate":
        n = _need(args.nodes, "--nodes")
        graph = frozenset(_ints(args.edges)) if args.edges else None
        X = braige.build_truncation(n, _need(args.maxlen, "--maxlen"), args.variant, graph=graph)
        _write_dot(args.dot, X.to_dot())
        _emit(args, X.to_json())
    elif verb == "dlk":
        (s,) = map(_spraige, _operands(args, 1))
        model = braige.descending_link_model(DanglingSpraige(s), _need(args.maxlen, "--maxlen"))
        _emit(args, model.to_json())
        return EXIT_OK if model.bijective and model.order_reversing else EXIT_FAIL
    elif verb == "fiber-witness":
        v, s, frame = map(_flat, _operands(args, 3))
        w = braige.fiber_join_witness(v, s, frame, radius=args.radius, pure=args.pure)
        _emit(args, {"simplex": w.simplex.to_json(), "dangling": w.dangling.to_json(), "searched": w.searched})
    return EXIT_OK


def cmd_arc(args: argparse.Namespace) -> int:
    verb = args.verb
    if verb == "act":
        a, b = _operands(args, 2)
        system, braid = _arc_system(a), _braid(b)
        img = arcs.apply_braid_system(system, braid)
        _emit(args, img.arcs[0].to_json() if "ends" in a else img.to_json())
    elif verb == "pi":
        (x,) = map(_flat, _operands(args, 1))
        _emit(args, arcs.project_pi(x).to_json())
    elif verb == "eq":
        s1, s2 = map(_arc_system, _operands(args, 2))
        _emit(args, {"equal": arcs.arc_system_equals(s1, s2)})
    elif verb == "stab":
        (p,) = map(_braid, _operands(args, 1))
        _emit(args, {"stabilizes": arcs.stabilizes_base_matching(p, _ints(_need(args.set, "--set")))})
    return EXIT_OK


def cmd_coset(args: argparse.Namespace) -> int:
    n = _need(args.nodes, "--n")
    if args.verb == "nerve":
        fam = coset.family(n, args.family, args.s)
        N = coset.build_nerve_truncation(n, _need(args.maxlen, "--maxlen"), fam)
        out = N.to_json()
        out["count_by_dim"] = N.count_by_dim()
        _emit(args, out)
    else:
        r = coset.generation_check(n, args.family, args.s)
        _emit(args, r.to_json())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    codes, out = [], []
    for name in names:
        r = run_suite(name, args.seed, args.budget_seconds, args.scale)
        status = "pass" if r.passed else ("budget exceeded" if r.budget_exceeded else "fail")
        print(f"{name}: {status} ({r.cases} cases, {len(r.failures)} failures, {r.wall_time:.1f}s)", file=sys.stderr)
        codes.append(r.exit_code)
        out.append(r.to_json())
    _emit(args, out[0] if len(out) == 1 else out)
    for code in (EXIT_FAIL, EXIT_BUDGET, EXIT_INCONCLUSIVE):
        if code in codes:
            return code
    return EXIT_OK


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--budget-seconds", type=float, default=None, help="wall-clock budget")
    common.add_argument("--json", action="store_true", help="indent the JSON output")
    common.add_argument("--dot", metavar="PATH", help="write a DOT 1-skeleton to PATH")
    common.add_argument("--maxlen", type=int, help="word-length bound for truncations")
    common.add_argument("--nodes", "--n", dest="nodes", type=int, help="strand or node count")

    p = argparse.ArgumentParser(prog="braidthompson", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="object", required=True)

    def obj(name: str, verbs: Sequence[str], help_: str) -> argparse.ArgumentParser:
        q = sub.add_parser(name, parents=[common], help=help_)
        q.add_argument("verb", choices=verbs)
        q.add_argument("operands", nargs="*", help="JSON operands (read from stdin if omitted)")
        return q

    q = obj("braid", ["eq", "trivial", "nf", "perm", "delete", "cable", "clone-test"], "braid words")
    q.add_argument("--strand", type=int, help="top position for delete and clone-test")
    q.add_argument("--widths", help="comma-separated cable widths")

    q = obj("forest", ["join", "graft", "elem"], "forests of binary trees")
    q.add_argument("--roots", type=int)
    q.add_argument("--set", help="comma-separated root indices for elem")

    q = obj("spraige", ["reduce", "mul", "inv", "eq", "leq", "lub", "dangling-eq"], "spraige diagrams")
    q.add_argument("--pure", action="store_true", help="pure dangling only")

    q = sub.add_parser("complex", parents=[common], help="matching complexes")
    q.add_argument("verb", choices=["matching"])
    q.add_argument("--family", choices=["complete", "linear", "cyclic", "custom"], default="complete")
    q.add_argument("--edges-file", help="JSON list of [a, b] pairs for --family custom")
    q.add_argument("--homology", action="store_true")
    q.add_argument("--pi1", action="store_true")
    q.add_argument("--certify", type=int, metavar="K", help="decide k-connectivity")
    q.add_argument("--max-dim", type=int, help="truncate to this skeleton")

    q = obj("braige", ["eq", "stab", "truncate", "dlk", "fiber-witness"], "flat braiges")
    q.add_argument("--pure", action="store_true")
    q.add_argument("--edges", help="comma-separated graph edges")
    q.add_argument("--variant", choices=braige.VARIANTS, default="EB")
    q.add_argument("--radius", type=int, default=4, help="clone search radius for fiber-witness")

    q = obj("arc", ["act", "pi", "eq", "stab"], "arcs in the punctured disk")
    q.add_argument("--set", help="comma-separated base arc indices for stab")

    q = sub.add_parser("coset", parents=[common], help="coset complexes")
    q.add_argument("verb", choices=["nerve", "generation"])
    q.add_argument("--family", choices=[coset.AF, coset.BF], default=coset.BF)
    q.add_argument("--s", type=int, default=1)

    q = sub.add_parser("verify", parents=[common], help="run a verification suite")
    q.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    q.add_argument("--scale", type=float, default=1.0, help="multiplier for randomized trial counts")
    return p


HANDLERS = {
    "braid": cmd_braid,
    "forest": cmd_forest,
    "spraige": cmd_spraige,
    "complex": cmd_complex,
    "braige": cmd_braige,
    "arc": cmd_arc,
    "coset": cmd_coset,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        # operands may come after options, which argparse's subparsers
        # would otherwise leave unparsed
        args, extra = parser.parse_known_args(argv)
        stray = [x for x in extra if x.startswith("--")] or (extra and not hasattr(args, "operands"))
        if stray:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if extra:
            args.operands = list(args.operands) + extra
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return HANDLERS[args.object](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
