from __future__ import annotations

import io
import json

import pytest

from braidthompson.cli import main
from braidthompson.suites import EXIT_BUDGET, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE


def braid(n, *w):
    return json.dumps({"n": n, "w": list(w)})


def flat(n, w, edges):
    return json.dumps({"braid": {"n": n, "w": list(w)}, "edges": list(edges)})


def spraige(minus, n, w, plus):
    return json.dumps({"minus": minus, "braid": {"n": n, "w": list(w)}, "plus": plus})


@pytest.fixture
def run(capsys, monkeypatch):
    def call(*argv, stdin=None):
        if stdin is not None:
            monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip() else None)

    return call


class TestBraid:
    def test_eq_and_trivial(self, run):
        assert run("braid", "eq", braid(3, 1, 2, 1), braid(3, 2, 1, 2)) == (EXIT_OK, {"equal": True})
        assert run("braid", "trivial", braid(3, 1, -1)) == (EXIT_OK, {"trivial": True})

    def test_stdin_stream(self, run):
        code, out = run("braid", "eq", stdin=braid(2, 1) + "\n" + braid(2, -1))
        assert code == EXIT_OK and out == {"equal": False}

    def test_nf_perm_delete_cable(self, run):
        code, out = run("braid", "nf", braid(3, 1, 2, 1))
        assert code == EXIT_OK and "word" in out
        assert run("braid", "perm", braid(3, 1, 2))[1] == {"permutation": [3, 1, 2]}
        assert run("braid", "delete", "--strand", "3", braid(3, 2))[1] == {"n": 2, "w": []}
        code, out = run("braid", "cable", "--widths", "2,1", braid(2, 1))
        assert out["n"] == 3 and len(out["w"]) == 2
        assert run("braid", "clone-test", "--strand", "1", braid(3))[1] == {"is_clone": True}

    def test_usage_errors(self, run):
        assert run("braid", "eq", braid(2, 1))[0] == EXIT_USAGE
        assert run("braid", "delete", braid(2, 1))[0] == EXIT_USAGE
        assert run("braid", "trivial", '{"n": 2, "w": [5]}')[0] == EXIT_USAGE
        assert run("braid", "trivial", "[1, 2]")[0] == EXIT_USAGE
        assert run("braid", "frobnicate")[0] == EXIT_USAGE
        assert run()[0] == EXIT_USAGE


class TestForestAndSpraige:
    def test_forest(self, run):
        assert run("forest", "join", "11000", "10100")[1]["expansion"] == "1100100"
        assert run("forest", "graft", "100", "100,0")[1] == {"forest": "11000"}
        assert run("forest", "elem", "--roots", "3", "--set", "2")[1] == {"forest": "0,100,0"}

    def test_spraige(self, run):
        s = spraige("100", 2, [], "100")
        assert run("spraige", "reduce", s)[1]["minus"] == "0"
        t = spraige("0,0", 2, [1], "0,0")
        assert run("spraige", "eq", t, t)[1] == {"equal": True}
        code, out = run("spraige", "mul", t, t)
        assert code == EXIT_OK and out["braid"]["n"] >= 2
        assert run("spraige", "inv", t)[1]["braid"]["w"] == [-1]
        lam = spraige("100", 2, [], "0,0")
        one = spraige("0", 1, [], "0")
        assert run("spraige", "leq", one, lam)[1] == {"leq": True}
        assert run("spraige", "lub", one, lam)[1]["minus"] == "100"
        x = spraige("0,0", 2, [1, 1], "100")
        y = spraige("0,0", 2, [], "100")
        assert run("spraige", "dangling-eq", x, y)[1] == {"equal": False}


class TestComplex:
    def test_homology_and_pi1(self, run):
        code, out = run("complex", "matching", "--nodes", "4", "--homology")
        assert code == EXIT_OK and out["f_vector"] == [6, 3]
        assert out["homology"]["reduced_homology"]["0"]["betti"] == 2
        code, out = run("complex", "matching", "--family", "cyclic", "--n", "6", "--pi1")
        assert out["pi1"] == "nontrivial"

    def test_certify_exit_codes(self, run):
        assert run("complex", "matching", "--nodes", "5", "--certify", "0")[0] == EXIT_OK
        code, out = run("complex", "matching", "--nodes", "7", "--certify", "1")
        assert code == EXIT_FAIL and out["certify"]["verdict"] == "refuted"
        code, _ = run("complex", "matching", "--nodes", "8", "--certify", "1", "--max-dim", "1")
        assert code == EXIT_INCONCLUSIVE

    def test_custom_and_dot(self, run, tmp_path):
        edges = tmp_path / "g.json"
        edges.write_text("[[1, 2], [2, 3], [3, 4]]")
        dot = tmp_path / "m.dot"
        code, out = run("complex", "matching", "--family", "custom", "--nodes", "4",
                        "--edges-file", str(edges), "--dot", str(dot))
        assert code == EXIT_OK and out["f_vector"] == [3, 1]
        assert dot.read_text().startswith("graph")
        assert run("complex", "matching", "--family", "custom", "--nodes", "4")[0] == EXIT_USAGE


class TestBraigeArcCoset:
    def test_braige(self, run):
        assert run("braige", "eq", flat(2, [1, 1], [1]), flat(2, [], [1]))[1] == {"equal": False}
        assert run("braige", "stab", "--edges", "1", braid(2, 1, 1))[1] == {"stabilizes": False}
        code, out = run("braige", "truncate", "--nodes", "4", "--maxlen", "0")
        assert code == EXIT_OK and out["simplices"] == [[0], [1], [2], [0, 2]]
        code, out = run("braige", "dlk", "--maxlen", "0", spraige("1100100", 4, [], "0,0,0,0"))
        assert code == EXIT_OK and out["bijective"]
        code, out = run("braige", "fiber-witness", flat(4, [1, 1], [1]), flat(4, [3, 3], [3]), flat(4, [], [1, 3]))
        assert code == EXIT_OK and out["simplex"]["edges"] == [1, 3]
        assert run("braige", "truncate", "--nodes", "4")[0] == EXIT_USAGE

    def test_budget_cap(self, run, monkeypatch):
        from braidthompson import braige

        real = braige.build_truncation
        monkeypatch.setattr(braige, "build_truncation",
                            lambda *a, **k: real(*a, **{**k, "max_simplices": 5}))
        assert run("braige", "truncate", "--nodes", "4", "--maxlen", "1")[0] == EXIT_BUDGET

    def test_arc(self, run):
        code, out = run("arc", "pi", flat(4, [], [1, 3]))
        assert code == EXIT_OK and len(out["arcs"]) == 2
        arc = json.dumps(out["arcs"][0])
        code, img = run("arc", "act", arc, braid(4, 1))
        assert img == out["arcs"][0]
        system = json.dumps(out)
        assert run("arc", "eq", system, system)[1] == {"equal": True}
        assert run("arc", "stab", "--set", "1", braid(3, 1, 1))[1] == {"stabilizes": True}

    def test_coset(self, run):
        code, out = run("coset", "nerve", "--n", "3", "--maxlen", "1")
        assert code == EXIT_OK and out["count_by_dim"] == [12, 7]
        code, out = run("coset", "generation", "--n", "5")
        assert out["uncovered"] == ["A2,4"]
        code, out = run("coset", "generation", "--n", "6", "--family", "af")
        assert out["all_covered"]


class TestVerify:
    def test_suite(self, run):
        code, out = run("verify", "floor-lemma")
        assert code == EXIT_OK and out["failures"] == []

    def test_budget(self, run):
        code, out = run("verify", "confluence", "--budget-seconds", "0.001")
        assert code == EXIT_BUDGET and out["budget_exceeded"]

    def test_unknown(self, run):
        assert run("verify", "nonsense")[0] == EXIT_USAGE

    def test_json_indent(self, capsys):
        main(["braid", "trivial", "--json", braid(2)])
        assert capsys.readouterr().out.startswith("{\n  ")

    def test_unknown_option(self, run):
        assert run("braid", "trivial", "--bogus", braid(2))[0] == EXIT_USAGE
