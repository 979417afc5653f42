import io
import json

import pytest

from fgr import graphs as G
from fgr.cli import EXIT_DOMAIN, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_core_json():
    code, out, _ = call("core", "--subgroup", "b,abA")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["vertices"]) == 2 and len(doc["edges"]) == 3


def test_core_dot():
    code, out, _ = call("core", "--word", "xyXY", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_apply_word():
    code, out, _ = call("apply", "--images", "a=~u,b=uv", "--word", "bbabA")
    assert code == 0 and out.strip() == "uvuvvu"


def test_apply_graph_json():
    code, out, _ = call("apply", "--images", "x=ab,y=b", "--subgroup", "x,y", "--json")
    assert code == 0 and len(json.loads(out)["vertices"]) == 1


def test_whitehead():
    code, out, _ = call("whitehead", "--word", "xyXY", "--json")
    assert code == 0
    assert sorted(json.loads(out)["whitehead"]) == ["x.y", "x.~y", "~x.y", "~x.~y"]


def test_decompose_json():
    code, out, _ = call("decompose", "--images", "x=ab,y=b", "--json")
    doc = json.loads(out)
    assert code == 0
    assert [s["kind"] for s in doc["steps"]].count(3) == 1


def test_primitive_and_rewrite():
    assert call("primitive", "--word", "aab")[1].strip() == "true"
    assert call("primitive", "--word", "abAB")[1].strip() == "false"
    assert call("rewrite", "--word", "bbabA", "--subgroup", "b,abA")[1].strip() == "ααβ"
    assert call("rewrite", "--word", "a", "--subgroup", "b,abA")[1].strip() == "none"


def test_verify_counterexample(tmp_path):
    dest = tmp_path / "tree.json"
    code, out, _ = call("verify-counterexample", "--json-out", str(dest))
    assert code == 0
    assert out.splitlines()[-1] == "verdict: Positive"
    doc = json.loads(dest.read_text())
    assert set(doc["root_verdicts"].values()) == {"Positive"}


def test_verify_counterexample_complete_table():
    code, out, _ = call("verify-counterexample", "--table", "complete", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "Positive"


COMMUTATOR = {
    "gamma": ["xyXY"],
    "delta": {"subgroup": ["x", "y"]},
    "object": {"generators": ["x", "y"],
               "restrictions": [["x", "~y"], ["~x", "y"], ["~y", "~x"], ["x", "~x"]]},
}


def test_solve_problem_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps(dict(COMMUTATOR, script={"P": ["split", "y", "x"]})))
    code, out, _ = call("solve", str(f), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "Positive"
    kinds = {n["label"]: n["status"] for n in doc["nodes"]}
    assert {k for k, v in kinds.items() if v == "StencilPositive"} == {"P.1", "P.2"}


def test_solve_inline_text_and_budget():
    code, _, _ = call("solve", json.dumps(COMMUTATOR), "--budget", "1")
    assert code == 2


def test_solve_negative():
    prob = {"gamma": ["a"], "delta": {"subgroup": ["a", "b"]}, "object": {"generators": ["a", "b"]}}
    assert call("solve", json.dumps(prob))[0] == 1


def test_stencil_classes():
    code, out, _ = call("stencil-classes", "--word", "xyXY",
                        "--object", json.dumps(COMMUTATOR["object"]), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["closed"] and len(doc["classes"]) == 2


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["core"],
    ["apply", "--word", "ab"],
    ["verify-counterexample", "--table", "nope"],
    ["solve", "{not json"],
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_USAGE and err


@pytest.mark.parametrize("argv", [
    ["core", "--word", "a!"],
    ["apply", "--images", "a=~u,b=", "--word", "ab!"],
    ["rewrite", "--word", "a", "--subgroup", "a,aa"],
    ["decompose", "--images", "x=a,y=a", "--object",
     '{"generators": ["x", "y"], "restrictions": [["x", "y"]]}'],
])
def test_domain_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_DOMAIN and err.startswith("error:")


@pytest.mark.parametrize("sub", ["b,abA", "xyXY", "u,v;~u", "aab,bbA"])
def test_core_json_round_trip(sub):

    _, out, _ = call("core", "--subgroup", sub)
    g = G.graph_from_json(json.loads(out))
    assert G.canonical_key(g) == G.canonical_key(G.subgroup_graph(G.parse_subgroup(sub)))
