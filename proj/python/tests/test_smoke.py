import json

import pytest

import qmlogic as q


def test_parse_and_render():
    f = q.parse("p | q")
    assert str(f) == "~(~p & ~q)"
    assert f.size == 6
    assert q.parse("<>p") == q.parse("~[]~p")
    with pytest.raises(q.ParseError):
        q.parse("p &")


def test_admissible_closure_adds_negated_atoms():
    closure = {str(f) for f in q.admissible_closure([q.parse("[]p")])}
    assert closure == {"p", "~p", "[]p"}


def test_structure_validation():
    s = q.Structure(2)
    s.set_rq(0, 1)
    assert q.validate(s)  # neither reflexive nor symmetric yet
    s.complete_rq()
    s.set_valuation("p", [0])
    assert any("closed" in v for v in q.validate(s))
    s.set_valuation("p", [])
    assert q.validate(s) == []


def test_sat_sets_and_complement():
    s = q.load_model('{"worlds": 3, "rq": [[0,1],[1,2]], "rm": [], "valuation": {"p": [0]}}')
    assert q.sat_set(s, q.parse("p")) == [0]
    assert q.sat_set(s, q.parse("~p")) == q.ortho_complement([0], s) == [2]
    assert q.ortho_closure([0, 2], s) == [0, 1, 2]
    assert [] in q.closed_sets(s) and [0, 1, 2] in q.closed_sets(s)


def test_model_round_trip():
    text = '{"worlds": 2, "rq": [[0,1]], "rm": [[0,0],[0,1],[1,0],[1,1]], "valuation": {"p": []}}'
    s = q.load_model(text)
    again = q.load_model(q.dump_model(s))
    assert again == s
    assert json.loads(q.dump_model(s))["worlds"] == 2
    assert "digraph" in q.to_dot(s)
    with pytest.raises(q.MalformedInput):
        q.load_model('{"worlds": 2, "rq": [[0,1]], "rm": [], "valuation": {"p": [0]}}')


def test_holds_and_failing_world():
    s = q.load_model('{"worlds": 1, "rq": [], "rm": [], "valuation": {"p": [0]}}')
    assert q.holds_in(s, q.parse_sequent("|- p"))
    assert q.find_failing_world(s, q.parse_sequent("p |- q")) == 0


def test_collapse_report():
    s = q.load_model('{"worlds": 3, "rq": [[0,1]], "rm": [], "valuation": {"p": [2]}}')
    r = q.collapse(s, q.admissible_closure([q.parse("p")]))
    assert r["validates"] and r["size_bound"] and r["truth_preserved"]
    assert r["result"].world_count <= 2**2
    assert r["class_of"][0] == r["class_of"][1]


def test_saturate_small_universe():
    universe = [q.parse("p"), q.parse("~p")]
    out = q.saturate(universe)
    assert out["fixpoint"]
    assert {str(s) for s in out["minimal"]} == {"p |- p", "~p |- ~p", "p, ~p |-"}


@pytest.mark.parametrize(
    "text",
    ["|- ~(p & ~p)", "p |- ~~p", "~~p |- p", "[]p, []q |- [](p & q)", "|- []p, ~[]p", "~p & ~q |- ~(p | q)"],
)
def test_theorems(text):
    v = q.decide(q.parse_sequent(text))
    assert v["verdict"] == "theorem"
    assert q.check_derivation(v["derivation"])


@pytest.mark.parametrize("text,worlds", [("p |- q", 1), ("|- p", 1), ("p & (q | r) |- (p & q) | (p & r)", 4)])
def test_non_theorems(text, worlds):
    seq = q.parse_sequent(text)
    v = q.decide(seq, threaded=False)
    assert v["verdict"] == "non-theorem"
    (cm,) = v["countermodels"]
    s = q.load_model(cm["model"])
    assert s.world_count == worlds
    assert not q.holds_at(s, cm["world"], seq)


def test_prove_refute_and_bound():
    seq = q.parse_sequent("|- p")
    assert q.prove(seq, 1) is None
    assert q.refute(seq, 1)["world"] == 0
    assert q.fmp_bound(seq) == 4
    assert q.refute(q.parse_sequent("|- []p, ~[]p"), 3) is None


def test_unknown_within_small_budget():
    v = q.decide(q.parse_sequent("p |- []p"), max_worlds=1, max_stage=0)
    assert v["verdict"] == "unknown"
    assert v["fmp_bound"] is None


def test_enumerate():
    assert len(q.enumerate_structures(1, ["p"])) == 4
    assert str(q.enumerate_formula(["p"], 0)) == "p"
