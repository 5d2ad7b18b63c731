import os
from pathlib import Path

import pytest

import provlog

DATA = Path(os.environ.get("PROVLOG_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def example(program, facts, semiring):
    return provlog.load((DATA / "examples" / program).read_text(), (DATA / "examples" / facts).read_text(), semiring)


def test_minimal_cost():
    prog, db = example("running.dl", "running_tropical.facts", "tropical")
    assert prog.is_recursive
    assert provlog.provenance(prog, db, "A(a)") == "3"


def test_depth_restricted_semantics():
    prog, db = example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat")
    got = {s: provlog.provenance(prog, db, "A(a)", s) for s in ("nrt", "mdt", "hmdt")}
    assert got == {"nrt": "c*d + d*e + d*f", "mdt": "c*d + d*e", "hmdt": "c*d"}


def test_models_on_two_alternatives():
    prog, db = example("two_alternatives.dl", "two_alternatives_nat.facts", "nat")
    assert provlog.provenance(prog, db, "goal", "am") == "3"
    assert provlog.provenance(prog, db, "goal", "sam") == "5"


def test_trees_and_facts():
    prog, db = example("three_rules.dl", "three_rules.facts", "nat")
    trees = provlog.trees(prog, db, "H(a,a)", kind="all", max_depth=1)
    assert len(trees) == 4
    assert all(t["fact"] == "H(a,a)" for t in trees)
    prog, db = example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat")
    assert provlog.usable_facts(prog, db, "A(a)") == ["C(a)", "D(a)", "E(a)", "F(a)"]
    assert provlog.necessary_facts(prog, db, "A(a)") == ["D(a)"]


def test_circuit_dict():
    prog, db = example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat")
    c = provlog.circuit(prog, db, "A(a)", "hmdt")
    assert c["bindings"]["c"] == "C(a)"
    assert c["nodes"][c["root"]]["op"] == "prod"


def test_table_semiring_validation():
    r = provlog.load_table_semiring(str(DATA / "semirings" / "glb_failure.json")).validate()
    assert r["ok"] and r["exhaustive"]
    assert not r["has_glb"]
    assert r["glb_witness"] == ("a", "b")


def test_counterexample_and_matrix():
    c = provlog.check_counterexample("boolean-compat", "mdt")
    assert c["verdict"] == "violated"
    assert provlog.check_counterexample("self", "at") is None
    m = provlog.run_matrix(trials=5, seed=2, properties=["deletion"], semantics=["at", "am"])
    assert m["ok"]


def test_errors_carry_a_kind():
    with pytest.raises(provlog.ProvlogError) as e:
        provlog.Program.parse("A(X) :- ")
    assert e.value.kind == "SyntaxError"
    prog, db = example("running.dl", "running_nat.facts", "nat")
    with pytest.raises(provlog.ProvlogError) as e:
        provlog.circuit(prog, db, "A(a)")
    assert e.value.kind == "InapplicableSemiring"
