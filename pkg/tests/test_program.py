import pytest

from conftest import sample_text
from multinet.dsl import parse_program
from multinet.errors import CompileError, DomainError, ExpansionError
from multinet.mstructure import behavior, is_component, is_transitory
from multinet.program import (
    Clause,
    Method,
    Program,
    apply,
    apply_method,
    atomic_template,
    compile_method,
    matchings,
    method_link,
    run,
    seed,
    successors,
)


def program():
    return parse_program(sample_text("concurrent_ex.mn"))


def test_compile_shapes():
    f = compile_method(Method("F", ("a",), (Clause(("b",)), Clause(("c",)))))
    assert sorted(e.payload for e in f.links) == ["ax", "par_bullet_1", "tensor", "tensor"]
    assert {f.label(v) for v in f.inputs} == {"b", "c"}
    assert {f.label(v) for v in f.outputs} == {"a"}
    assert is_transitory(f)


def test_compile_fact():
    b = compile_method(Method("B", ("b1", "b2")))
    assert not b.inputs and {b.label(v) for v in b.outputs} == {"b1", "b2"}
    assert is_component(b)


def test_compile_clause_with_three_atoms():
    m = compile_method(Method("M", ("a",), (Clause(("x", "y", "z")),)))
    assert "par_3" in {e.payload for e in m.links}


def test_compile_errors():
    with pytest.raises(DomainError):
        Method("M", ())
    with pytest.raises(DomainError):
        Clause(())
    with pytest.raises(CompileError):
        compile_method(Method("M", ("a",), (Clause(("x", "y"), "G_2_2"),)))
    with pytest.raises(CompileError):
        compile_method(Method("M", ("a", "b"), (Clause(("x",)),), synchro="Gdual_2_2"))


def test_atomic_template():
    m = Method("G", ("b",), (Clause(("b1", "b2")),))
    t = atomic_template(m)
    (link,) = t.links
    assert link.payload == "M_G"
    atomic = behavior(t).rename({"in1": "x", "in2": "y", "out1": "z"})
    compiled = behavior(compile_method(m)).rename({"b1.1": "x", "b1.2": "y", "h1": "z"})
    assert atomic == compiled
    _, ins, outs = method_link(m)
    assert ins == ("b1", "b2") and outs == ("b",)


def test_seed_and_matchings():
    p = program()
    s = seed(("a",))
    assert s.open_inputs == [("g1", "a")]
    assert [c.method for c in matchings(s, p.template("F"), "F")] == ["F"]
    assert matchings(s, p.template("G"), "G") == []


def test_apply_and_successors():
    p = program()
    s1 = apply_method(seed(("a",)), p, "F")
    assert sorted(lab for _, lab in s1.open_inputs) == ["b", "c"]
    nxt = successors(s1, p)
    assert len(nxt[0].trace[-1].applications) == 2
    with pytest.raises(ExpansionError):
        apply_method(seed(("a",)), p, "G")
    with pytest.raises(DomainError):
        apply(seed(("a",)), p, [])


def test_run_modes():
    p = program()
    r = run(p, seed(("a",)), depth=4)
    assert r.status == "solved" and r.solutions[0].depth == 3
    assert not r.solutions[0].structure.inputs
    seq = run(p, seed(("a",)), depth=5, concurrent=False)
    assert seq.status == "solved" and seq.solutions[0].depth == 5
    assert run(p, seed(("a",)), depth=2).status == "bound"
    assert run(p, seed(("zzz",)), depth=3).status == "no_solution"
    atomic = run(p, seed(("a",)), depth=4, atomic=True)
    assert atomic.status == "solved"


def test_run_is_deterministic():
    p = program()
    a = run(p, seed(("a",)), depth=4).to_json()
    b = run(p, seed(("a",)), depth=4).to_json()
    assert a == b


def test_resources_program_solves():
    p = parse_program(sample_text("resources.mn"))
    r = run(p, seed(p.goals[-1]), depth=4)
    assert r.status == "solved"
    assert all(is_component(s.structure) for s in r.solutions)


def test_choice_method_compiles_to_girard_link():
    p = parse_program(sample_text("choice.mn"))
    s = p.template("Want")
    assert "G_2_2" in {e.payload for e in s.links}
    assert is_component(s)


def test_program_rejects_duplicates():
    with pytest.raises(DomainError):
        Program((Method("A", ("a",)), Method("A", ("b",))))
