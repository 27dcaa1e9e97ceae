import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_sample
from multinet.corpus import MLL, SMALL_TYPES, enumerate_structures, random_structure
from multinet.errors import DomainError, ResourceError
from multinet.hypergraph import Vertex, connected_components
from multinet.mstructure import (
    LinkType,
    MStructure,
    Signature,
    behavior,
    builtin_type,
    component_witness,
    count_switchings,
    dr_check_mll,
    enumerate_switchings,
    first_failing_test,
    is_component,
    is_correct,
    is_isomorphic,
    is_net,
    is_transitory,
    isomorphism,
    link_type_of,
    substructure,
    test as switching_test,
    test_behavior as border_partition,
)
from multinet.partitions import Partition, PartitionSet


def P(*blocks):
    return Partition([list(b) for b in blocks])


def build(*links, vertices=(), signature=None):
    return MStructure.build(links, vertices, signature)


def test_builtin_behaviors():
    assert builtin_type("par").behavior.as_set() == {P(("i1", "o1"), ("i2",)), P(("i1",), ("i2", "o1"))}
    assert builtin_type("tensor").behavior.as_set() == {P(("i1", "i2", "o1"))}
    assert builtin_type("ax").behavior.as_set() == {P(("o1", "o2"))}
    assert builtin_type("cut").behavior.as_set() == {P(("i1", "i2"))}
    assert len(builtin_type("par_3").behavior) == 3
    assert builtin_type("par_bullet_2").n_out == 0
    assert builtin_type("nonsense") is None
    with pytest.raises(DomainError):
        builtin_type("par_0")


def test_link_type_validation():
    with pytest.raises(DomainError):
        LinkType("bad", 1, 1, PartitionSet.of(P(("i1",), ("o2",))))


def test_unknown_type_and_arity_mismatch():
    with pytest.raises(DomainError):
        build(("l", "mystery", ("a",), ("b",)))
    with pytest.raises(DomainError):
        build(("l", "tensor", ("a",), ("b",)))


def test_switching_counts():
    assert count_switchings(load_sample("extest.json")) == 4
    only_tensors = build(("t1", "tensor", ("a", "b"), ("c",)), ("t2", "tensor", ("c", "d"), ("e",)))
    assert count_switchings(only_tensors) == 1
    assert list(enumerate_switchings(MStructure.build([]))) != []


def test_switching_bound():
    s = build(*[(f"p{k}", "par", (f"a{k}", f"b{k}"), (f"c{k}",)) for k in range(4)])
    with pytest.raises(ResourceError):
        list(enumerate_switchings(s, bound=8))
    assert len(list(enumerate_switchings(s, bound=8, stream=True))) == 16


def test_par_and_tensor_tests():
    par = build(("p", "par", ("a", "b"), ("c",)))
    shapes = {frozenset(switching_test(par, sigma).uedges) for sigma in enumerate_switchings(par)}
    assert frozenset({frozenset("ac"), frozenset("b")}) in shapes
    assert len(shapes) == 2
    ten = build(("t", "tensor", ("a", "b"), ("c",)))
    (sigma,) = enumerate_switchings(ten)
    assert switching_test(ten, sigma).uedges == (frozenset("abc"),)


def test_extest_behavior():
    s = load_sample("extest.json")
    got = behavior(s).as_set()
    assert P(("a", "b"), ("c",), ("d", "e", "o")) in got
    assert P(("a", "b", "o"), ("c",), ("d", "e")) in got
    assert len(got) == 4


def test_ax_behaviors():
    assert behavior(build(("x", "ax", (), ("a", "b")))).as_set() == {P(("a", "b"))}
    two = build(("x", "ax", (), ("a", "b")), ("y", "ax", (), ("c", "d")))
    assert behavior(two).as_set() == {P(("a", "b"), ("c", "d"))}
    assert is_correct(build(("x", "ax", (), ("a", "b"))))


def test_modex_verdicts():
    s1, s2, s3 = (load_sample(f"modex_s{k}.json") for k in (1, 2, 3))
    assert is_net(s1) and is_correct(s1) and is_transitory(s1)
    assert is_component(s2) and not is_net(s2)
    assert not is_component(s3) and not is_correct(s3)
    w = component_witness(s3)
    assert w.reason == "unreached" and set(w.unreached) == {"a2", "a3"}
    sigma = first_failing_test(s3)
    comps = connected_components(switching_test(s3, sigma))
    assert P(("a2", "a3")) == comps.restrict(["a2", "a3"])


def test_cut_between_two_axioms_is_a_net():
    s = build(("x", "ax", (), ("a", "b")), ("y", "ax", (), ("c", "d")), ("k", "cut", ("b", "c"), ()))
    assert is_correct(s) and is_net(s)


def test_closed_structure_is_not_a_net():
    s = build(("x", "ax", (), ("a", "b")), ("k", "cut", ("a", "b"), ()))
    assert not s.outputs and not is_net(s)


def test_single_par_is_transitory_component():
    p = build(("p", "par", ("a", "b"), ("c",)))
    assert is_component(p) and is_transitory(p)


def test_empty_border_is_not_a_component():
    s = build(("x", "ax", (), ("a", "b")), ("k", "cut", ("a", "b"), ()))
    assert component_witness(s).reason == "empty-border"
    assert is_component(MStructure.build([]))


def test_cyclic_witness():
    s = build(("x", "ax", (), ("a", "b")), ("t", "tensor", ("a", "b"), ("c",)))
    w = component_witness(s)
    assert w.reason == "cyclic"


def test_dr_oracle_examples():
    assert dr_check_mll(load_sample("modex_s1.json"))
    closed = build(("x", "ax", (), ("na", "a")), ("t", "tensor", ("na", "a"), ("o",)))
    assert not dr_check_mll(closed) and not is_net(closed)
    good = build(("x", "ax", (), ("na", "a")), ("p", "par", ("na", "a"), ("o",)))
    assert dr_check_mll(good) and is_net(good)
    with pytest.raises(DomainError):
        dr_check_mll(build(("k", "cut", ("a", "b"), ())))


def test_dr_oracle_agrees_up_to_three_links():
    for s in enumerate_structures(MLL, 3):
        assert is_net(s) == dr_check_mll(s)


def test_implication_chain_small_corpus():
    for s in enumerate_structures(SMALL_TYPES[:6], 2):
        if is_net(s):
            assert is_transitory(s)
        if is_transitory(s):
            assert is_component(s)


def test_correct_implies_connected_test():
    for s in enumerate_structures(MLL, 3):
        if is_correct(s):
            for sigma in enumerate_switchings(s):
                assert len(connected_components(switching_test(s, sigma))) == 1


def test_connected_tests_do_not_imply_correctness():
    # Every test is connected, but the ax and tensor links form a cycle.
    s = build(("x", "ax", (), ("a", "b")), ("t", "tensor", ("a", "b"), ("c",)))
    (sigma,) = enumerate_switchings(s)
    assert len(connected_components(switching_test(s, sigma))) == 1
    assert not is_correct(s)


def test_substructures_of_a_net_are_components():
    s1 = load_sample("modex_s1.json")
    ids = [e.id for e in s1.links]
    for k in range(1, len(ids) + 1):
        for chosen in itertools.combinations(ids, k):
            sub = substructure(s1, chosen)
            connected = len(connected_components(_shadow(sub))) == 1
            if connected:
                assert is_component(sub)


def _shadow(s):
    from multinet.hypergraph import undirected_shadow

    return undirected_shadow(s.graph)


def test_test_behavior_matches_components():
    s = load_sample("extest.json")
    for sigma in enumerate_switchings(s):
        comps = connected_components(switching_test(s, sigma))
        assert border_partition(s, sigma) == comps.restrict(sorted(s.border))


def test_link_type_of_and_isomorphism():
    s = build(("p", "par", ("a", "b"), ("c",)))
    t = link_type_of(s, "wrapped")
    assert t.behavior == builtin_type("par").behavior
    other = build(("q", "par", ("x", "y"), ("z",)))
    assert isomorphism(s, other) == {"a": "x", "b": "y", "c": "z"}
    swapped = build(("q", "par", ("y", "x"), ("z",)))
    assert is_isomorphic(s, swapped)
    assert not is_isomorphic(s, build(("q", "tensor", ("x", "y"), ("z",))))
    labelled = MStructure.build([("q", "par", ("x", "y"), ("z",))], [Vertex("x", "atom")])
    assert not is_isomorphic(s, labelled)
    assert is_isomorphic(s, labelled, labels=False)


def test_custom_signature_round():
    kappa = load_sample("extest.json").signature["kappa"]
    sig = Signature([kappa])
    s = build(("k", "kappa", ("a", "b", "c"), ("d",)), signature=sig)
    assert behavior(s).as_set() == {P(("a", "b", "d"), ("c",)), P(("a", "c", "d"), ("b",))}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_behavior_is_border_partition(seed):
    s = random_structure(random.Random(seed))
    for p in behavior(s):
        assert set(p.ground) == set(s.border)
