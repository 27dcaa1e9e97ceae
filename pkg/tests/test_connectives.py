import pytest

from multinet.connectives import (
    OUT,
    basic_partitions,
    cnf_structure,
    cyclic_union_intersection,
    dnf_structure,
    formula_trees,
    girard_type,
    gsbp,
    gsbp_dual,
    nondecomposability_probe,
    psbp,
    rotations,
    sbp,
)
from multinet.errors import DomainError, ResourceError
from multinet.formulas import formula_structure, parse_formula
from multinet.mstructure import behavior, builtin_type, is_component
from multinet.partitions import Partition, PartitionSet, orthogonal_set, sets_orthogonal


def P(*blocks):
    return Partition([list(b) for b in blocks])


def test_basic_partitions_2_2():
    assert sbp(2, 2).as_set() == {P(("1", "2"), ("3", "4")), P(("1", "4"), ("2", "3"))}
    assert basic_partitions(2, 3).n == 6
    assert len(sbp(2, 3)) == 3


def test_orthogonal_of_basic_partitions():
    assert psbp(2, 2).as_set() == {P(("1", "3"), ("2",), ("4",)), P(("1",), ("2", "4"), ("3",))}
    assert len(psbp(2, 3)) == 3
    assert sets_orthogonal(sbp(2, 3), psbp(2, 3))


def test_primality():
    with pytest.raises(DomainError):
        girard_type(2, 4)
    with pytest.raises(DomainError):
        girard_type(0, 2)
    assert girard_type(2, 4, allow_nonprime=True).link.n_in == 8
    with pytest.raises(DomainError):
        girard_type(2, 2, "neutral")


def test_girard_types():
    g = girard_type(2, 2)
    assert g.link.name == "G_2_2" and (g.link.n_in, g.link.n_out) == (4, 1)
    assert g.behavior.as_set() == {
        P(("i1", "i3", "o1"), ("i2",), ("i4",)),
        P(("i1",), ("i2", "i4", "o1"), ("i3",)),
    }
    d = girard_type(2, 2, "dual")
    assert d.link.name == "Gdual_2_2" and len(d.behavior) == 4
    assert builtin_type("G_2_2") == g.link
    assert len(gsbp(2, 3)) == 3 and len(gsbp_dual(2, 3)) == 6


def test_output_in_every_member():
    for beh in (gsbp(2, 3), gsbp_dual(2, 3)):
        for p in beh:
            assert OUT in p.ground


def test_primal_and_dual_inputs_are_orthogonal():
    inputs = [f"i{k}" for k in range(1, 5)]
    g = girard_type(2, 2).behavior.restrict(inputs)
    d = girard_type(2, 2, "dual").behavior.restrict(inputs)
    assert g.as_set() <= orthogonal_set(sbp(2, 2).rename({str(k): f"i{k}" for k in range(1, 5)})).as_set()
    assert d.ground == g.ground


def test_rotations():
    assert rotations(3) == [(1, 2, 3), (2, 3, 1), (3, 1, 2)]


def test_cnf_dnf_shapes():
    c = cnf_structure((1, 2, 3, 4), 2, 2)
    d = dnf_structure((1, 2, 3, 4), 2, 2)
    assert is_component(c) and is_component(d)
    assert {e.payload for e in c.links} == {"par_2", "tensor_2"}
    with pytest.raises(DomainError):
        cnf_structure((1, 1, 2, 3), 2, 2)


def test_cyclic_union_intersection():
    inter, union = cyclic_union_intersection(2, 2)
    assert inter == girard_type(2, 2).behavior
    assert union == girard_type(2, 2, "dual").behavior


def test_formula_tree_count():
    # 5 shapes, 24 leaf orders, 8 connective choices
    assert sum(1 for _ in formula_trees(4)) == 5 * 24 * 8
    assert sum(1 for _ in formula_trees(1)) == 1


def test_probe():
    assert nondecomposability_probe(girard_type(2, 2).behavior, 4) is None
    s = formula_structure(parse_formula("a*(b|c)"))
    found = nondecomposability_probe(behavior(s), 3)
    assert found is not None and behavior(found) == behavior(s)
    with pytest.raises(ResourceError):
        nondecomposability_probe(PartitionSet([f"i{k}" for k in range(1, 7)] + [OUT]), 6)
    with pytest.raises(DomainError):
        nondecomposability_probe(PartitionSet(["x"], [P(("x",))]), 1)
