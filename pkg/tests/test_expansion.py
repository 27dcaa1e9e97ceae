import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_sample
from multinet.corpus import component_corpus, random_components, random_sites
from multinet.errors import DomainError, ExpansionError
from multinet.expansion import (
    ExpansionSite,
    check_conditions,
    compose_site,
    composite_border,
    expand,
    expand_traced,
    expands_characterized,
    expands_direct,
    one_sided_conditions,
    sites_between,
    transitory_preserved,
)
from multinet.mstructure import MStructure, is_component, is_transitory
from multinet.partitions import count_orthogonality_tests


def build(*links):
    return MStructure.build(links)


PAR = build(("p", "par", ("a", "b"), ("c",)))
TENSOR = build(("t", "tensor", ("a", "b"), ("c",)))
AX = build(("x", "ax", (), ("x1", "x2")))


def test_site_validation():
    with pytest.raises(DomainError):
        ExpansionSite(PAR, AX, (("c", "x1"),))
    with pytest.raises(DomainError):
        ExpansionSite(PAR, AX, (("a", "zz"),))
    with pytest.raises(DomainError):
        ExpansionSite(PAR, AX, ())
    with pytest.raises(DomainError):
        ExpansionSite(PAR, AX, (("a", "x1"), ("b", "x1")))


def test_par_over_axiom_on_one_input():
    site = ExpansionSite(PAR, AX, (("a", "x1"),))
    assert expands_direct(site) and expands_characterized(site)
    assert composite_border(site) == {"b", "c", "x2"}


def test_tensor_over_axiom_on_both_inputs_is_cyclic():
    site = ExpansionSite(TENSOR, AX, (("a", "x1"), ("b", "x2")))
    report = check_conditions(site)
    assert report.failed == "b"
    assert not expands_direct(site)
    with pytest.raises(ExpansionError) as err:
        expand(site)
    assert err.value.condition == "b"


def test_empty_composite_border_fails_condition_a():
    host = build(("k", "cut", ("a", "b"), ()))
    site = ExpansionSite(host, AX, (("a", "x1"), ("b", "x2")))
    assert check_conditions(site).failed == "a"
    assert not expands_direct(site)


def test_par_over_axiom_on_both_inputs_needs_the_exact_check():
    site = ExpansionSite(PAR, AX, (("a", "x1"), ("b", "x2")))
    assert expands_direct(site)
    assert expands_characterized(site)
    assert not one_sided_conditions(site).ok


def test_one_sided_check_is_sound():
    rng = random.Random(7)
    pool = random_components(rng, 150)
    for site in random_sites(rng, pool, 1500):
        if one_sided_conditions(site).ok:
            assert expands_direct(site)


def test_exhaustive_two_link_agreement_sample():
    pool = component_corpus(max_links=1)
    for h in pool:
        for g in pool:
            for site in sites_between(h, g, 2):
                assert expands_direct(site) == expands_characterized(site)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_characterization_matches_direct(seed):
    rng = random.Random(seed)
    (site,) = random_sites(rng, random_components(rng, 20), 1)
    assert expands_direct(site) == expands_characterized(site)


def test_expand_returns_component():
    site = ExpansionSite(PAR, AX, (("a", "x1"),))
    s = expand(site)
    assert is_component(s)
    traced = expand_traced(site)
    assert traced.vertex_map["x1"] == "a"


def test_orthogonality_budget():
    site = ExpansionSite(load_sample("extest.json"), PAR, (("a", "c"),))
    with count_orthogonality_tests() as box:
        check_conditions(site)
    assert box.tests <= 4 * 2


def test_concurrent_example_host_and_guests():
    f = build(("F", "tensor", ("b", "c"), ("a",)))
    gh = build(("G", "par", ("b1", "b2"), ("b",)), ("H", "par_1", ("c1",), ("c",)))
    site = ExpansionSite(f, gh, (("b", "b"), ("c", "c")))
    assert expands_direct(site) and expands_characterized(site)


def test_transitory_preserved():
    site = ExpansionSite(PAR, AX, (("a", "x1"),))
    assert transitory_preserved(site) is True
    chain = build(("t", "tensor", ("a", "b"), ("c",)))
    lower = build(("u", "tensor", ("d", "e"), ("f",)))
    s = ExpansionSite(chain, lower, (("a", "f"),))
    assert transitory_preserved(s) is True
    assert is_transitory(compose_site(s).structure)
    s2 = load_sample("modex_s2.json")
    assert transitory_preserved(ExpansionSite(PAR, s2, (("a", "A"),))) in (True, None)
    no_output = build(("k", "cut", ("a", "b"), ()))
    with pytest.raises(DomainError):
        transitory_preserved(ExpansionSite(no_output, AX, (("a", "x1"),)))


def test_sites_between_counts():
    sites = list(sites_between(TENSOR, AX, 2))
    # one input with either output, or both inputs with either ordering
    assert len(sites) == 2 * 2 + 1 * 2
