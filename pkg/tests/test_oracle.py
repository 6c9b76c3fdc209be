import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_group, cyclic_table
from pgroup.automorphism import from_generator_images, inner_automorphisms, is_inner
from pgroup.construction import construct_noninner
from pgroup.errors import BudgetExhausted, IncompleteEnumeration
from pgroup.oracle import (burnside_generators, enumerate_automorphisms, find_isomorphism,
                           minimal_generating_size, oracle_report, search_fallback,
                           theorem_predicate, theorem_witnesses)
from pgroup.structure import frattini
from pgroup.table import generated_subgroup, relabel, validate_table

# |Aut(G)| from exhaustive enumeration; Q8 = 24 and D8 = 8 are also textbook values
AUT_COUNTS = {
    "d8": 8, "q8": 24, "m16": 16, "d8xz2": 64, "d8_circ_z4": 48, "q8xz4": 384,
    "es32_plus": 1152, "es32_minus": 1920, "es27": 432, "heis_z4": 512,
    "w_a2": 512, "w_b": 128, "w_c": 1536,
}


def test_z2_has_only_identity():
    G = validate_table(cyclic_table(2))
    enum = enumerate_automorphisms(G)
    assert [f.perm for f in enum.automorphisms] == [(0, 1)]


@pytest.mark.parametrize("name, count", sorted(AUT_COUNTS.items()))
def test_aut_counts(name, count):
    G = corpus_group(name)
    enum = enumerate_automorphisms(G)
    assert enum.complete and len(enum) == count
    perms = [f.perm for f in enum.automorphisms]
    assert perms == sorted(set(perms))
    assert all(f in enum for f in inner_automorphisms(G))


def test_burnside_basis_is_minimal(q8, heis):
    for G in (q8, heis):
        basis = burnside_generators(G, 2)
        assert len(generated_subgroup(G, basis)) == G.order
        assert len(basis) == minimal_generating_size(G)


@settings(max_examples=10, deadline=None)
@given(st.permutations(range(1, 8)))
def test_counts_invariant_under_relabelling(q8, perm):
    G = relabel(q8, [0] + list(perm))
    assert len(enumerate_automorphisms(G)) == 24
    assert len(theorem_witnesses(G, 2)) == len(theorem_witnesses(q8, 2))


def test_q8_witnesses_include_swap(q8):
    swap = from_generator_images(q8, [2, 4], [4, 2])
    ws = theorem_witnesses(q8, 2)
    assert swap in ws
    assert all(not is_inner(q8, f)[0] for f in ws)


def test_heisenberg_witnesses_include_pipeline(heis):
    cert = construct_noninner(heis)
    assert cert.automorphism in theorem_witnesses(heis, 2)


def test_search_fallback_is_least(q8):
    f = search_fallback(q8, 2)
    assert f == min(theorem_witnesses(q8, 2))
    assert search_fallback(q8, 2) == f


@pytest.mark.parametrize("name", ["m16", "es32_plus", "es32_minus"])
def test_search_fallback_finds_witness(name):
    G = corpus_group(name)
    f = search_fallback(G, 2)
    assert theorem_predicate(G, 2, f)


def test_budget_exhaustion(heis):
    enum = enumerate_automorphisms(heis, budget=50)
    assert not enum.complete and enum.nodes == 50
    with pytest.raises(IncompleteEnumeration):
        theorem_witnesses(heis, 2, enum)
    with pytest.raises(BudgetExhausted) as info:
        search_fallback(heis, 2, enum)
    assert info.value.nodes == 50


def test_budget_from_environment(monkeypatch, heis):
    monkeypatch.setenv("PGROUP_BUDGET", "10")
    assert not enumerate_automorphisms(heis).complete


def test_oracle_report(q8):
    rep = oracle_report("q8", q8, 2)
    assert rep["aut_count"] == 24 and rep["inn_count"] == 4
    assert rep["witness_count"] == 6 and rep["complete"]
    assert rep["least_witness_perm"] == list(search_fallback(q8, 2).perm)


def test_find_isomorphism(d8, q8):
    assert find_isomorphism(d8, q8) is None
    iso = find_isomorphism(q8, relabel(q8, [0, 3, 2, 1, 4, 5, 6, 7]))
    assert iso is not None and sorted(iso) == list(range(8))


def test_minimal_generating_size(d8):
    assert minimal_generating_size(validate_table(cyclic_table(8))) == 1
    assert minimal_generating_size(d8) == 2
    assert len(frattini(d8, 2)) == 2
