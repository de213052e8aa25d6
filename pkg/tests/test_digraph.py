import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import all_graphs, digraphs
from indexcoding.catalog.reference import G_A, G_B, catalog_entry
from indexcoding.digraph import (Digraph, are_isomorphic, canonical_form, edges,
                                 enumerate_nonisomorphic, find_cycle_through, format_edge_list,
                                 from_code, induced_subgraph, is_acyclic, isomorphism, mask_of,
                                 parse_edge_lists, permute, simple_cycles, to_code)


# -- container -------------------------------------------------------------------

def test_rejects_self_loops_and_duplicates():
    with pytest.raises(ValueError):
        Digraph.from_arcs(3, [(0, 0)])
    with pytest.raises(ValueError):
        Digraph.from_arcs(3, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        Digraph.from_arcs(17, [])


def test_neighbourhoods_consistent():
    g = Digraph.parse(4, "1->2, 2->3, 3->1, 4<->1")
    for i in range(4):
        for j in range(4):
            assert g.has_arc(i, j) == (j in g.out_neighbours(i)) == (i in g.in_neighbours(j))


def test_parse_chains():
    assert Digraph.parse(3, "1<->2->3").sorted_arcs() == [(0, 1), (1, 0), (1, 2)]


# -- induced subgraphs -----------------------------------------------------------

def test_induced_subgraph_of_three_cycle():
    g = Digraph.directed_cycle(3)
    sub, old = induced_subgraph(g, [0, 1])
    assert old == [0, 1]
    assert sub.sorted_arcs() == [(0, 1)]


def test_induced_subgraph_whole_set_is_identity():
    sub, old = induced_subgraph(G_A, G_A.full_mask)
    assert sub == G_A and old == list(range(5))


def test_induced_subgraph_of_ga():
    sub, _ = induced_subgraph(G_A, [0, 1, 2])
    assert {(0, 1), (1, 0), (1, 2), (2, 0)} <= sub.arcs


def test_induced_subgraph_empty_set():
    with pytest.raises(ValueError, match="empty vertex set"):
        induced_subgraph(G_A, [])


@given(digraphs(), st.data())
def test_induced_subgraph_of_acyclic_is_acyclic(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    if is_acyclic(g):
        assert is_acyclic(induced_subgraph(g, s)[0])
    assert induced_subgraph(g, s)[0] == oracles.induced(g, sorted(s))


# -- acyclicity and cycles ------------------------------------------------------

def test_is_acyclic_examples():
    assert is_acyclic(Digraph.empty(5))
    assert not is_acyclic(Digraph.parse(2, "1<->2"))
    assert not is_acyclic(catalog_entry("G0.2b").graph)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_is_acyclic_matches_oracles_exhaustively(n):
    for g in all_graphs(n):
        a = is_acyclic(g)
        assert a == oracles.dfs_acyclic(g) == oracles.has_topological_order(g)


def test_edges_examples():
    assert edges(Digraph.complete(3)) == {frozenset(p) for p in [(0, 1), (0, 2), (1, 2)]}
    assert edges(Digraph.directed_cycle(3)) == set()
    assert edges(G_B) == {frozenset((i, (i + 1) % 5)) for i in range(5)}


def test_find_cycle_through_examples():
    assert find_cycle_through(Digraph.directed_cycle(3), [0]) == (0, 1, 2)
    assert find_cycle_through(Digraph.empty(4)) is None
    assert find_cycle_through(catalog_entry("G0.2b").graph, [4]) == (4, 0, 2)


@given(digraphs(n_max=5), st.data())
def test_find_cycle_through_is_a_cycle(g, data):
    req = data.draw(st.sets(st.integers(0, g.n - 1), max_size=2))
    cyc = find_cycle_through(g, req)
    expected = any(req <= set(c) for c in oracles.cycles_nx(g))
    assert (cyc is not None) == expected
    if cyc is not None:
        assert req <= set(cyc)
        assert all(g.has_arc(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


@given(digraphs(n_max=5))
def test_simple_cycles_match_networkx(g):
    def rot(c):
        k = c.index(min(c))
        return c[k:] + c[:k]

    assert sorted(rot(tuple(c)) for c in simple_cycles(g)) == sorted(rot(c) for c in oracles.cycles_nx(g))


# -- canonical form ----------------------------------------------------------------

def test_single_vertex_form():
    cf = canonical_form(Digraph.empty(1))
    assert cf.code == 0 and cf.perm == (0,)


def test_swapped_arc_has_equal_form():
    assert canonical_form(Digraph.parse(2, "1->2")).code == canonical_form(Digraph.parse(2, "2->1")).code


def test_code_round_trip():
    assert from_code(5, to_code(G_A)) == G_A
    cf = canonical_form(G_A)
    assert cf.graph() == permute(G_A, cf.perm)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canonical_invariant_under_every_permutation(n):
    rng = random.Random(n)
    graphs = list(all_graphs(n))
    for g in rng.sample(graphs, min(len(graphs), 300)):
        code = canonical_form(g).code
        for p in itertools.permutations(range(n)):
            assert canonical_form(permute(g, p)).code == code


def test_canonical_equality_iff_isomorphic_n4():
    rng = random.Random(4)
    graphs = list(all_graphs(4))
    for _ in range(400):
        g, h = rng.choice(graphs), rng.choice(graphs)
        if rng.random() < 0.5:
            h = permute(g, rng.sample(range(4), 4))
        assert are_isomorphic(g, h) == oracles.isomorphic_by_permutation(g, h)


@given(digraphs(n_min=1, n_max=5), st.integers(0, 2**32 - 1))
def test_isomorphism_witness(g, seed):
    rnd = random.Random(seed)
    p = list(range(g.n))
    rnd.shuffle(p)
    h = permute(g, p)
    phi = isomorphism(g, h)
    assert phi is not None and permute(g, phi) == h


# -- enumeration -------------------------------------------------------------------

@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 16), (4, 218)])
def test_enumeration_counts(n, count):
    graphs = enumerate_nonisomorphic(n)
    assert len(graphs) == count
    assert len({canonical_form(g).code for g in graphs}) == count


def test_enumeration_n3_matches_permutation_oracle():
    reps: list[Digraph] = []
    for g in all_graphs(3):
        if not any(oracles.isomorphic_by_permutation(g, r) for r in reps):
            reps.append(g)
    assert len(reps) == 16
    listed = enumerate_nonisomorphic(3)
    assert {canonical_form(g).code for g in reps} == {canonical_form(g).code for g in listed}


def test_enumeration_is_sorted_and_deterministic():
    a = enumerate_nonisomorphic(4)
    assert a == enumerate_nonisomorphic(4)
    codes = [to_code(g) for g in a]
    assert codes == sorted(codes)
    assert all(canonical_form(g).code == to_code(g) for g in a)


def test_enumeration_range():
    with pytest.raises(ValueError):
        enumerate_nonisomorphic(6)


def test_five_vertex_forms_distinct(classes5):
    assert len(classes5) == 9608
    assert len({canonical_form(g).code for g in classes5}) == 9608


def test_table_subcounts_n4():
    # cross-check: 30 non-empty acyclic classes, 10 non-empty perfect ones, plus the empty graph
    from indexcoding.catalog.survey import is_perfect_symmetric

    graphs = [g for g in enumerate_nonisomorphic(4) if g.arc_count]
    assert sum(is_acyclic(g) for g in graphs) == 30
    assert sum(is_perfect_symmetric(g) for g in graphs) == 10


# -- text format -------------------------------------------------------------------

def test_edge_list_round_trip():
    graphs = [G_A, Digraph.empty(3), Digraph.directed_cycle(4)]
    text = "\n".join(format_edge_list(g) for g in graphs)
    assert parse_edge_lists(text) == graphs


@pytest.mark.parametrize("bad", ["n=3\n1->1", "n=3\n1->2,1->2", "n=3\n1->4", "3\n1->2", "n=2\n1-2"])
def test_edge_list_rejects(bad):
    with pytest.raises(ValueError):
        parse_edge_lists(bad)


def test_mask_helpers():
    assert mask_of([0, 2]) == 0b101
