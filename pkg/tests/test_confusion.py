import itertools
import math

import pytest
from hypothesis import given, settings

import oracles
from indexcoding.bounds import shannon_lower_bound
from indexcoding.catalog.reference import G_A, G_B, G_B_BASE
from indexcoding.codes import theorem1_code, verify_decodable
from indexcoding.confusion import (ConfusionError, binary_restricted_length, build_confusion,
                                   chromatic_number, exact_rate, is_proper)
from indexcoding.digraph import Digraph, enumerate_nonisomorphic
from strategies import digraphs, graph_with_subgraph


def confusable_oracle(g, x, y):
    return any(x[j] != y[j] and all(x[k] == y[k] for k in range(g.n) if g.has_arc(j, k))
               for j in range(g.n))


def test_build_examples():
    cg = build_confusion(G_B_BASE, 2, 1)
    assert (cg.vertex_count, cg.edge_count) == (32, 240)
    one = build_confusion(Digraph.empty(1), 2, 1)
    assert (one.vertex_count, one.edge_count) == (2, 1)
    k2 = build_confusion(Digraph.complete(2), 2, 1)
    assert (k2.vertex_count, k2.edge_count) == (4, 4)


@settings(max_examples=60)
@given(digraphs(n_max=3))
def test_edges_match_definition(g):
    for m, t in ((2, 1), (3, 1), (2, 2)):
        if (m ** t) ** g.n > 64:
            continue
        cg = build_confusion(g, m, t)
        for x, y in itertools.combinations(range(cg.vertex_count), 2):
            assert cg.has_edge(x, y) == cg.has_edge(y, x)
            assert cg.has_edge(x, y) == confusable_oracle(g, cg.tuple_of(x), cg.tuple_of(y))


def test_size_limit():
    with pytest.raises(ConfusionError):
        build_confusion(Digraph.empty(5), 4, 2)


def test_chromatic_examples():
    assert chromatic_number(build_confusion(G_B_BASE, 2, 1)).value == 8
    assert chromatic_number(build_confusion(G_A, 2, 1)).value == 7
    assert chromatic_number(build_confusion(G_B, 2, 1)).value == 7
    assert chromatic_number(build_confusion(Digraph.empty(2), 2, 1)).value == 4


def test_colouring_witness():
    cg = build_confusion(G_A, 2, 1)
    res = chromatic_number(cg)
    assert res.exact and is_proper(cg.adj, res.coloring)
    assert len(set(res.coloring)) == res.value


@settings(max_examples=60)
@given(digraphs(n_max=3))
def test_chromatic_matches_plain_backtracking(g):
    cg = build_confusion(g, 2, 1)
    assert chromatic_number(cg).value == oracles.chromatic_networkx_exact(cg.adj)


def test_budget_gives_interval():
    res = chromatic_number(build_confusion(G_B_BASE, 2, 1), budget=5)
    assert not res.exact
    assert res.lower <= 8 <= res.upper
    with pytest.raises(ConfusionError):
        res.value


def test_rates():
    assert exact_rate(G_A, 2, 1) == pytest.approx(math.log2(7))
    assert round(exact_rate(G_A, 2, 1), 4) == 2.8074
    assert binary_restricted_length(G_A) == 3
    assert binary_restricted_length(G_B_BASE) == 3
    assert exact_rate(Digraph.empty(1), 2, 1) == 1


def test_small_graphs_respect_bounds():
    for n in (1, 2, 3):
        for g in enumerate_nonisomorphic(n):
            rate = exact_rate(g, 2, 1)
            assert rate >= float(shannon_lower_bound(g)) - 1e-9
            code = theorem1_code(g)
            assert verify_decodable(g, code, 2)
            assert rate <= code.p + 1e-9


def test_exact_rate_at_alphabet_four():
    # a 2-cycle at t = 2: 16 tuples, an XOR per slot needs 4 codewords
    assert exact_rate(Digraph.complete(2), 2, 2) == pytest.approx(1)


@settings(max_examples=80)
@given(graph_with_subgraph(n_max=3))
def test_chi_monotone_small(pair):
    g, g_minus = pair
    assert chromatic_number(build_confusion(g, 2, 1)).value <= chromatic_number(build_confusion(g_minus, 2, 1)).value


def test_dimacs_export():
    text = build_confusion(Digraph.complete(2), 2, 1).to_dimacs()
    lines = text.splitlines()
    assert lines[1] == "p edge 4 4"
    assert sum(1 for ln in lines if ln.startswith("e ")) == 4
