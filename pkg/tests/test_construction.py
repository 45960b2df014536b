from collections import Counter

import pytest

from sqchoose.construction import (
    LabeledGraph, P, Q, S, U, build_g, build_h, build_iterated, duplicate, duplicate_vertex,
    expected_part_count, part_sets,
)
from sqchoose.errors import ContractViolation, DomainError
from sqchoose.graph import (bipartition, degree_profile, empty_graph,
                            make_graph, star_graph)
from sqchoose.latin import mols_family



def nbr_labels(lg, label):
    return {lg.labels[v] for v in lg.graph.neighbors(lg.index(label))}


def test_h3_counts_and_neighborhood():
    h = build_h(3)
    assert h.graph.vertex_count == 18
    assert nbr_labels(h, Q(1, 2)) == {P((), 1, 2), P((), 2, 3), P((), 3, 1)}
    assert h.graph.edge_count == 27
    assert set(degree_profile(h.graph)) == {3}


def test_g3_counts_and_round_hub_neighborhood():
    g = build_g(3)
    assert g.graph.vertex_count == 42
    assert g.graph.edge_count == 135
    T = lambda l, m: {P((l,), k, m) for k in (1, 2, 3)}
    assert nbr_labels(g, U(1, 1, 2)) == T(1, 2) | T(2, 3) | T(3, 1)
    # the table for w_{2,1}: rows of L_2 give columns 1, 3, 2
    assert nbr_labels(g, Q(2, 1)) == {P((l,), k, m) for l in (1, 2, 3) for k, m in ((1, 1), (2, 3), (3, 2))}


@pytest.mark.parametrize("n", [3, 5, 7])
def test_g_vertex_count(n):
    assert build_g(n).graph.vertex_count == n * (n * n + 2 * n - 1)


def test_iterated_two_rounds():
    lg = build_iterated(3, 2)
    assert lg.graph.vertex_count == 102
    assert degree_profile(lg.graph) == Counter({7: 81, 27: 21})
    calT = lambda c, h: {P((l, c), k, h) for l in (1, 2, 3) for k in (1, 2, 3)}
    assert nbr_labels(lg, U(2, 1, 3)) == calT(1, 3) | calT(2, 1) | calT(3, 2)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_generalized_builder_matches_explicit_ones(n):
    assert build_iterated(n, 1) == build_g(n)
    assert build_iterated(n, 0) == build_h(n)


@pytest.mark.parametrize("n,t", [(3, 0), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)])
def test_role_counts_degree_law_and_bipartite(n, t):
    lg = build_iterated(n, t)
    assert lg.role_counts() == {"P": n ** (t + 2), "Q": n * (n - 1), "U": t * n * (n - 1), "S": n}
    g = lg.graph
    for v in lg.p_vertices():
        assert g.degree(v) == (t + 1) * (n - 1) + 1
    for v in lg.hub_vertices():
        assert g.degree(v) == n ** (t + 1)
    sides = bipartition(g)
    assert {sides[0], sides[1]} == {frozenset(lg.p_vertices()), frozenset(lg.hub_vertices())}


@pytest.mark.parametrize("n", [3, 5, 7])
def test_neighborhood_closed_forms(n):
    lg = build_g(n)
    squares = mols_family(n)
    ns = range(1, n + 1)
    T = lambda l, m: {P((l,), k, m) for k in ns}
    for i, L in enumerate(squares, start=1):
        for j in ns:
            assert nbr_labels(lg, Q(i, j)) == {P((l,), k, L(j, k)) for l in ns for k in ns}
            assert nbr_labels(lg, U(1, i, j)) == set().union(*(T(l, L(j, l)) for l in ns))
    for m in ns:
        assert nbr_labels(lg, S(m)) == set().union(*(T(l, m) for l in ns))


def test_canonical_order():
    lg = build_iterated(3, 2)
    keys = [lab.sort_key() for lab in lg.labels]
    assert keys == sorted(keys)
    assert lg.labels[0] == P((1, 1), 1, 1)
    assert lg.labels[-1] == S(3)


@pytest.mark.parametrize("n,t,count", [(3, 0, 6), (3, 1, 14), (3, 2, 34), (5, 1, 34), (7, 1, 62)])
def test_part_sets_count(n, t, count):
    parts = part_sets(build_iterated(n, t))
    assert len(parts) == count == expected_part_count(n, t)
    parts.check_covers(build_iterated(n, t).graph)


def test_duplicate_star_center():
    g = duplicate(star_graph(3), 0)
    assert g.edge_count == 6
    assert bipartition(g) == (frozenset({0, 4}), frozenset({1, 2, 3}))
    assert sorted(g.neighbors(4)) == [1, 2, 3] and not g.has_edge(0, 4)
    assert degree_profile(g) == Counter({3: 2, 2: 3})


def test_duplicate_isolated_vertex():
    assert duplicate(empty_graph(2), 1) == empty_graph(3)


def test_duplicate_three_neighbors():
    g = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    g2 = duplicate(g, 0, copies=2)
    assert g2.neighbors(4) == g2.neighbors(5) == (1, 2, 3)
    assert not g2.has_edge(4, 5)


def test_duplicate_vertex_on_labeled_graph():
    h = build_h(3)
    v = h.index(P((), 1, 1))
    new = duplicate_vertex(h, v, 1, [P((9,), 1, 1)])
    x = new.index(P((9,), 1, 1))
    assert new.graph.neighbors(x) == h.graph.neighbors(v)
    with pytest.raises(ContractViolation):
        duplicate_vertex(h, h.index(Q(1, 1)), 1, [Q(9, 9)])


def test_builders_reject_non_prime():
    for builder in (build_h, build_g):
        with pytest.raises(DomainError):
            builder(4)
    with pytest.raises(DomainError):
        build_iterated(9, 1)


def test_labeled_json_round_trip():
    lg = build_iterated(3, 2)
    data = lg.to_json()
    assert data["labels"][0] == {"role": "P", "copy_path": [1, 1], "k": 1, "j": 1}
    assert LabeledGraph.from_json(data) == lg
