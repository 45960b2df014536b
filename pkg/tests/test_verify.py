from itertools import combinations

import pytest

from sqchoose.construction import Q, build_g, build_iterated, part_sets
from sqchoose.errors import ContractViolation, DomainError
from sqchoose.graph import (PartitionCertificate, induced_subgraph, is_complete_multipartite,
                            square)
from sqchoose.verify import (
    VerificationFailure, clique_family, gap_report, kierstead_value, recheck_witness, run_claims,
    verify_independence, verify_lemma_nw, verify_main_multipartite, vetrik_bound,
)


@pytest.fixture(scope="module")
def g3():
    return build_g(3)


@pytest.mark.parametrize("n", [3, 5])
def test_lemma_nw_passes(n):
    rep = verify_lemma_nw(build_g(n))
    assert rep.passed
    assert rep.stats["property_1"] == n ** 3 * (n - 1)  # layers x |Q| x rows


def test_lemma_nw_detects_removed_edge(g3):
    w = g3.index(Q(1, 1))
    v = g3.graph.neighbors(w)[0]
    bad = g3.with_graph(g3.graph.without_edge(w, v))
    rep = verify_lemma_nw(bad)
    assert not rep.passed
    assert rep.witness["property"] == 1 and rep.witness["w"] == w
    assert recheck_witness(bad, rep)
    assert not recheck_witness(g3, rep)


def test_lemma_nw_needs_one_round():
    with pytest.raises(ContractViolation):
        verify_lemma_nw(build_iterated(3, 2))


def test_independence_g_and_twice_duplicated():
    g = build_g(3)
    rep = verify_independence(square(g.graph), part_sets(g))
    assert rep.passed and rep.stats["parts"] == 14
    gg = build_iterated(3, 2)
    rep = verify_independence(square(gg.graph), part_sets(gg))
    assert rep.passed and rep.stats["parts"] == 34


def test_independence_merged_hub_families_fail(g3):
    gsq = square(g3.graph)
    q1, q2 = g3.vertices_where("Q", i=1), g3.vertices_where("Q", i=2)
    # brute force: some w in Q1, w' in Q2 share a neighbor
    close = [(a, b) for a in q1 for b in q2 if set(g3.graph.neighbors(a)) & set(g3.graph.neighbors(b))]
    assert close
    parts = part_sets(g3).parts
    merged = [p for p in parts if not (p & (set(q1) | set(q2)))] + [frozenset(q1) | frozenset(q2)]
    rep = verify_independence(gsq, PartitionCertificate(tuple(merged)))
    assert not rep.passed
    assert tuple(rep.witness["pair"]) in {tuple(sorted(p)) for p in close}


def test_independence_contract(g3):
    with pytest.raises(ContractViolation):
        verify_independence(square(g3.graph), PartitionCertificate((frozenset({0}),)))


def test_clique_family_n3():
    g = build_g(3)
    fam = clique_family(g, 1)
    assert len(fam.cliques) == 9 and all(len(c) == 3 for c in fam.cliques)
    assert fam.covered_edges == 27
    sub, _ = induced_subgraph(square(g.graph), g.layer(1))
    assert sub.edge_count == fam.covered_edges


def test_clique_family_n5_layer2():
    fam = clique_family(build_g(5), 2)
    assert len(fam.cliques) == 25 and all(len(c) == 5 for c in fam.cliques)
    for a, b in combinations(fam.cliques, 2):
        assert len(a & b) <= 1


def test_clique_family_detects_missing_s_edge(g3):
    s = g3.vertices_where("S")[0]
    v = g3.graph.neighbors(s)[0]
    bad = g3.with_graph(g3.graph.without_edge(s, v))
    with pytest.raises(VerificationFailure) as info:
        clique_family(bad, g3.labels[v].copy_path[0])
    assert recheck_witness(bad, info.value.report)


@pytest.mark.parametrize("n,t", [(3, 1), (3, 2), (5, 1), (7, 1)])
def test_main_multipartite(n, t):
    lg = build_iterated(n, t)
    rep = verify_main_multipartite(lg)
    assert rep.passed
    assert rep.stats["parts"] == n ** (t + 1)
    # independent route through the generic partition check
    sub, index = induced_subgraph(square(lg.graph), lg.p_vertices())
    parts = {}
    for v in lg.p_vertices():
        lab = lg.labels[v]
        parts.setdefault((lab.copy_path, lab.k), set()).add(index[v])
    assert is_complete_multipartite(sub, PartitionCertificate(tuple(parts.values())))


def test_main_multipartite_detects_missing_round_hub_edge(g3):
    u = g3.vertices_where("U")[0]
    v = g3.graph.neighbors(u)[0]
    bad = g3.with_graph(g3.graph.without_edge(u, v))
    rep = verify_main_multipartite(bad)
    assert not rep.passed and rep.witness["kind"] == "missing-cross-edge"
    assert v in rep.witness["pair"]
    assert recheck_witness(bad, rep)


def test_run_claims_all_pass_with_traceability_tag(g3):
    reports = run_claims(g3)
    assert [r.claim_id for r in reports] == ["lemma-Nw", "lemma-independent", "lemma-step1",
                                             "lemma-st-adjacent", "thm-main-bipartite"]
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("n,r,value", [(3, 9, 10), (3, 27, 34), (7, 49, 78)])
def test_vetrik_bound(n, r, value):
    assert vetrik_bound(n, r) == value == (n - 1) * ((2 * r - 1) // n)


def test_vetrik_domain():
    with pytest.raises(DomainError):
        vetrik_bound(1, 5)
    with pytest.raises(DomainError):
        vetrik_bound(3, 1)


@pytest.mark.parametrize("r,value", [(27, 36), (1, 1), (2, 3), (9, 12)])
def test_kierstead_value(r, value):
    assert kierstead_value(r) == value


def test_gap_report_n7():
    rep = gap_report(7, 1)
    assert (rep.chi_upper, rep.vetrik_strict, rep.chi_l_lower, rep.gap_lower) == (62, 78, 79, 17)
    assert rep.reference_gap_bound == 10 and rep.exceeds_reference_bound
    assert rep.certified and all(c.passed for c in rep.certificates)


def test_gap_report_n3():
    rep = gap_report(3, 1)
    assert rep.chi_upper == 14 and rep.vetrik_strict == 10
    assert not rep.certified
    rep2 = gap_report(3, 2)
    assert (rep2.chi_upper, rep2.kierstead, rep2.chi_l_lower) == (34, 36, 36)
    assert rep2.certified


def test_gap_report_formula_only():
    rep = gap_report(3, 3)
    assert rep.formula_only and not rep.certified and rep.chi_upper == 81 + 4 * 2 + 1


@pytest.mark.parametrize("n", [7, 11, 13])
def test_gap_certification_rule(n):
    rep = gap_report(n, 1)
    v = vetrik_bound(n, n * n)
    assert rep.certified == (v + 1 >= n * n + 2 * n)
    assert rep.certified and v >= n * n + 2 * n


def test_gap_report_n5_certifies_by_the_rule():
    # 4 * floor(49 / 5) = 36 strict, so chi_l >= 37 against 34 parts
    rep = gap_report(5, 1)
    assert (rep.chi_upper, rep.vetrik_strict, rep.chi_l_lower) == (34, 36, 37)
    assert rep.certified and rep.reference_gap_bound == -2 and rep.exceeds_reference_bound
