from fractions import Fraction

import pytest

from oneplanar.bounds import (
    certify_matching_bound,
    charge_verify,
    charging_run,
    check_cw_degree_bound,
    check_degree_bound,
    check_deficiency_mindeg5,
    check_deficiency_mindeg34,
    check_min_odd_component_size,
    degree_classes,
    reduce_components,
    write_ledger,
)
from oneplanar.embedding import (
    add_crossed_edge,
    drawing_from_faces,
    insert_vertex_in_face,
    faces,
)
from oneplanar.errors import (
    DegreeTooLow,
    EmptyT,
    NoProvenance,
    NotIndependent,
    STooSmall,
)
from oneplanar.generators import (
    family_delta3,
    family_delta4,
    family_delta5,
    random_oneplanar,
)
from oneplanar.graph import build_graph, odd_components

from conftest import cube_drawing, greedy_independent_t, make_k


def hexagon_center_all_crossed():
    """Hexagon with a center vertex whose three spokes are all crossed."""
    d = drawing_from_faces(6, [[0, 1, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0]])
    d = insert_vertex_in_face(d, faces(d)[0], [0, 2, 4])
    d = add_crossed_edge(d, 1, 5, (0, 6))
    d = add_crossed_edge(d, 1, 3, (2, 6))
    d = add_crossed_edge(d, 3, 5, (4, 6))
    return d


DELTA3_T = frozenset(range(4, 16))


# --- degree-class bounds ------------------------------------------------


def test_independent_set_enumerator_is_exhaustive():
    # cross-check the sweep enumerator against a plain subset filter
    from itertools import combinations

    from conftest import independent_sets_with_min_degree, random_graph
    from oneplanar.graph import is_independent

    for seed in range(30):
        g = random_graph(seed, max_n=8)
        eligible = [v for v in range(g.n) if g.degree(v) >= 3]
        brute = set()
        for r in range(1, len(eligible) + 1):
            for combo in combinations(eligible, r):
                if is_independent(g, combo):
                    brute.add(frozenset(combo))
        fast = {frozenset(t) for t in independent_sets_with_min_degree(g)}
        assert fast == brute


def test_degree_bound_tight_on_delta3():
    chk = check_degree_bound(family_delta3(4).drawing, DELTA3_T)
    assert (chk.lhs, chk.rhs, chk.holds) == (24, 24, True)
    assert chk.tight


def test_degree_bound_k33():
    from test_embedding import k33_one_crossing

    chk = check_degree_bound(k33_one_crossing(), {0, 1, 2})
    assert (chk.lhs, chk.rhs, chk.holds) == (6, 12, True)


def test_degree_bound_preconditions():
    cube = cube_drawing()
    with pytest.raises(EmptyT):
        check_degree_bound(cube, set())
    with pytest.raises(NotIndependent):
        check_degree_bound(cube, {0, 1})
    c4 = drawing_from_faces(4, [[0, 1, 2, 3], [3, 2, 1, 0]])
    with pytest.raises(DegreeTooLow):
        check_degree_bound(c4, {0})


def test_cw_bound_tight_on_cube():
    chk = check_cw_degree_bound(cube_drawing(), {0, 3, 5, 6})
    assert (chk.lhs, chk.rhs, chk.holds) == (24, 24, True)
    assert chk.tight


def test_cw_bound_all_crossed_vertex_contributes_two():
    d = hexagon_center_all_crossed()
    classes = degree_classes(d, {6})
    assert classes.by_cw_degree == {3: 1}
    chk = check_cw_degree_bound(d, {6})
    assert chk.lhs == 2
    assert chk.holds


def test_cw_bound_on_delta3():
    chk = check_cw_degree_bound(family_delta3(4).drawing, DELTA3_T)
    assert chk.holds
    # every inserted vertex has cw-degree 4 in the canonical pattern
    assert degree_classes(family_delta3(4).drawing, DELTA3_T).by_cw_degree == {4: 12}


# --- component reduction -------------------------------------------------


def test_reduce_drops_even_components():
    g = build_graph(5, [(0, 1), (2, 3)])
    g2, remap = reduce_components(g, {4}, 3)
    assert g2.n == 1 and g2.m == 0
    assert remap == {4: 0}


def test_reduce_keeps_delta3_singletons():
    inst = family_delta3(4)
    g2, remap = reduce_components(inst.graph, inst.witness, 3)
    assert g2.n == 16
    assert g2.m == inst.graph.m - 6  # exactly the K4 witness edges dropped
    assert len(remap) == 16


def test_reduce_threshold_five_keeps_triples():
    g = build_graph(4, [(0, 1), (1, 2), (0, 3)])
    kept, _ = reduce_components(g, {3}, 5)
    assert kept.n == 4
    dropped, _ = reduce_components(g, {3}, 3)
    assert dropped.n == 1


def test_reduce_accounting():
    for seed in range(25):
        d = random_oneplanar(5 + seed % 4, seed % 3, seed)
        g = d.graph()
        s = frozenset(v for v in range(g.n) if v % 3 == 0)
        for threshold in (3, 5):
            count_before, comps = odd_components(g, s)
            removed_odd = sum(
                1 for c in comps if len(c) % 2 == 1 and len(c) >= threshold
            )
            g2, remap = reduce_components(g, s, threshold)
            s2 = {remap[v] for v in s}
            count_after, _ = odd_components(g2, s2)
            assert count_before == count_after + removed_odd


# --- charging engine ------------------------------------------------------


@pytest.mark.parametrize("seed", [None, 11, 12, 13, 14, 15])
def test_charging_delta3_all_orders(seed):
    inst = family_delta3(4)
    ledger = charging_run(inst.drawing, inst.witness, DELTA3_T, order_seed=seed)
    assert ledger.totals[0] <= ledger.totals[1] == 168
    report = charge_verify(ledger)
    assert report.ok, report.violations


def test_charging_preconditions():
    k4 = drawing_from_faces(4, [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
    with pytest.raises(STooSmall):
        charging_run(k4, {0, 1}, {2, 3})
    c4 = drawing_from_faces(4, [[0, 1, 2, 3], [3, 2, 1, 0]])
    with pytest.raises(DegreeTooLow):
        charging_run(c4, {0, 1, 2}, {3})


def test_charging_case_two_vertices_get_exactly_fourteen():
    # degree-3 T-vertices with one uncrossed leg end up with charge
    # 6 + 3 + 3 + 2, the last through an auxiliary edge
    inst = family_delta3(4)
    ledger = charging_run(inst.drawing, inst.witness, DELTA3_T)
    crossed = ledger.gamma_prime.crossed_eids()
    vc = dict(ledger.vertex_charge)
    aux_neighbors = {t for _, attach in ledger.delta_attach for t in attach}
    found = 0
    for tv in sorted(ledger.t):
        incident = [
            eid for eid, (u, v) in enumerate(ledger.gamma_prime.edges) if tv in (u, v)
        ]
        uncrossed = [e for e in incident if e not in crossed]
        if len(incident) == 3 and len(uncrossed) == 1:
            found += 1
            assert vc[tv] == 14
            assert tv in aux_neighbors
    assert found == 12


def test_charging_planar_bipartite_case_one():
    # all legs uncrossed: every c(t) >= 3 deg(t) + 6
    cube = cube_drawing()
    t = frozenset({0, 3, 5, 6})
    ledger = charging_run(cube, frozenset(range(8)) - t, t)
    g = ledger.base.graph()
    for tv, c in ledger.vertex_charge:
        assert c >= 3 * g.degree(tv) + 6
    assert charge_verify(ledger).ok


def test_charging_aux_edges_are_triples():
    inst = family_delta3(4)
    ledger = charging_run(inst.drawing, inst.witness, DELTA3_T)
    assert len(ledger.delta_edges) == 3 * len(ledger.delta_vertices)
    assert len(ledger.delta_vertices) == 4


def test_charging_survives_step0_disconnection():
    # hexagon-with-center: deleting S-S edges uncrosses the spokes and
    # leaves degree-0 S vertices; the run must still audit cleanly
    d = hexagon_center_all_crossed()
    ledger = charging_run(d, frozenset(range(6)), frozenset({6}))
    assert charge_verify(ledger).ok
    assert not ledger.base.crossed_eids()


def test_ledger_dump_shape():
    inst = family_delta3(4)
    ledger = charging_run(inst.drawing, inst.witness, DELTA3_T)
    text = write_ledger(ledger)
    lines = text.strip().split("\n")
    assert lines[0] == "ledger"
    assert lines[-1] == f"total {ledger.totals[0]} {ledger.totals[1]}"
    assert sum(1 for ln in lines if ln.startswith("deltav ")) == 4
    assert sum(1 for ln in lines if ln.startswith("ct ")) == 12


def test_charging_on_corpus_sample():
    for seed in (0, 7, 23, 41, 77, 123):
        d = random_oneplanar(4 + seed % 5, seed % 3, seed)
        g = d.graph()
        t = greedy_independent_t(g)
        s = frozenset(range(g.n)) - t
        if not t or len(s) < 3:
            continue
        for order in (None, 5):
            report = charge_verify(charging_run(d, s, t, order_seed=order))
            assert report.ok, report.violations


def test_charging_holds_for_every_admissible_t():
    # T only needs independence and degree >= 3; non-maximal sets included
    from conftest import independent_sets_with_min_degree

    for seed in (2, 9, 31):
        d = random_oneplanar(4 + seed % 4, seed % 3, seed)
        g = d.graph()
        for t in independent_sets_with_min_degree(g):
            t = frozenset(t)
            s = frozenset(range(g.n)) - t
            if len(s) < 3:
                continue
            report = charge_verify(charging_run(d, s, t))
            assert report.ok, (seed, sorted(t), report.violations)


# --- deficiency bounds ----------------------------------------------------


def test_deficiency_bound_delta3_tight():
    inst = family_delta3(4)
    chk = check_deficiency_mindeg34(inst.graph, inst.witness, 3)
    assert (chk.lhs, chk.rhs) == (8, Fraction(56, 7))
    assert chk.holds and chk.tight


def test_deficiency_bound_delta4_tight():
    inst = family_delta4(8)
    chk = check_deficiency_mindeg34(inst.graph, inst.witness, 4)
    assert (chk.lhs, chk.rhs) == (4, 4)
    assert chk.holds and chk.tight


def test_deficiency_bound_requires_two_vertices():
    with pytest.raises(STooSmall):
        check_deficiency_mindeg34(family_delta3(4).graph, {0}, 3)


def test_deficiency_bound_degree_gate():
    with pytest.raises(DegreeTooLow):
        check_deficiency_mindeg34(build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), {0, 1}, 3)


def test_deficiency_mindeg5_tight():
    chk = check_deficiency_mindeg5(family_delta5(4).graph, {0})
    assert (chk.lhs, chk.rhs) == (3, 3)
    assert chk.tight
    chk6 = check_deficiency_mindeg5(family_delta5(6).graph, {0})
    assert (chk6.lhs, chk6.rhs) == (5, 5)


def test_deficiency_mindeg5_single_vertex_of_k6():
    # removing one vertex of K6 leaves one odd K5 component: lhs = 0 = rhs
    chk = check_deficiency_mindeg5(make_k(6), {0})
    assert (chk.lhs, chk.rhs, chk.holds) == (0, 0, True)
    with pytest.raises(STooSmall):
        check_deficiency_mindeg5(make_k(6), set())


def test_min_odd_component_size():
    assert check_min_odd_component_size(make_k(6), set(), 5)
    assert check_min_odd_component_size(family_delta5(4).graph, {0}, 5)
    inst = family_delta3(4)
    assert check_min_odd_component_size(inst.graph, inst.witness, 3)
    with pytest.raises(DegreeTooLow):
        check_min_odd_component_size(build_graph(2, [(0, 1)]), set(), 3)


def test_min_odd_component_size_nonvacuous():
    # two K6 blocks sharing the hub: S = {hub} forces X = 5 and the two
    # components have exactly five vertices each
    inst = family_delta5(2)
    assert check_min_odd_component_size(inst.graph, {0}, 5)
    _, comps = odd_components(inst.graph, {0})
    assert sorted(len(c) for c in comps) == [5, 5]


# --- matching certifier ---------------------------------------------------


def test_certify_delta3_tight():
    inst = family_delta3(4)
    rep = certify_matching_bound(inst.graph, 3, inst)
    assert rep.applicable and rep.holds and rep.tight
    assert rep.matching_size == 4 and rep.bound == 4


def test_certify_delta5_tight():
    inst = family_delta5(4)
    rep = certify_matching_bound(inst.graph, 5, inst)
    assert rep.holds and rep.tight
    assert rep.matching_size == 9 and rep.bound == Fraction(45, 5)


def test_certify_not_applicable_below_threshold():
    inst = family_delta4(4)
    rep = certify_matching_bound(inst.graph, 4, inst)
    assert not rep.applicable
    assert rep.threshold == 20
    assert rep.holds is None


def test_certify_requires_provenance():
    inst = family_delta3(4)
    with pytest.raises(NoProvenance):
        certify_matching_bound(inst.graph, 3, None)
    with pytest.raises(NoProvenance):
        certify_matching_bound(inst.graph, 3, family_delta4(4).drawing)


def test_certify_degree_gate():
    with pytest.raises(DegreeTooLow):
        certify_matching_bound(family_delta3(4).graph, 4, family_delta3(4))


def test_certify_nontight_instance():
    # a near-perfect-matching graph comfortably beats the weaker bound
    inst = family_delta5(2)  # n = 11, matching 5
    rep = certify_matching_bound(inst.graph, 3, inst)
    assert rep.applicable and rep.holds and not rep.tight
    assert rep.matching_size == 5
    assert rep.bound == Fraction(23, 7)
