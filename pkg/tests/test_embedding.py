from fractions import Fraction

import pytest

from oneplanar.embedding import (
    Dart,
    DummyV,
    OnePlanarDrawing,
    RealV,
    Segment,
    add_chord_in_face,
    add_crossed_edge,
    bigons,
    check_bipartite_edge_budget,
    crossing_partition,
    crossing_weighted_degree,
    delete_edges,
    drawing_from_faces,
    faces,
    insert_vertex_in_face,
    parse_drawing,
    validate,
    wedge_at_vertex,
    write_drawing,
)
from oneplanar.errors import (
    BadAttachment,
    BadVertex,
    InvalidDrawing,
    NotBipartite,
    NotOnFace,
    ParseError,
    WouldCreateBigon,
)
from oneplanar.generators import family_delta3, k6_drawing, random_oneplanar

from conftest import c4_drawing, corpus_params, k4_drawing


def k33_one_crossing():
    """K3,3 with sides {0,1,2} and {3,4,5}: planar K3,3 - (2,5), then (2,5)
    reinserted across edge (0,3)."""
    d = drawing_from_faces(
        6, [[0, 5, 1, 3], [0, 3, 2, 4], [4, 2, 3, 1], [1, 5, 0, 4]]
    )
    return add_crossed_edge(d, 2, 5, (0, 3))


def doubled_edge_drawing():
    """Triangle-ish multigraph: vertices 0,1,2; edge (0,1) doubled, plus
    (0,2) and (1,2).  The two parallel arcs bound one lens face."""
    segs = (
        Segment((0, 1), 0, 0),  # s0: first copy
        Segment((0, 1), 1, 0),  # s1: second copy
        Segment((0, 2), 2, 0),  # s2
        Segment((1, 2), 3, 0),  # s3
    )
    rotations = (
        (Dart(1, 0), Dart(0, 0), Dart(2, 0)),
        (Dart(0, 1), Dart(1, 1), Dart(3, 0)),
        (Dart(3, 1), Dart(2, 1)),
    )
    return OnePlanarDrawing(
        n_real=3,
        edges=((0, 1), (0, 1), (0, 2), (1, 2)),
        pvertices=(RealV(0), RealV(1), RealV(2)),
        segments=segs,
        rotations=rotations,
        multi_allowed=True,
    )


def test_c4_is_valid_with_two_faces():
    d = c4_drawing()
    assert validate(d).valid
    assert len(faces(d)) == 2


def test_k4_has_four_triangular_faces():
    fs = faces(k4_drawing())
    assert len(fs) == 4
    assert all(len(f) == 3 for f in fs)


def test_dummy_degree_violation_is_reported():
    # a dummy with only 3 incident segment-ends
    d = OnePlanarDrawing(
        n_real=3,
        edges=((0, 1), (0, 2)),
        pvertices=(RealV(0), RealV(1), RealV(2), DummyV(0, 1)),
        segments=(
            Segment((0, 3), 0, 0),
            Segment((3, 1), 0, 1),
            Segment((0, 2), 1, 0),
        ),
        rotations=(
            (Dart(0, 0), Dart(2, 0)),
            (Dart(1, 1),),
            (Dart(2, 1),),
            (Dart(0, 1), Dart(1, 0)),
        ),
    )
    report = validate(d)
    assert not report.valid
    assert any("degree != 4" in v for v in report.violations)


def test_k6_canonical_drawing():
    d = k6_drawing()
    assert validate(d).valid
    assert d.n_p == 9 and d.m_p == 21
    assert len(faces(d)) == 14
    crossed, uncrossed = crossing_partition(d)
    assert len(crossed) == 6 and len(uncrossed) == 9


def test_bigons_empty_on_simple_drawings():
    assert bigons(c4_drawing()) == []
    assert bigons(k6_drawing()) == []


def test_doubled_edge_has_one_bigon():
    d = doubled_edge_drawing()
    found = bigons(d)
    assert len(found) == 1
    # and the validator rejects it
    assert any("bigon" in v for v in validate(d).violations)


def test_crossed_parallel_copy_is_not_a_bigon():
    d = doubled_edge_drawing()
    # crossing one copy of (0,1) with a new edge removes the lens
    d2 = add_crossed_edge(d, 2, 0, (0, 1))
    assert bigons(d2) == []
    assert validate(d2).valid


def test_crossing_partition_counts_dummies():
    d = random_oneplanar(8, 2, 11)
    crossed, uncrossed = crossing_partition(d)
    n_dummies = sum(1 for pv in d.pvertices if isinstance(pv, DummyV))
    assert len(crossed) == 2 * n_dummies


def test_single_crossing_pair_drawing():
    # two edges on four vertices crossing once: everything is crossed
    d = OnePlanarDrawing(
        n_real=4,
        edges=((0, 2), (1, 3)),
        pvertices=(RealV(0), RealV(1), RealV(2), RealV(3), DummyV(0, 1)),
        segments=(
            Segment((0, 4), 0, 0),
            Segment((4, 2), 0, 1),
            Segment((1, 4), 1, 0),
            Segment((4, 3), 1, 1),
        ),
        rotations=(
            (Dart(0, 0),),
            (Dart(2, 0),),
            (Dart(1, 1),),
            (Dart(3, 1),),
            (Dart(0, 1), Dart(2, 1), Dart(1, 0), Dart(3, 0)),
        ),
    )
    assert validate(d).valid
    crossed, uncrossed = crossing_partition(d)
    assert (len(crossed), len(uncrossed)) == (2, 0)
    assert len(faces(d)) == 1


def test_edge_budget_c4_tight():
    lhs, rhs, holds = check_bipartite_edge_budget(c4_drawing(), ({0, 2}, {1, 3}))
    assert (lhs, rhs, holds) == (Fraction(4), 4, True)


def test_edge_budget_k33_tight():
    d = k33_one_crossing()
    assert validate(d).valid
    lhs, rhs, holds = check_bipartite_edge_budget(d, ({0, 1, 2}, {3, 4, 5}))
    assert (lhs, rhs, holds) == (Fraction(8), 8, True)


def test_edge_budget_rejects_non_bipartite():
    tri = drawing_from_faces(3, [[0, 1, 2], [2, 1, 0]])
    with pytest.raises(NotBipartite):
        check_bipartite_edge_budget(tri, ({0, 1}, {2}))


def test_crossing_weighted_degree():
    d = k33_one_crossing()
    # vertex 1: edges (1,3),(1,4),(1,5) all uncrossed
    assert crossing_weighted_degree(d, 1) == 6
    # vertex 2: (2,3),(2,4) uncrossed, (2,5) crossed
    assert crossing_weighted_degree(d, 2) == 5
    # vertex 5: (5,0),(5,1) uncrossed, (5,2) crossed
    assert crossing_weighted_degree(d, 5) == 5
    with pytest.raises(BadVertex):
        crossing_weighted_degree(d, 17)


def test_cw_degree_all_crossed():
    inst = family_delta3(4)
    d = inst.drawing
    # each inserted vertex has one uncrossed and two crossed legs
    for v in range(4, 16):
        assert crossing_weighted_degree(d, v) == 4


def test_add_chord_splits_face():
    d = c4_drawing()
    f = faces(d)[0]
    d2 = add_chord_in_face(d, f, 0, 2)
    assert validate(d2).valid
    assert len(faces(d2)) == 3


def test_add_chord_rejects_bigon():
    d = c4_drawing()
    f = faces(d)[0]
    with pytest.raises(WouldCreateBigon):
        add_chord_in_face(d, f, 0, 1)


def test_add_chord_rejects_corner_not_on_face():
    d = k4_drawing()
    f = faces(d)[0]
    missing = (set(range(4)) - set(f.real_corners(d))).pop()
    present = f.real_corners(d)[0]
    with pytest.raises(NotOnFace):
        add_chord_in_face(d, f, present, missing)


def test_add_chord_between_dummy_separated_corners():
    # in the filled triangle the three inserted vertices share a face on
    # which consecutive real corners are separated by dummy corners
    inst = family_delta3(4)
    d = inst.drawing
    target = None
    for f in faces(d):
        reals = f.real_corners(d)
        if len(f.darts) > len(reals) >= 2:
            inserted = [v for v in reals if v >= 4]
            if len(set(inserted)) >= 2:
                target = (f, sorted(set(inserted))[:2])
                break
    assert target is not None
    f, (u, v) = target
    d2 = add_chord_in_face(d, f, u, v)
    assert validate(d2).valid
    assert len(faces(d2)) == len(faces(d)) + 1


def test_insert_vertex_in_face():
    d = c4_drawing()
    f = faces(d)[0]
    d2 = insert_vertex_in_face(d, f, [0, 1, 2])
    assert validate(d2).valid
    assert len(faces(d2)) == len(faces(d)) + 2
    assert d2.n_real == 5
    assert (0, 4) in d2.edges and (1, 4) in d2.edges and (2, 4) in d2.edges


def test_insert_vertex_hexagonal_face_alternating():
    hexagon = drawing_from_faces(6, [[0, 1, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0]])
    f = faces(hexagon)[0]
    d2 = insert_vertex_in_face(hexagon, f, [0, 2, 4])
    assert validate(d2).valid
    assert len(faces(d2)) == 4  # three new faces replace one


def test_insert_vertex_rejects_repeats():
    d = c4_drawing()
    f = faces(d)[0]
    with pytest.raises(BadAttachment):
        insert_vertex_in_face(d, f, [0, 1, 1])
    with pytest.raises(BadAttachment):
        insert_vertex_in_face(d, f, [0, 1])


def test_faces_partition_every_dart():
    d = random_oneplanar(8, 2, 3)
    fs = faces(d)
    seen = [x for f in fs for x in f.darts]
    assert len(seen) == 2 * d.m_p
    assert len(set(seen)) == len(seen)


def test_faces_reject_disconnected():
    tri = drawing_from_faces(3, [[0, 1, 2], [2, 1, 0]])
    two = OnePlanarDrawing(
        n_real=6,
        edges=tri.edges + tuple((u + 3, v + 3) for u, v in tri.edges),
        pvertices=tri.pvertices + tuple(RealV(pv.vid + 3) for pv in tri.pvertices),
        segments=tri.segments
        + tuple(
            Segment((a + 3, b + 3), eid + 3, 0) for (a, b), eid, _ in tri.segments
        ),
        rotations=tri.rotations
        + tuple(tuple(Dart(x.sid + 3, x.end) for x in rot) for rot in tri.rotations),
    )
    assert validate(two).valid  # per-component Euler holds
    with pytest.raises(InvalidDrawing):
        faces(two)


def test_delete_edges_restores_partner():
    d = c4_drawing()
    f = faces(d)[0]
    d = add_chord_in_face(d, f, 0, 2)
    d = add_crossed_edge(d, 1, 3, (0, 2))
    eid = d.edges.index((1, 3))
    d2, remap = delete_edges(d, [eid])
    assert validate(d2).valid
    assert crossing_partition(d2)[0] == set()
    assert len(d2.edges) == len(d.edges) - 1
    assert eid not in remap


def test_wedge_merges_one_face():
    tri = drawing_from_faces(3, [[0, 1, 2], [2, 1, 0]])
    w = wedge_at_vertex(tri, tri, 0, 0)
    assert validate(w).valid
    assert w.n_real == 5
    assert len(faces(w)) == 3


def test_surgery_chain_keeps_euler():
    d = c4_drawing()
    f = faces(d)[0]
    d = insert_vertex_in_face(d, f, [0, 1, 2])
    for f in faces(d):
        if len(set(f.real_corners(d))) >= 2:
            u, v = sorted(set(f.real_corners(d)))[:2]
            try:
                d = add_chord_in_face(d, f, u, v)
            except Exception:
                continue
            break
    assert validate(d).valid


@pytest.mark.parametrize("n,x,seed", corpus_params()[:40])
def test_corpus_drawings_are_valid(n, x, seed):
    d = random_oneplanar(n, x, seed)
    assert validate(d).valid
    crossed, _ = crossing_partition(d)
    assert len(crossed) == 2 * x


def test_random_surgery_chains_stay_valid():
    # alternate chord additions and vertex insertions wherever legal;
    # validity and the face-count deltas must hold at every step
    from oneplanar.errors import OnePlanarError

    for seed in (1, 5, 17):
        d = random_oneplanar(6, 1, seed)
        for step in range(6):
            fs = faces(d)
            f = fs[(seed + step) % len(fs)]
            reals = sorted(set(f.real_corners(d)))
            before = len(fs)
            if step % 2 == 0 and len(reals) >= 3:
                d2 = insert_vertex_in_face(d, f, reals[:3])
                assert len(faces(d2)) == before + 2
            elif len(reals) >= 2:
                try:
                    d2 = add_chord_in_face(d, f, reals[0], reals[1])
                except OnePlanarError:
                    continue
                assert len(faces(d2)) == before + 1
            else:
                continue
            assert validate(d2).valid
            d = d2


def test_1pg_round_trip_byte_exact():
    for d in (c4_drawing(), k6_drawing(), random_oneplanar(9, 2, 5)):
        text = write_drawing(d)
        d2 = parse_drawing(text)
        assert write_drawing(d2) == text
        assert d2.edges == d.edges and d2.n_real == d.n_real


def test_1pg_parse_rejects_garbage():
    for text in ("", "1pg a b c\n", "1pg 2 0 1\npv 0 real 0\n"):
        with pytest.raises(ParseError):
            parse_drawing(text)
