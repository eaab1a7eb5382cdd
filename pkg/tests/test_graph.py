import pytest
from hypothesis import given, strategies as st

from oneplanar.errors import (
    BadVertex,
    DuplicateEdge,
    EmptyGraph,
    InvalidEdge,
    ParseError,
)
from oneplanar.graph import (
    build_graph,
    is_independent,
    min_degree,
    odd_components,
    parse_graph,
    write_graph,
)
from oneplanar.generators import family_delta3, family_delta4

from conftest import make_cycle, make_k, make_path, random_graph


def test_build_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert [g.degree(v) for v in range(3)] == [1, 2, 1]


def test_build_rejects_loop():
    with pytest.raises(InvalidEdge):
        build_graph(2, [(0, 0)])


def test_build_rejects_duplicate_in_simple_mode():
    with pytest.raises(DuplicateEdge):
        build_graph(2, [(0, 1), (0, 1)])
    g = build_graph(2, [(0, 1), (1, 0)], simple=False)
    assert g.m == 2


def test_build_rejects_out_of_range():
    with pytest.raises(BadVertex):
        build_graph(2, [(0, 2)])


def test_odd_components_p5_middle():
    count, comps = odd_components(make_path(5), {2})
    assert count == 0
    assert [len(c) for c in comps] == [2, 2]


def test_odd_components_k3():
    count, _ = odd_components(make_k(3), set())
    assert count == 1


def test_odd_components_delta4_witness_all_singletons():
    inst = family_delta4(8)
    count, comps = odd_components(inst.graph, inst.witness)
    assert count == 12  # 2(s-2) at s=8
    assert all(len(c) == 1 for c in comps)


def test_odd_components_rejects_bad_vertex():
    with pytest.raises(BadVertex):
        odd_components(make_k(3), {5})


def test_is_independent():
    c4 = make_cycle(4)
    assert is_independent(c4, {0, 2})
    assert not is_independent(make_k(3), {0, 1})


def test_delta3_inserted_vertices_are_independent():
    inst = family_delta3(4)
    assert is_independent(inst.graph, set(range(4, 16)))


def test_min_degree():
    assert min_degree(make_k(6)) == 5
    assert min_degree(make_path(3)) == 1
    assert min_degree(family_delta3(4).graph) == 3
    with pytest.raises(EmptyGraph):
        min_degree(build_graph(0, []))


# --- properties --------------------------------------------------------


@given(st.integers(0, 300), st.sets(st.integers(0, 9)))
def test_components_partition_with_s(seed, raw_s):
    g = random_graph(seed)
    s = {v for v in raw_s if v < g.n}
    count, comps = odd_components(g, s)
    covered = [v for c in comps for v in c]
    assert len(covered) + len(s) == g.n
    assert len(set(covered) | s) == g.n
    assert count == sum(1 for c in comps if len(c) % 2 == 1)


@given(st.integers(0, 300))
def test_odd_count_parity_matches_n(seed):
    g = random_graph(seed)
    count, _ = odd_components(g, set())
    assert count % 2 == g.n % 2


@given(st.integers(0, 300))
def test_single_vertex_always_independent(seed):
    g = random_graph(seed)
    for v in range(g.n):
        assert is_independent(g, {v})


@given(st.integers(0, 300))
def test_edge_list_round_trip(seed):
    g = random_graph(seed)
    text = write_graph(g)
    g2 = parse_graph(text)
    assert g2.n == g.n and g2.edges == g.edges
    assert write_graph(g2) == text


def test_parse_rejects_garbage():
    for text in ("", "graph x y\n", "graph 2 1\nz 0 1\n", "graph 2 2\ne 0 1\n",
                 "graph 2 1\ne 1 0\n", "graph 2 1\ne 0 3\n"):
        with pytest.raises(ParseError):
            parse_graph(text)
