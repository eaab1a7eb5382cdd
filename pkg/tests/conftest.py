"""Shared fixtures: small named graphs/drawings and the seeded corpora."""

from __future__ import annotations

import pytest

from oneplanar.embedding import OnePlanarDrawing, drawing_from_faces
from oneplanar.graph import Graph, build_graph
from oneplanar.generators import random_oneplanar
from oneplanar.rng import SplitMix64

CORPUS_SIZE = 200


def make_k(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def c4_drawing() -> OnePlanarDrawing:
    return drawing_from_faces(4, [[0, 1, 2, 3], [3, 2, 1, 0]])


def k4_drawing() -> OnePlanarDrawing:
    return drawing_from_faces(4, [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])


def cube_drawing() -> OnePlanarDrawing:
    return drawing_from_faces(
        8,
        [[0, 1, 3, 2], [4, 6, 7, 5], [0, 4, 5, 1], [2, 3, 7, 6], [0, 2, 6, 4], [1, 5, 7, 3]],
    )


def random_graph(seed: int, max_n: int = 10) -> Graph:
    """Seeded random simple graph with 4 <= n <= max_n."""
    rng = SplitMix64(seed)
    n = 4 + rng.below(max_n - 3)
    max_m = n * (n - 1) // 2
    m = rng.below(max_m + 1)
    edges: set[tuple[int, int]] = set()
    attempts = 0
    while len(edges) < m and attempts < 10 * max_m:
        u, v = rng.below(n), rng.below(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
        attempts += 1
    return build_graph(n, sorted(edges))


def corpus_params() -> list[tuple[int, int, int]]:
    """(n_triangulation, crossings, seed) for the drawing corpus; final n <= 12."""
    out = []
    for seed in range(CORPUS_SIZE):
        n_tri = 4 + seed % 5
        crossings = seed % 3
        out.append((n_tri, crossings, seed))
    return out


@pytest.fixture(scope="session")
def drawing_corpus() -> list[OnePlanarDrawing]:
    return [random_oneplanar(n, x, seed) for n, x, seed in corpus_params()]


def independent_sets_with_min_degree(g: Graph, min_deg: int = 3):
    """Yield every non-empty independent set whose members all have degree >= min_deg."""
    eligible = [v for v in range(g.n) if g.degree(v) >= min_deg]

    def extend(start: int, current: tuple[int, ...], blocked: frozenset[int]):
        for idx in range(start, len(eligible)):
            v = eligible[idx]
            if v in blocked:
                continue
            chosen = current + (v,)
            yield chosen
            yield from extend(idx + 1, chosen, blocked | frozenset(g.adj[v]))

    yield from extend(0, (), frozenset())


def greedy_independent_t(g: Graph, min_deg: int = 3) -> frozenset[int]:
    """Smallest-id-first maximal independent set among degree >= min_deg vertices."""
    chosen: list[int] = []
    blocked: set[int] = set()
    for v in range(g.n):
        if v in blocked or g.degree(v) < min_deg:
            continue
        chosen.append(v)
        blocked.update(g.adj[v])
    return frozenset(chosen)
