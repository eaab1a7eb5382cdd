"""Exact maximum matching and exact worst-case deficiency, as mutual oracles.

The matching side is the classical blossom-contraction augmenting-path
search; the deficiency side enumerates every vertex subset.  Each one
certifies the other through the matching duality
|M| = (n - max_S (odd(G-S) - |S|)) / 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BadVertex, ParseError, TooLarge
from .graph import Graph, odd_components

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.edges)

    def covers(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True)
class DeficiencyWitness:
    s: frozenset[int]
    odd_count: int
    deficiency: int


def maximum_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching via blossom contraction.

    Deterministic: vertices are scanned in ascending id order and the
    search explores neighbors in ascending order.
    """
    n = g.n
    adj = g.adj
    match = [-1] * n
    # cheap greedy seed
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break

    p = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = [False] * n
        x = base[a]
        while True:
            used[x] = True
            if match[x] == -1:
                break
            x = base[p[match[x]]]
        y = base[b]
        while not used[y]:
            y = base[p[match[y]]]
        return y

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def try_augment(root: int) -> bool:
        for i in range(n):
            p[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        q: deque[int] = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    # odd cycle: contract the blossom
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        # augment along the alternating path to the root
                        u = to
                        while u != -1:
                            pv = p[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            try_augment(v)

    edges = frozenset(
        (v, match[v]) for v in range(n) if match[v] > v
    )
    return Matching(edges)


def _neighbor_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _odd_count_mask(masks: list[int], remaining: int) -> int:
    odd = 0
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                nxt |= masks[b.bit_length() - 1]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        if bin(comp).count("1") % 2 == 1:
            odd += 1
        remaining &= ~comp
    return odd


def tutte_berge_bruteforce(g: Graph, n_limit: int = BRUTE_FORCE_LIMIT) -> DeficiencyWitness:
    """Exhaustive search for the vertex set maximizing odd(G-S) - |S|.

    Subsets are enumerated in ascending size, then lexicographically, so
    ties resolve to the smallest witness.  Sizes that can no longer beat
    the incumbent (deficiency <= n - 2|S|) are pruned.
    """
    if g.n > n_limit:
        raise TooLarge(f"n={g.n} exceeds brute-force limit {n_limit}")
    masks = _neighbor_masks(g)
    full = (1 << g.n) - 1
    best = -g.n - 1
    best_set: tuple[int, ...] = ()
    for size in range(g.n + 1):
        if g.n - 2 * size <= best:
            break
        for combo in combinations(range(g.n), size):
            s_mask = 0
            for v in combo:
                s_mask |= 1 << v
            deficiency = _odd_count_mask(masks, full & ~s_mask) - size
            if deficiency > best:
                best = deficiency
                best_set = combo
    odd = best + len(best_set)
    return DeficiencyWitness(frozenset(best_set), odd, best)


def matching_upper_from_witness(g: Graph, s: Iterable[int]) -> int:
    """Matching-size upper bound floor((n - (odd(G-S) - |S|)) / 2) from any S."""
    members = frozenset(s)
    for v in members:
        if not (0 <= v < g.n):
            raise BadVertex(f"vertex {v} out of range")
    count, _ = odd_components(g, members)
    return (g.n - (count - len(members))) // 2


def verify_duality(g: Graph, n_limit: int = BRUTE_FORCE_LIMIT) -> bool:
    """True iff blossom size equals (n - brute-force deficiency) / 2."""
    witness = tutte_berge_bruteforce(g, n_limit)
    return 2 * len(maximum_matching(g)) == g.n - witness.deficiency


def check_matching(g: Graph, m: Matching) -> list[str]:
    """Violations of the matching invariants plus maximality by exposed scan."""
    bad = []
    seen: set[int] = set()
    for u, v in m.edges:
        uu, vv = min(u, v), max(u, v)
        if not g.has_edge(uu, vv):
            bad.append(f"({uu},{vv}) not an edge of the graph")
        if uu in seen or vv in seen:
            bad.append(f"({uu},{vv}) shares an endpoint")
        seen.update((uu, vv))
    exposed = [v for v in range(g.n) if v not in seen]
    for u, v in g.edges:
        if u in exposed and v in exposed and u != v:
            bad.append(f"not maximal: ({u},{v}) joins two exposed vertices")
    return bad


# --- matching text format ---------------------------------------------


def write_matching(m: Matching) -> str:
    lines = [f"matching {len(m)}"]
    lines.extend(f"m {u} {v}" for u, v in sorted(tuple(sorted(e)) for e in m.edges))
    return "\n".join(lines) + "\n"


def parse_matching(text: str) -> Matching:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].startswith("matching "):
        raise ParseError("missing matching header")
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "m":
            raise ParseError(f"bad matching line {ln!r}")
        edges.append((int(parts[1]), int(parts[2])))
    if len(edges) != k:
        raise ParseError("edge count disagrees with header")
    return Matching(frozenset(edges))


def write_deficiency_witness(w: DeficiencyWitness, n: int) -> str:
    s = " ".join(str(v) for v in sorted(w.s))
    upper = (n - w.deficiency) // 2
    return f"S: {s}\ndeficiency: {w.deficiency}\nmatching_upper: {upper}\n"
