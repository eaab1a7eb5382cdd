"""Inequality checkers and the charging engine for independent-set bounds.

The checks come in three layers:
  * degree-class bounds for an independent set T in a 1-planar drawing
    (plain and crossing-weighted), verified instance by instance;
  * the charging scheme that proves them: bipartitize, saturate with
    uncrossed chords, insert auxiliary vertices into T-heavy faces,
    assign 6/3/2 charges and audit every per-vertex lower bound;
  * deficiency bounds odd(G-S) - |S| for minimum degree 3/4/5 and the
    end-to-end matching lower-bound certifier.

All comparisons are exact (integers and fractions.Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable

from .embedding import (
    Face,
    OnePlanarDrawing,
    RealV,
    _face_orbits,
    _insert_vertex_multi,
    add_chord_in_face,
    crossing_weighted_degree,
    delete_edges,
    validate,
)
from .errors import (
    BadVertex,
    DegreeTooLow,
    EmptyT,
    InvalidDrawing,
    NoProvenance,
    NotIndependent,
    STooSmall,
)
from .generators import FamilyInstance
from .graph import Graph, build_graph, is_independent, min_degree, odd_components
from .matcher import maximum_matching
from .rng import SplitMix64


@dataclass(frozen=True)
class BoundCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class DegreeClassCount:
    by_degree: dict[int, int]
    by_cw_degree: dict[int, int]


def _check_t_preconditions(d: OnePlanarDrawing, t: frozenset[int]) -> Graph:
    if not t:
        raise EmptyT("independent set T must be non-empty")
    report = validate(d)
    if not report.valid:
        raise InvalidDrawing("; ".join(report.violations))
    if d.multi_allowed:
        raise InvalidDrawing("degree bounds require a simple-mode drawing")
    g = d.graph()
    for v in t:
        if not (0 <= v < g.n):
            raise BadVertex(f"vertex {v} out of range")
        if g.degree(v) < 3:
            raise DegreeTooLow(f"vertex {v} has degree {g.degree(v)} < 3")
    if not is_independent(g, t):
        raise NotIndependent("T contains an edge")
    return g


def degree_classes(d: OnePlanarDrawing, t: Iterable[int]) -> DegreeClassCount:
    """Class sizes T_d (by degree) and W_d (by crossing-weighted degree)."""
    members = frozenset(t)
    g = d.graph()
    by_degree: dict[int, int] = {}
    by_cw: dict[int, int] = {}
    for v in sorted(members):
        by_degree[g.degree(v)] = by_degree.get(g.degree(v), 0) + 1
        cw = crossing_weighted_degree(d, v)
        by_cw[cw] = by_cw.get(cw, 0) + 1
    return DegreeClassCount(by_degree, by_cw)


def check_degree_bound(d: OnePlanarDrawing, t: Iterable[int]) -> BoundCheck:
    """Degree-class inequality 2|T_3| + sum_{d>=4} (3d-6)|T_d| <= 12|V-T| - 24."""
    members = frozenset(t)
    g = _check_t_preconditions(d, members)
    classes = degree_classes(d, members).by_degree
    lhs = 0
    for deg, cnt in classes.items():
        lhs += 2 * cnt if deg == 3 else (3 * deg - 6) * cnt
    rhs = 12 * (g.n - len(members)) - 24
    return BoundCheck(Fraction(lhs), Fraction(rhs), lhs <= rhs)


def check_cw_degree_bound(d: OnePlanarDrawing, t: Iterable[int]) -> BoundCheck:
    """Crossing-weighted variant 2|W_3| + 2|W_4| + sum_{d>=5} (3d-12)|W_d| <= 12|V-T| - 24."""
    members = frozenset(t)
    g = _check_t_preconditions(d, members)
    classes = degree_classes(d, members).by_cw_degree
    lhs = 0
    for deg, cnt in classes.items():
        lhs += 2 * cnt if deg in (3, 4) else (3 * deg - 12) * cnt
    rhs = 12 * (g.n - len(members)) - 24
    return BoundCheck(Fraction(lhs), Fraction(rhs), lhs <= rhs)


# ---------------------------------------------------------------------
# component reduction


def reduce_components(
    g: Graph, s: Iterable[int], odd_threshold: int
) -> tuple[Graph, dict[int, int]]:
    """Drop S-S edges, even components, and odd components of >= odd_threshold vertices.

    Threshold 3 keeps only singleton components; threshold 5 also keeps
    size-3 components.  Returns the reduced graph plus old-id -> new-id map.
    """
    members = frozenset(s)
    for v in members:
        if not (0 <= v < g.n):
            raise BadVertex(f"vertex {v} out of range")
    _, comps = odd_components(g, members)
    keep: set[int] = set(members)
    for comp in comps:
        if len(comp) % 2 == 1 and len(comp) < odd_threshold:
            keep.update(comp)
    kept = sorted(keep)
    remap = {old: new for new, old in enumerate(kept)}
    edges = []
    for u, v in g.edges:
        if u in members and v in members:
            continue
        if u in keep and v in keep:
            edges.append((remap[u], remap[v]))
    return build_graph(len(kept), edges, simple=g.simple), remap


# ---------------------------------------------------------------------
# the charging engine


@dataclass(frozen=True)
class ChargeLedger:
    base: OnePlanarDrawing  # after step 0 (S-S edges removed)
    gamma_prime: OnePlanarDrawing  # after step 1 (chord saturation)
    final: OnePlanarDrawing  # after step 2 (auxiliary vertices)
    s: frozenset[int]
    t: frozenset[int]
    added_chords: tuple[tuple[int, int], ...]
    delta_vertices: tuple[int, ...]
    delta_attach: tuple[tuple[int, tuple[int, int, int]], ...]
    delta_edges: tuple[tuple[int, int], ...]
    charge_class: tuple[tuple[int, int], ...]  # (eid in final, 6|3|2)
    vertex_charge: tuple[tuple[int, int], ...]  # (t vid, c(t))
    totals: tuple[int, int]  # (sum of charges, 12|S| + 12|T| - 24)


def _real_corner_occurrences(
    d: OnePlanarDrawing, face: Face
) -> list[tuple[int, int]]:
    """(walk position, vid) for every real corner occurrence."""
    out = []
    for i, x in enumerate(face.darts):
        pv = d.pvertices[d.origin(x)]
        if isinstance(pv, RealV):
            out.append((i, pv.vid))
    return out


def _first_addable_chord(
    d: OnePlanarDrawing,
    s: frozenset[int],
    t: frozenset[int],
    rng: SplitMix64 | None,
) -> tuple[Face, int, int, int, int] | None:
    """First S-T chord addable without a bigon, under canonical or shuffled order."""
    fs = _face_orbits(d)
    if rng is not None:
        rng.shuffle(fs)
    for face in fs:
        k = len(face.darts)
        occ = _real_corner_occurrences(d, face)
        s_occ: dict[int, list[int]] = {}
        t_occ: dict[int, list[int]] = {}
        for pos, vid in occ:
            (s_occ if vid in s else t_occ).setdefault(vid, []).append(pos)
        pairs = [(sv, tv) for sv in sorted(s_occ) for tv in sorted(t_occ)]
        if rng is not None:
            rng.shuffle(pairs)
        for sv, tv in pairs:
            for pi in s_occ[sv]:
                for pj in t_occ[tv]:
                    if (pj - pi) % k != 1 and (pi - pj) % k != 1:
                        return face, sv, tv, pi, pj
    return None


def charging_run(
    d: OnePlanarDrawing,
    s: Iterable[int],
    t: Iterable[int],
    order_seed: int | None = None,
) -> ChargeLedger:
    """Run the charge-assignment procedure and return its full ledger.

    Step 0 deletes S-S edges, step 1 greedily adds uncrossed S-T chords
    face by face until no bigon-free candidate remains (multi-edges
    allowed), step 2 inserts an auxiliary vertex into every face with
    three or more distinct T-corners, step 3 assigns 6/3/2 charges to
    uncrossed/crossed/auxiliary edges.

    With order_seed=None faces and chord candidates are processed in
    canonical order; a seed shuffles both (the structural claims must
    hold for any maximal order).
    """
    s_set = frozenset(s)
    t_set = frozenset(t)
    if s_set & t_set or s_set | t_set != frozenset(range(d.n_real)):
        raise BadVertex("S and T must partition the vertex set")
    if len(s_set) < 3:
        raise STooSmall(f"|S| = {len(s_set)} < 3")
    _check_t_preconditions(d, t_set)

    # step 0: make the graph bipartite
    ss_edges = [
        eid for eid, (u, v) in enumerate(d.edges) if u in s_set and v in s_set
    ]
    base, _ = delete_edges(d, ss_edges)
    work = replace(base, multi_allowed=True)

    # step 1: chord saturation
    rng = SplitMix64(order_seed) if order_seed is not None else None
    chords: list[tuple[int, int]] = []
    cap = 3 * (work.n_p + 1) ** 2
    while True:
        found = _first_addable_chord(work, s_set, t_set, rng)
        if found is None:
            break
        face, sv, tv, pi, pj = found
        work = add_chord_in_face(work, face, sv, tv, occurrences=(pi, pj))
        chords.append((sv, tv))
        cap -= 1
        assert cap > 0, "chord saturation failed to terminate"
    gamma_prime = work

    # step 2: auxiliary vertices into T-heavy faces
    delta_vertices: list[int] = []
    delta_attach: list[tuple[int, tuple[int, int, int]]] = []
    while True:
        target = None
        for face in _face_orbits(work):
            t_corners = sorted({vid for _, vid in _real_corner_occurrences(work, face) if vid in t_set})
            if len(t_corners) >= 3:
                target = (face, tuple(t_corners[:3]))
                break
        if target is None:
            break
        face, attach = target
        z = work.n_real
        work = _insert_vertex_multi(work, face, list(attach))
        delta_vertices.append(z)
        delta_attach.append((z, attach))
    final = work

    # step 3: assign charges
    delta_set = frozenset(delta_vertices)
    crossed = final.crossed_eids()
    charge_class: list[tuple[int, int]] = []
    delta_edges: list[tuple[int, int]] = []
    total = 0
    for eid, (u, v) in enumerate(final.edges):
        if u in delta_set or v in delta_set:
            c = 2
            delta_edges.append((u, v))
        elif eid in crossed:
            c = 3
        else:
            c = 6
        charge_class.append((eid, c))
        total += c
    vertex_charge: list[tuple[int, int]] = []
    charge_of = dict(charge_class)
    for tv in sorted(t_set):
        c = sum(
            charge_of[eid]
            for eid, (u, v) in enumerate(final.edges)
            if tv in (u, v)
        )
        vertex_charge.append((tv, c))
    rhs = 12 * len(s_set) + 12 * len(t_set) - 24

    ledger = ChargeLedger(
        base=base,
        gamma_prime=gamma_prime,
        final=final,
        s=s_set,
        t=t_set,
        added_chords=tuple(chords),
        delta_vertices=tuple(delta_vertices),
        delta_attach=tuple(delta_attach),
        delta_edges=tuple(delta_edges),
        charge_class=tuple(charge_class),
        vertex_charge=tuple(vertex_charge),
        totals=(total, rhs),
    )
    # embedded postconditions of the procedure itself
    assert not _three_consecutive_crossed(ledger), "chord saturation left 3 consecutive crossed edges"
    assert not _t_heavy_faces(ledger), "a face with >= 3 T-corners survived step 2"
    return ledger


def _three_consecutive_crossed(ledger: ChargeLedger) -> list[int]:
    """T-vertices with three cyclically consecutive crossed edges after step 1."""
    gp = ledger.gamma_prime
    crossed = gp.crossed_eids()
    bad = []
    for tv in sorted(ledger.t):
        rot = gp.rotations[gp.real_pid[tv]]
        k = len(rot)
        if k < 3:
            continue
        flags = [gp.segments[x.sid].eid in crossed for x in rot]
        for i in range(k):
            if flags[i] and flags[(i + 1) % k] and flags[(i + 2) % k]:
                bad.append(tv)
                break
    return bad


def _t_heavy_faces(ledger: ChargeLedger) -> list[Face]:
    out = []
    for face in _face_orbits(ledger.final):
        t_corners = {
            vid
            for _, vid in _real_corner_occurrences(ledger.final, face)
            if vid in ledger.t
        }
        if len(t_corners) >= 3:
            out.append(face)
    return out


@dataclass(frozen=True)
class ChargeReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def charge_verify(ledger: ChargeLedger) -> ChargeReport:
    """Audit a ledger against every bound the charging argument promises.

    A violation here falsifies the implementation, not the input.
    """
    bad: list[str] = []
    final = ledger.final
    gp = ledger.gamma_prime
    base = ledger.base

    for name, drawing in (("base", base), ("augmented", gp), ("final", final)):
        report = validate(drawing)
        if not report.valid:
            bad.append(f"{name} drawing invalid: {report.violations[0]}")

    if len(ledger.delta_edges) != 3 * len(ledger.delta_vertices):
        bad.append(
            f"|E_delta| = {len(ledger.delta_edges)} != 3*{len(ledger.delta_vertices)}"
        )

    crossed_final = final.crossed_eids()
    delta_set = frozenset(ledger.delta_vertices)
    for eid, (u, v) in enumerate(final.edges):
        if (u in delta_set or v in delta_set) and eid in crossed_final:
            bad.append(f"auxiliary edge ({u},{v}) is crossed")
    crossed_gp = gp.crossed_eids()
    n_base_edges = len(base.edges)
    for eid in range(n_base_edges, len(gp.edges)):
        if eid in crossed_gp:
            bad.append(f"added chord {gp.edges[eid]} is crossed")

    # bookkeeping identities
    charge_of = dict(ledger.charge_class)
    recount = {2: 0, 3: 0, 6: 0}
    for eid, c in ledger.charge_class:
        u, v = final.edges[eid]
        want = 2 if (u in delta_set or v in delta_set) else (3 if eid in crossed_final else 6)
        if c != want:
            bad.append(f"edge {eid} charged {c}, expected {want}")
        recount[c] += 1
    total = 6 * recount[6] + 3 * recount[3] + 2 * recount[2]
    if total != ledger.totals[0]:
        bad.append(f"stored total {ledger.totals[0]} != recomputed {total}")
    rhs = 12 * len(ledger.s) + 12 * len(ledger.t) - 24
    if rhs != ledger.totals[1]:
        bad.append(f"stored rhs {ledger.totals[1]} != recomputed {rhs}")
    if total > rhs:
        bad.append(f"total charges {total} exceed bound {rhs}")

    # every remaining edge has exactly one T endpoint, so the vertex
    # charges must add up to the grand total exactly
    for eid, (u, v) in enumerate(final.edges):
        if (u in ledger.t) == (v in ledger.t):
            bad.append(f"edge ({u},{v}) does not have exactly one T endpoint")
    vc = dict(ledger.vertex_charge)
    if sum(vc.values()) != total:
        bad.append(f"sum of c(t) = {sum(vc.values())} != total {total}")

    # per-vertex lower bounds
    g_base = base.graph()
    uncrossed_gp: dict[int, int] = {}
    for tv in ledger.t:
        uncrossed_gp[tv] = sum(
            1
            for eid, (u, v) in enumerate(gp.edges)
            if tv in (u, v) and eid not in crossed_gp
        )
    for tv in sorted(ledger.t):
        c = vc[tv]
        recomputed = sum(
            charge_of[eid] for eid, (u, v) in enumerate(final.edges) if tv in (u, v)
        )
        if c != recomputed:
            bad.append(f"c({tv}) stored {c} != recomputed {recomputed}")
        if c < 14:
            bad.append(f"c({tv}) = {c} < 14")
        if uncrossed_gp[tv] >= 2 and c < 3 * g_base.degree(tv) + 6:
            bad.append(
                f"c({tv}) = {c} < 3*deg+6 = {3 * g_base.degree(tv) + 6} despite "
                f"{uncrossed_gp[tv]} uncrossed edges"
            )
        cw = crossing_weighted_degree(base, tv)
        if c < 3 * cw:
            bad.append(f"c({tv}) = {c} < 3*cw-degree = {3 * cw}")

    for tv in _three_consecutive_crossed(ledger):
        bad.append(f"T-vertex {tv} keeps three consecutive crossed edges")
    for face in _t_heavy_faces(ledger):
        bad.append(f"face with >=3 T-corners survived: {face.darts}")

    return ChargeReport(tuple(bad))


# --- ledger dump format -----------------------------------------------


def write_ledger(ledger: ChargeLedger) -> str:
    lines = ["ledger"]
    for u, v in sorted(ledger.added_chords):
        lines.append(f"chord {u} {v}")
    for z, attach in sorted(ledger.delta_attach):
        t1, t2, t3 = sorted(attach)
        lines.append(f"deltav {z} {t1} {t2} {t3}")
    for eid, c in ledger.charge_class:
        lines.append(f"charge {eid} {c}")
    for tv, c in ledger.vertex_charge:
        lines.append(f"ct {tv} {c}")
    lines.append(f"total {ledger.totals[0]} {ledger.totals[1]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------
# deficiency bounds and the matching certifier

Provenance = OnePlanarDrawing | FamilyInstance


def _check_provenance(g: Graph, provenance: Provenance | None) -> None:
    if provenance is None:
        raise NoProvenance("1-planarity attestation required (drawing or family instance)")
    drawing = provenance.drawing if isinstance(provenance, FamilyInstance) else provenance
    report = validate(drawing)
    if not report.valid:
        raise InvalidDrawing("; ".join(report.violations))
    if drawing.n_real != g.n or tuple(sorted(drawing.edges)) != tuple(sorted(g.edges)):
        raise NoProvenance("attested drawing does not match the graph")


def check_deficiency_mindeg34(
    g: Graph,
    s: Iterable[int],
    delta: int,
    provenance: Provenance | None = None,
) -> BoundCheck:
    """odd(G-S) - |S| <= (5n-24)/7 for delta=3, (n-8)/3 for delta=4; |S| >= 2."""
    if delta not in (3, 4):
        raise ValueError("delta must be 3 or 4")
    members = frozenset(s)
    if len(members) < 2:
        raise STooSmall(f"|S| = {len(members)} < 2")
    if min_degree(g) < delta:
        raise DegreeTooLow(f"min degree {min_degree(g)} < {delta}")
    if provenance is not None:
        _check_provenance(g, provenance)
    count, _ = odd_components(g, members)
    lhs = Fraction(count - len(members))
    rhs = Fraction(5 * g.n - 24, 7) if delta == 3 else Fraction(g.n - 8, 3)
    return BoundCheck(lhs, rhs, lhs <= rhs)


def check_deficiency_mindeg5(
    g: Graph,
    s: Iterable[int],
    provenance: Provenance | None = None,
) -> BoundCheck:
    """odd(G-S) - |S| <= (n-6)/5 for minimum degree 5; |S| >= 1."""
    members = frozenset(s)
    if len(members) < 1:
        raise STooSmall("|S| must be non-empty")
    if min_degree(g) < 5:
        raise DegreeTooLow(f"min degree {min_degree(g)} < 5")
    if provenance is not None:
        _check_provenance(g, provenance)
    count, _ = odd_components(g, members)
    lhs = Fraction(count - len(members))
    rhs = Fraction(g.n - 6, 5)
    return BoundCheck(lhs, rhs, lhs <= rhs)


def check_min_odd_component_size(g: Graph, s: Iterable[int], delta: int) -> bool:
    """Every odd component of G-S has at least X vertices, X the smallest
    odd integer >= delta + 1 - |S| (vacuous once X = 1)."""
    if min_degree(g) < delta:
        raise DegreeTooLow(f"min degree {min_degree(g)} < {delta}")
    members = frozenset(s)
    x = max(1, delta + 1 - len(members))
    if x % 2 == 0:
        x += 1
    _, comps = odd_components(g, members)
    return all(len(c) >= x for c in comps if len(c) % 2 == 1)


THRESHOLDS = {3: 7, 4: 20, 5: 21}


@dataclass(frozen=True)
class CertReport:
    delta: int
    n: int
    matching_size: int
    bound: Fraction
    threshold: int
    applicable: bool
    holds: bool | None
    tight: bool | None


def certify_matching_bound(
    g: Graph, delta: int, provenance: Provenance | None
) -> CertReport:
    """Certify the guaranteed matching size for an attested 1-planar graph.

    Bounds (n+12)/7, (n+4)/3 and (2n+3)/5 for minimum degree 3, 4, 5,
    applicable from n >= 7, 20, 21 respectively.  Below the threshold
    the report comes back not-applicable instead of failing.
    """
    if delta not in (3, 4, 5):
        raise ValueError("delta must be 3, 4 or 5")
    if min_degree(g) < delta:
        raise DegreeTooLow(f"min degree {min_degree(g)} < {delta}")
    _check_provenance(g, provenance)
    n = g.n
    bound = {
        3: Fraction(n + 12, 7),
        4: Fraction(n + 4, 3),
        5: Fraction(2 * n + 3, 5),
    }[delta]
    size = len(maximum_matching(g))
    threshold = THRESHOLDS[delta]
    if n < threshold:
        return CertReport(delta, n, size, bound, threshold, False, None, None)
    return CertReport(
        delta, n, size, bound, threshold, True, size >= bound, Fraction(size) == bound
    )
