"""Combinatorial 1-planar drawings, stored as planarizations.

A drawing is a rotation system over *planarization vertices*: the real
vertices plus one degree-4 dummy per crossing.  Each original edge is one
segment (uncrossed) or two segments meeting at its dummy (crossed).  There
are no coordinates anywhere; planarity is checked through Euler's formula
on the face orbits of the rotation system.

Conventions:
  * a dart (sid, end) leaves segment `sid` from its endpoint `end`;
  * rotations[p] lists, in cyclic order, the darts leaving p;
  * the face walk successor of a dart is the rotation successor of its
    reversal at the head vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadAttachment,
    BadVertex,
    BigonPresent,
    DuplicateEdge,
    InvalidDrawing,
    NotBipartite,
    NotOnFace,
    ParseError,
    TooSmall,
    WouldCreateBigon,
)
from .graph import Graph

__all__ = [
    "Dart",
    "DummyV",
    "Face",
    "OnePlanarDrawing",
    "RealV",
    "Segment",
    "ValidationReport",
    "add_chord_in_face",
    "add_crossed_edge",
    "bigons",
    "check_bipartite_edge_budget",
    "crossing_partition",
    "crossing_weighted_degree",
    "delete_edges",
    "drawing_from_faces",
    "faces",
    "insert_vertex_in_face",
    "is_connected",
    "parse_drawing",
    "validate",
    "wedge_at_vertex",
    "write_drawing",
]


class RealV(NamedTuple):
    vid: int


class DummyV(NamedTuple):
    eid_a: int
    eid_b: int


class Segment(NamedTuple):
    ends: tuple[int, int]  # pvertex ids
    eid: int
    part: int  # 0, or 1 for the second half of a crossed edge


class Dart(NamedTuple):
    sid: int
    end: int  # which endpoint of the segment the dart leaves from


PVertex = RealV | DummyV


@dataclass(frozen=True)
class OnePlanarDrawing:
    n_real: int
    edges: tuple[tuple[int, int], ...]  # original edges, (u, v) with u < v
    pvertices: tuple[PVertex, ...]
    segments: tuple[Segment, ...]
    rotations: tuple[tuple[Dart, ...], ...]
    multi_allowed: bool = False

    # -- basic lookups ------------------------------------------------

    @property
    def n_p(self) -> int:
        return len(self.pvertices)

    @property
    def m_p(self) -> int:
        return len(self.segments)

    @property
    def real_pid(self) -> dict[int, int]:
        cached = self.__dict__.get("_real_pid")
        if cached is None:
            cached = {
                pv.vid: pid
                for pid, pv in enumerate(self.pvertices)
                if isinstance(pv, RealV)
            }
            self.__dict__["_real_pid"] = cached
        return cached

    def origin(self, d: Dart) -> int:
        return self.segments[d.sid].ends[d.end]

    def head(self, d: Dart) -> int:
        return self.segments[d.sid].ends[1 - d.end]

    def reverse(self, d: Dart) -> Dart:
        return Dart(d.sid, 1 - d.end)

    def edge_segments(self) -> dict[int, list[int]]:
        cached = self.__dict__.get("_edge_segments")
        if cached is None:
            cached = {eid: [] for eid in range(len(self.edges))}
            for sid, seg in enumerate(self.segments):
                cached[seg.eid].append(sid)
            self.__dict__["_edge_segments"] = cached
        return cached

    def crossed_eids(self) -> frozenset[int]:
        cached = self.__dict__.get("_crossed_eids")
        if cached is None:
            cached = frozenset(
                eid for eid, sids in self.edge_segments().items() if len(sids) == 2
            )
            self.__dict__["_crossed_eids"] = cached
        return cached

    def graph(self) -> Graph:
        cached = self.__dict__.get("_graph")
        if cached is None:
            cached = Graph(
                self.n_real, tuple(sorted(self.edges)), simple=not self.multi_allowed
            )
            self.__dict__["_graph"] = cached
        return cached

    def incident_eids(self, v: int) -> list[int]:
        if not (0 <= v < self.n_real):
            raise BadVertex(f"vertex {v} not a real vertex (n={self.n_real})")
        return [eid for eid, (a, b) in enumerate(self.edges) if v in (a, b)]


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]  # boundary walk, canonically rotated

    def __len__(self) -> int:
        return len(self.darts)

    def corners(self, d: OnePlanarDrawing) -> tuple[int, ...]:
        return tuple(d.origin(x) for x in self.darts)

    def real_corners(self, d: OnePlanarDrawing) -> tuple[int, ...]:
        out = []
        for x in self.darts:
            pv = d.pvertices[d.origin(x)]
            if isinstance(pv, RealV):
                out.append(pv.vid)
        return tuple(out)


def _canonical_walk(walk: Sequence[Dart]) -> tuple[Dart, ...]:
    k = min(range(len(walk)), key=lambda i: walk[i])
    return tuple(walk[k:]) + tuple(walk[:k])


# ---------------------------------------------------------------------
# validation and face traversal


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def _rotation_tables(d: OnePlanarDrawing) -> list[str]:
    """Structural pre-checks needed before faces can be traversed at all."""
    bad: list[str] = []
    n_p, m_p = d.n_p, d.m_p
    for sid, seg in enumerate(d.segments):
        for p in seg.ends:
            if not (0 <= p < n_p):
                bad.append(f"segment {sid} endpoint {p} out of range")
        if not (0 <= seg.eid < len(d.edges)):
            bad.append(f"segment {sid} edge id {seg.eid} out of range")
        if seg.ends[0] == seg.ends[1]:
            bad.append(f"segment {sid} is a loop at pvertex {seg.ends[0]}")
    if len(d.rotations) != n_p:
        bad.append("rotation table size differs from pvertex count")
        return bad
    if bad:
        return bad
    expected: list[set[Dart]] = [set() for _ in range(n_p)]
    for sid, seg in enumerate(d.segments):
        expected[seg.ends[0]].add(Dart(sid, 0))
        expected[seg.ends[1]].add(Dart(sid, 1))
    for p in range(n_p):
        rot = d.rotations[p]
        if len(set(rot)) != len(rot) or set(rot) != expected[p]:
            bad.append(f"rotation at pvertex {p} inconsistent with incident segments")
    return bad


def _face_orbits(d: OnePlanarDrawing) -> list[Face]:
    """All face walks of the rotation system, canonically ordered."""
    index_at: list[dict[Dart, int]] = [
        {x: i for i, x in enumerate(rot)} for rot in d.rotations
    ]

    def successor(x: Dart) -> Dart:
        rx = d.reverse(x)
        p = d.origin(rx)
        rot = d.rotations[p]
        return rot[(index_at[p][rx] + 1) % len(rot)]

    seen: set[Dart] = set()
    out: list[Face] = []
    for sid in range(d.m_p):
        for end in (0, 1):
            start = Dart(sid, end)
            if start in seen:
                continue
            walk = [start]
            seen.add(start)
            cur = successor(start)
            while cur != start:
                walk.append(cur)
                seen.add(cur)
                cur = successor(cur)
            out.append(Face(_canonical_walk(walk)))
    out.sort(key=lambda f: f.darts)
    return out


def _planarization_components(d: OnePlanarDrawing) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(d.n_p)]
    for seg in d.segments:
        a, b = seg.ends
        adj[a].append(b)
        adj[b].append(a)
    seen: set[int] = set()
    comps = []
    for start in range(d.n_p):
        if start in seen:
            continue
        stack, comp = [start], [start]
        seen.add(start)
        while stack:
            p = stack.pop()
            for q in adj[p]:
                if q not in seen:
                    seen.add(q)
                    comp.append(q)
                    stack.append(q)
        comps.append(sorted(comp))
    return comps


def validate(d: OnePlanarDrawing) -> ValidationReport:
    """Check every structural invariant; an empty report means the drawing is valid.

    Drawings are immutable, so the report is computed once per instance.
    """
    cached = d.__dict__.get("_validation")
    if cached is not None:
        return cached
    report = _validate_uncached(d)
    d.__dict__["_validation"] = report
    return report


def _validate_uncached(d: OnePlanarDrawing) -> ValidationReport:
    bad: list[str] = []

    for eid, (u, v) in enumerate(d.edges):
        if u == v:
            bad.append(f"edge {eid} is a loop")
        if not (0 <= u < d.n_real and 0 <= v < d.n_real):
            bad.append(f"edge {eid} endpoint out of range")
        if u > v:
            bad.append(f"edge {eid} endpoints not ascending")
    if not d.multi_allowed:
        if len(set(d.edges)) != len(d.edges):
            bad.append("parallel edges present in simple mode")

    real_seen: dict[int, int] = {}
    for pid, pv in enumerate(d.pvertices):
        if isinstance(pv, RealV):
            if not (0 <= pv.vid < d.n_real):
                bad.append(f"pvertex {pid} real id {pv.vid} out of range")
            elif pv.vid in real_seen:
                bad.append(f"real vertex {pv.vid} has two pvertices")
            else:
                real_seen[pv.vid] = pid
        else:
            for eid in (pv.eid_a, pv.eid_b):
                if not (0 <= eid < len(d.edges)):
                    bad.append(f"dummy {pid} references bad edge {eid}")
    missing = set(range(d.n_real)) - set(real_seen)
    if missing:
        bad.append(f"real vertices without pvertex: {sorted(missing)}")
    if bad:
        return ValidationReport(tuple(bad))

    bad.extend(_rotation_tables(d))
    if bad:
        return ValidationReport(tuple(bad))

    # per-edge segment structure
    for eid, sids in d.edge_segments().items():
        u, v = d.edges[eid]
        pu, pv = d.real_pid[u], d.real_pid[v]
        if len(sids) == 1:
            seg = d.segments[sids[0]]
            if set(seg.ends) != {pu, pv}:
                bad.append(f"edge {eid} segment does not join its endpoints")
            if seg.part != 0:
                bad.append(f"edge {eid} single segment has part {seg.part}")
        elif len(sids) == 2:
            s0, s1 = (d.segments[s] for s in sids)
            parts = sorted((s0.part, s1.part))
            if parts != [0, 1]:
                bad.append(f"edge {eid} segment parts are {parts}, want [0, 1]")
            dummies = [
                p
                for s in (s0, s1)
                for p in s.ends
                if isinstance(d.pvertices[p], DummyV)
            ]
            if len(set(dummies)) != 1 or len(dummies) != 2:
                bad.append(f"edge {eid} segments do not share one dummy")
            else:
                dummy = d.pvertices[dummies[0]]
                if eid not in (dummy.eid_a, dummy.eid_b):
                    bad.append(f"edge {eid} crosses at a dummy not recording it")
            reals = {p for s in (s0, s1) for p in s.ends} - set(dummies)
            if reals != {pu, pv}:
                bad.append(f"edge {eid} segments do not join its endpoints")
            else:
                part0 = s0 if s0.part == 0 else s1
                if pu not in part0.ends:
                    bad.append(f"edge {eid} part 0 not incident to endpoint {u}")
        else:
            bad.append(f"edge {eid} has {len(sids)} segments (more than one crossing)")

    # dummies: degree four, alternating between the two crossing edges
    for pid, pv in enumerate(d.pvertices):
        if not isinstance(pv, DummyV):
            continue
        rot = d.rotations[pid]
        if len(rot) != 4:
            bad.append(f"dummy {pid} degree != 4")
            continue
        eids = [d.segments[x.sid].eid for x in rot]
        if set(eids) != {pv.eid_a, pv.eid_b} or pv.eid_a == pv.eid_b:
            bad.append(f"dummy {pid} incident edges {sorted(set(eids))} mismatch")
        elif eids[0] != eids[2] or eids[1] != eids[3] or eids[0] == eids[1]:
            bad.append(f"dummy {pid} rotation does not alternate (a,b,a,b)")

    if bad:
        return ValidationReport(tuple(bad))

    # planarity: Euler's formula per planarization component
    faces = _face_orbits(d)
    comp_of: dict[int, int] = {}
    comps = _planarization_components(d)
    for ci, comp in enumerate(comps):
        for p in comp:
            comp_of[p] = ci
    n_c = [len(c) for c in comps]
    m_c = [0] * len(comps)
    f_c = [0] * len(comps)
    for seg in d.segments:
        m_c[comp_of[seg.ends[0]]] += 1
    for face in faces:
        f_c[comp_of[d.origin(face.darts[0])]] += 1
    for ci in range(len(comps)):
        if m_c[ci] == 0:
            continue  # isolated pvertex: sphere with one face
        if n_c[ci] - m_c[ci] + f_c[ci] != 2:
            bad.append(
                f"component {ci} fails Euler: n={n_c[ci]} m={m_c[ci]} f={f_c[ci]}"
            )

    # bigons are forbidden in both modes (simple mode cannot have them anyway)
    if not bad:
        for face in _bigon_faces(d, faces):
            bad.append(f"bigon face {face.darts}")

    return ValidationReport(tuple(bad))


def _require_valid(d: OnePlanarDrawing) -> None:
    report = validate(d)
    if not report.valid:
        raise InvalidDrawing("; ".join(report.violations))


def is_connected(d: OnePlanarDrawing) -> bool:
    return len(_planarization_components(d)) <= 1


def faces(d: OnePlanarDrawing) -> list[Face]:
    """All faces of a valid connected drawing, canonically ordered."""
    _require_valid(d)
    if not is_connected(d):
        raise InvalidDrawing("drawing is disconnected; process per component")
    return _face_orbits(d)


def _bigon_faces(d: OnePlanarDrawing, orbit_list: list[Face]) -> list[Face]:
    out = []
    for face in orbit_list:
        if len(face.darts) != 2:
            continue
        s0, s1 = (d.segments[x.sid] for x in face.darts)
        if face.darts[0].sid == face.darts[1].sid:
            continue  # one segment walked twice (a bridge), not a bigon
        if s0.eid == s1.eid:
            continue
        if d.edges[s0.eid] == d.edges[s1.eid]:
            out.append(face)
    return out


def bigons(d: OnePlanarDrawing) -> list[Face]:
    """Faces bounded by two parallel copies of the same vertex pair."""
    bad = _rotation_tables(d)
    if bad:
        raise InvalidDrawing("; ".join(bad))
    return _bigon_faces(d, _face_orbits(d))


def crossing_partition(d: OnePlanarDrawing) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Split original edges into (crossed, uncrossed) sets of vertex pairs."""
    crossed_ids = d.crossed_eids()
    crossed = {d.edges[eid] for eid in crossed_ids}
    uncrossed = {e for eid, e in enumerate(d.edges) if eid not in crossed_ids}
    n_dummies = sum(1 for pv in d.pvertices if isinstance(pv, DummyV))
    assert len(crossed_ids) == 2 * n_dummies
    return crossed, uncrossed


def crossing_weighted_degree(d: OnePlanarDrawing, v: int) -> int:
    """Degree plus the number of incident uncrossed edges (uncrossed count double)."""
    eids = d.incident_eids(v)
    crossed = d.crossed_eids()
    return len(eids) + sum(1 for eid in eids if eid not in crossed)


def check_bipartite_edge_budget(
    d: OnePlanarDrawing, bipartition: tuple[Iterable[int], Iterable[int]]
) -> tuple[Fraction, int, bool]:
    """Evaluate the bipartite edge budget m_x/2 + m_- <= 2n - 4 on a bigon-free drawing."""
    _require_valid(d)
    if d.n_real < 3:
        raise TooSmall("edge budget needs n >= 3")
    if bigons(d):
        raise BigonPresent("drawing has a bigon")
    side0, side1 = (frozenset(side) for side in bipartition)
    if side0 & side1 or side0 | side1 != frozenset(range(d.n_real)):
        raise NotBipartite("sides do not partition the vertex set")
    for u, v in d.edges:
        if (u in side0) == (v in side0):
            raise NotBipartite(f"edge ({u},{v}) inside one side")
    crossed, uncrossed = crossing_partition(d)
    lhs = Fraction(len(crossed), 2) + len(uncrossed)
    rhs = 2 * d.n_real - 4
    return lhs, rhs, lhs <= rhs


# ---------------------------------------------------------------------
# mutable builder used by every surgery


class _Builder:
    def __init__(self, d: OnePlanarDrawing):
        self.n_real = d.n_real
        self.edges: list[tuple[int, int]] = list(d.edges)
        self.pvertices: list[PVertex] = list(d.pvertices)
        self.segments: list[Segment] = list(d.segments)
        self.rotations: list[list[Dart]] = [list(r) for r in d.rotations]
        self.multi_allowed = d.multi_allowed

    def finish(self) -> OnePlanarDrawing:
        return OnePlanarDrawing(
            n_real=self.n_real,
            edges=tuple(self.edges),
            pvertices=tuple(self.pvertices),
            segments=tuple(self.segments),
            rotations=tuple(tuple(r) for r in self.rotations),
            multi_allowed=self.multi_allowed,
        )

    def new_real(self, vid: int | None = None) -> int:
        if vid is None:
            vid = self.n_real
        self.n_real = max(self.n_real, vid + 1)
        self.pvertices.append(RealV(vid))
        self.rotations.append([])
        return len(self.pvertices) - 1

    def new_segment(self, ends: tuple[int, int], eid: int, part: int) -> int:
        self.segments.append(Segment(ends, eid, part))
        return len(self.segments) - 1

    def insert_before(self, pid: int, anchor: Dart | None, new: Dart) -> None:
        """Insert `new` into the rotation at pid, directly before `anchor`."""
        rot = self.rotations[pid]
        if anchor is None:
            rot.append(new)
        else:
            rot.insert(rot.index(anchor), new)


def _walk_positions(d: OnePlanarDrawing, walk: Sequence[Dart], vid: int) -> list[int]:
    """Positions on the walk whose corner is the real vertex vid."""
    pid = d.real_pid.get(vid)
    return [i for i, x in enumerate(walk) if d.origin(x) == pid]


def _check_face(d: OnePlanarDrawing, face: Face) -> tuple[Dart, ...]:
    """Verify that `face` is an actual orbit of d and return its walk."""
    for candidate in _face_orbits(d):
        if candidate == face:
            return face.darts
    raise NotOnFace("face is not a face of this drawing")


def add_chord_in_face(
    d: OnePlanarDrawing,
    face: Face,
    u: int,
    v: int,
    occurrences: tuple[int, int] | None = None,
) -> OnePlanarDrawing:
    """Add uncrossed edge (u, v) inside `face`, splitting it in two.

    By default the first corner occurrences of u and v are joined;
    explicit walk positions may be given instead.  Raises
    WouldCreateBigon when the two occurrences are walk-adjacent (the
    split would leave a two-sided face of parallel edges).
    """
    walk = _check_face(d, face)
    if u == v:
        raise NotOnFace("chord endpoints must differ")
    if occurrences is None:
        pos_u = _walk_positions(d, walk, u)
        pos_v = _walk_positions(d, walk, v)
        if not pos_u or not pos_v:
            raise NotOnFace(f"vertex {u if not pos_u else v} is not a corner of the face")
        i, j = pos_u[0], pos_v[0]
    else:
        i, j = occurrences
        pid_u, pid_v = d.real_pid.get(u), d.real_pid.get(v)
        if d.origin(walk[i]) != pid_u or d.origin(walk[j]) != pid_v:
            raise NotOnFace("occurrence positions do not match the given vertices")
    k = len(walk)
    if (j - i) % k == 1 or (i - j) % k == 1:
        raise WouldCreateBigon(f"chord ({u},{v}) duplicates a face side")
    uu, vv = (u, v) if u < v else (v, u)
    if not d.multi_allowed and (uu, vv) in d.edges:
        raise DuplicateEdge(f"edge ({uu},{vv}) already exists in simple mode")
    b = _Builder(d)
    eid = len(b.edges)
    b.edges.append((uu, vv))
    pu, pv = d.origin(walk[i]), d.origin(walk[j])
    sid = b.new_segment((pu, pv), eid, 0)
    b.insert_before(pu, walk[i], Dart(sid, 0))
    b.insert_before(pv, walk[j], Dart(sid, 1))
    return b.finish()


def insert_vertex_in_face(
    d: OnePlanarDrawing, face: Face, attach: Sequence[int]
) -> OnePlanarDrawing:
    """Insert one new vertex joined to exactly three distinct real corners of `face`."""
    if len(attach) != 3 or len(set(attach)) != 3:
        raise BadAttachment("need three distinct attachment vertices")
    return _insert_vertex_multi(d, face, attach)


def _insert_vertex_multi(
    d: OnePlanarDrawing,
    face: Face,
    attach: Sequence[int],
    positions: Sequence[int] | None = None,
) -> OnePlanarDrawing:
    """Insert a new real vertex joined to k >= 2 corners of `face` (walk order)."""
    walk = _check_face(d, face)
    if positions is None:
        positions = []
        for vid in attach:
            occ = _walk_positions(d, walk, vid)
            if not occ:
                raise BadAttachment(f"vertex {vid} is not a corner of the face")
            positions.append(occ[0])
    pairs = sorted(zip(positions, attach))
    positions = [p for p, _ in pairs]
    attach = [a for _, a in pairs]
    if len(set(positions)) != len(positions) or len(positions) < 2:
        raise BadAttachment("attachments must be distinct corners")

    b = _Builder(d)
    z = b.n_real
    pz = b.new_real()
    spoke_darts: list[Dart] = []
    origin_of = {x: d.origin(x) for x in walk}
    for vid, pos in zip(attach, positions):
        uu, vv = (vid, z) if vid < z else (z, vid)
        eid = len(b.edges)
        b.edges.append((uu, vv))
        pu = origin_of[walk[pos]]
        sid = b.new_segment((pu, pz), eid, 0)
        b.insert_before(pu, walk[pos], Dart(sid, 0))
        spoke_darts.append(Dart(sid, 1))
    b.rotations[pz] = list(reversed(spoke_darts))
    return b.finish()


def add_crossed_edge(
    d: OnePlanarDrawing, u: int, v: int, cross: tuple[int, int]
) -> OnePlanarDrawing:
    """Add edge (u, v) drawn with a single crossing over the uncrossed edge `cross`.

    u must be a corner of a face bounded by `cross`, and v a corner of
    the face on the other side.
    """
    try:
        cross_eid = d.edges.index(tuple(sorted(cross)))
    except ValueError:
        raise NotOnFace(f"edge {cross} not in drawing") from None
    sids = d.edge_segments()[cross_eid]
    if len(sids) != 1:
        raise NotOnFace(f"edge {cross} is already crossed")
    sid_c = sids[0]

    orbits = _face_orbits(d)
    by_dart: dict[Dart, Face] = {}
    for f in orbits:
        for x in f.darts:
            by_dart[x] = f
    face_a = by_dart[Dart(sid_c, 0)]
    face_b = by_dart[Dart(sid_c, 1)]
    if u in face_a.real_corners(d) and v in face_b.real_corners(d):
        pass
    elif u in face_b.real_corners(d) and v in face_a.real_corners(d):
        u, v = v, u
    else:
        raise NotOnFace(
            f"({u},{v}) do not sit on opposite sides of edge {cross}"
        )

    uu, vv = (u, v) if u < v else (v, u)
    if not d.multi_allowed and (uu, vv) in d.edges:
        raise DuplicateEdge(f"edge ({uu},{vv}) already exists in simple mode")

    b = _Builder(d)
    new_eid = len(b.edges)
    b.edges.append((uu, vv))

    # split the crossed segment at a fresh dummy
    seg = d.segments[sid_c]
    pa, pb = seg.ends
    dummy_edges = tuple(sorted((cross_eid, new_eid)))
    pD = len(b.pvertices)
    b.pvertices.append(DummyV(*dummy_edges))
    b.rotations.append([])
    cu, cv = d.edges[cross_eid]
    pid_cu = d.real_pid[cu]
    # part 0 of the crossed edge keeps the smaller original endpoint
    part_a = 0 if pa == pid_cu else 1
    b.segments[sid_c] = Segment((pa, pD), cross_eid, part_a)
    sid_c2 = b.new_segment((pD, pb), cross_eid, 1 - part_a)
    # splice: at pb the old dart is renamed to the new segment
    rot_b = b.rotations[pb]
    rot_b[rot_b.index(Dart(sid_c, 1))] = Dart(sid_c2, 1)
    b.rotations[pD] = [Dart(sid_c, 1), Dart(sid_c2, 0)]

    # the old faces now run through pD; each piece is attached on its own side
    interim = b.finish()

    def attach_piece(drawing: OnePlanarDrawing, vert: int, through: Dart, part: int) -> OnePlanarDrawing:
        face = None
        for f in _face_orbits(drawing):
            if through in f.darts:
                face = f
                break
        assert face is not None
        walk = face.darts
        pos_v = _walk_positions(drawing, walk, vert)
        pos_d = [i for i, x in enumerate(walk) if drawing.origin(x) == pD]
        if not pos_v or not pos_d:
            raise NotOnFace(f"vertex {vert} lost sight of the crossing")
        bb = _Builder(drawing)
        pv_real = drawing.real_pid[vert]
        sid = bb.new_segment((pv_real, pD), new_eid, part)
        bb.insert_before(pv_real, walk[pos_v[0]], Dart(sid, 0))
        bb.insert_before(pD, walk[pos_d[0]], Dart(sid, 1))
        return bb.finish()

    part_for_u = 0 if u == uu else 1
    # u's side runs pa -> pD -> pb; v's side runs pb -> pD -> pa
    step1 = attach_piece(interim, u, Dart(sid_c, 0), part_for_u)
    step2 = attach_piece(step1, v, Dart(sid_c2, 1), 1 - part_for_u)
    return step2


def delete_edges(
    d: OnePlanarDrawing, eids: Iterable[int]
) -> tuple[OnePlanarDrawing, dict[int, int]]:
    """Remove original edges; crossing partners of removed edges become uncrossed.

    Returns the new drawing and the old-eid -> new-eid map for kept edges.
    """
    removed = set(eids)
    for eid in removed:
        if not (0 <= eid < len(d.edges)):
            raise BadVertex(f"edge id {eid} out of range")

    by_edge = d.edge_segments()
    # dummies that disappear: crossing with at least one removed edge
    dead_dummies: set[int] = set()
    merge_partner: dict[int, int] = {}  # partner eid -> its dummy pid
    for pid, pv in enumerate(d.pvertices):
        if isinstance(pv, DummyV):
            a, b = pv.eid_a, pv.eid_b
            if a in removed or b in removed:
                dead_dummies.add(pid)
                for keep, other in ((a, b), (b, a)):
                    if keep not in removed and other in removed:
                        merge_partner[keep] = pid

    eid_map: dict[int, int] = {}
    new_edges: list[tuple[int, int]] = []
    for eid, e in enumerate(d.edges):
        if eid not in removed:
            eid_map[eid] = len(new_edges)
            new_edges.append(e)

    pid_map: dict[int, int] = {}
    new_pvs: list[PVertex] = []
    for pid, pv in enumerate(d.pvertices):
        if pid in dead_dummies:
            continue
        pid_map[pid] = len(new_pvs)
        if isinstance(pv, DummyV):
            new_pvs.append(DummyV(eid_map[pv.eid_a], eid_map[pv.eid_b]))
        else:
            new_pvs.append(pv)

    new_segments: list[Segment] = []
    dart_map: dict[Dart, Dart] = {}
    for old_eid in sorted(eid_map):
        sids = by_edge[old_eid]
        if old_eid in merge_partner:
            # two segments shrink back to one
            dummy = merge_partner[old_eid]
            u, v = d.edges[old_eid]
            pu, pv_ = d.real_pid[u], d.real_pid[v]
            sid_new = len(new_segments)
            new_segments.append(
                Segment((pid_map[pu], pid_map[pv_]), eid_map[old_eid], 0)
            )
            for old_sid in sids:
                seg = d.segments[old_sid]
                for end in (0, 1):
                    p = seg.ends[end]
                    if p == dummy:
                        continue
                    dart_map[Dart(old_sid, end)] = Dart(sid_new, 0 if p == pu else 1)
        else:
            for old_sid in sorted(sids, key=lambda s: d.segments[s].part):
                seg = d.segments[old_sid]
                sid_new = len(new_segments)
                new_segments.append(
                    Segment(
                        (pid_map[seg.ends[0]], pid_map[seg.ends[1]]),
                        eid_map[old_eid],
                        seg.part,
                    )
                )
                dart_map[Dart(old_sid, 0)] = Dart(sid_new, 0)
                dart_map[Dart(old_sid, 1)] = Dart(sid_new, 1)

    new_rotations: list[tuple[Dart, ...]] = []
    for pid in sorted(pid_map):
        rot = []
        for x in d.rotations[pid]:
            if x in dart_map:
                rot.append(dart_map[x])
        new_rotations.append(tuple(rot))

    out = OnePlanarDrawing(
        n_real=d.n_real,
        edges=tuple(new_edges),
        pvertices=tuple(new_pvs),
        segments=tuple(new_segments),
        rotations=tuple(new_rotations),
        multi_allowed=d.multi_allowed,
    )
    return out, eid_map


# ---------------------------------------------------------------------
# constructors


def drawing_from_faces(n: int, face_cycles: Sequence[Sequence[int]]) -> OnePlanarDrawing:
    """Build a planar drawing of a connected simple graph from its face cycles.

    Each face is a cyclic vertex sequence; every edge must be covered by
    exactly two face sides.  Face orientations are reconciled
    automatically (the input may mix clockwise and counterclockwise).
    """
    incidence: dict[frozenset[int], list[int]] = {}
    for fi, cyc in enumerate(face_cycles):
        for i in range(len(cyc)):
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            if u == v:
                raise InvalidDrawing("face cycle repeats a vertex consecutively")
            incidence.setdefault(frozenset((u, v)), []).append(fi)
    for pair, fids in incidence.items():
        if len(fids) != 2:
            raise InvalidDrawing(f"edge {sorted(pair)} covered {len(fids)} times")

    oriented: list[list[int] | None] = [None] * len(face_cycles)
    oriented[0] = list(face_cycles[0])
    queue = [0]
    while queue:
        fi = queue.pop()
        cyc = oriented[fi]
        assert cyc is not None
        arcs = {(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
        for i in range(len(cyc)):
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            other = [f for f in incidence[frozenset((u, v))] if f != fi]
            fj = other[0] if other else fi
            if fj == fi or oriented[fj] is not None:
                if fj != fi and oriented[fj] is not None:
                    cyc_j = oriented[fj]
                    arcs_j = {
                        (cyc_j[k], cyc_j[(k + 1) % len(cyc_j)])
                        for k in range(len(cyc_j))
                    }
                    if (v, u) not in arcs_j:
                        raise InvalidDrawing("face cycles are not orientable")
                continue
            cyc_j = list(face_cycles[fj])
            arcs_j = {(cyc_j[k], cyc_j[(k + 1) % len(cyc_j)]) for k in range(len(cyc_j))}
            if (v, u) in arcs_j:
                oriented[fj] = cyc_j
            else:
                oriented[fj] = list(reversed(cyc_j))
            queue.append(fj)
    if any(c is None for c in oriented):
        raise InvalidDrawing("face set is disconnected")

    # rotation at v: dart to u is immediately followed by dart to w
    # whenever some face runs u, v, w
    succ: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for cyc in oriented:
        assert cyc is not None
        k = len(cyc)
        for i in range(k):
            u, v, w = cyc[i], cyc[(i + 1) % k], cyc[(i + 2) % k]
            if u in succ[v]:
                raise InvalidDrawing(f"vertex {v} has conflicting corners")
            succ[v][u] = w

    edges = sorted(incidence.keys(), key=lambda p: tuple(sorted(p)))
    eid_of = {pair: i for i, pair in enumerate(edges)}
    edge_list = [tuple(sorted(p)) for p in edges]

    rotations: list[tuple[Dart, ...]] = []
    for v in range(n):
        nbrs = succ[v]
        if not nbrs:
            raise InvalidDrawing(f"vertex {v} does not appear on any face")
        order = [next(iter(sorted(nbrs)))]
        while True:
            nxt = nbrs[order[-1]]
            if nxt == order[0]:
                break
            if len(order) > len(nbrs):
                raise InvalidDrawing(f"vertex {v} rotation does not close")
            order.append(nxt)
        if len(order) != len(nbrs):
            raise InvalidDrawing(f"vertex {v} rotation is not a single cycle")
        rot = []
        for w in order:
            eid = eid_of[frozenset((v, w))]
            a, _ = edge_list[eid]
            rot.append(Dart(eid, 0 if v == a else 1))
        rotations.append(tuple(rot))

    segments = tuple(
        Segment((u, v), eid, 0) for eid, (u, v) in enumerate(edge_list)
    )
    return OnePlanarDrawing(
        n_real=n,
        edges=tuple(edge_list),
        pvertices=tuple(RealV(v) for v in range(n)),
        segments=segments,
        rotations=tuple(rotations),
    )


def wedge_at_vertex(a: OnePlanarDrawing, b: OnePlanarDrawing, va: int, vb: int) -> OnePlanarDrawing:
    """Glue drawing b onto drawing a by identifying vb with va.

    b's other real vertices are renumbered to a.n_real, a.n_real+1, ...
    in ascending order of their old ids.  b's edge fan at the shared
    vertex is spliced into one corner of a's rotation there, merging one
    face of each drawing.
    """
    vid_map: dict[int, int] = {vb: va}
    nxt = a.n_real
    for v in range(b.n_real):
        if v != vb:
            vid_map[v] = nxt
            nxt += 1

    builder = _Builder(a)
    builder.n_real = nxt
    eid_off = len(a.edges)
    for u, v in b.edges:
        uu, vv = sorted((vid_map[u], vid_map[v]))
        builder.edges.append((uu, vv))

    pid_map: dict[int, int] = {}
    pid_shared_b = b.real_pid[vb]
    for pid, pv in enumerate(b.pvertices):
        if pid == pid_shared_b:
            pid_map[pid] = a.real_pid[va]
            continue
        pid_map[pid] = len(builder.pvertices)
        if isinstance(pv, DummyV):
            builder.pvertices.append(DummyV(pv.eid_a + eid_off, pv.eid_b + eid_off))
        else:
            builder.pvertices.append(RealV(vid_map[pv.vid]))
        builder.rotations.append([])

    sid_off = len(a.segments)
    for seg in b.segments:
        builder.segments.append(
            Segment(
                (pid_map[seg.ends[0]], pid_map[seg.ends[1]]),
                seg.eid + eid_off,
                seg.part,
            )
        )

    for pid in range(b.n_p):
        mapped = [Dart(x.sid + sid_off, x.end) for x in b.rotations[pid]]
        if pid == pid_shared_b:
            target = builder.rotations[a.real_pid[va]]
            builder.rotations[a.real_pid[va]] = mapped + target
        else:
            builder.rotations[pid_map[pid]] = mapped
    return builder.finish()


# ---------------------------------------------------------------------
# `1pg` text format


def write_drawing(d: OnePlanarDrawing) -> str:
    n_dummy = sum(1 for pv in d.pvertices if isinstance(pv, DummyV))
    lines = [f"1pg {d.n_real} {n_dummy} {d.m_p}"]
    for pid, pv in enumerate(d.pvertices):
        if isinstance(pv, RealV):
            lines.append(f"pv {pid} real {pv.vid}")
        else:
            lines.append(f"pv {pid} dummy {pv.eid_a} {pv.eid_b}")
    for sid, seg in enumerate(d.segments):
        lines.append(f"seg {sid} {seg.ends[0]} {seg.ends[1]} {seg.eid} {seg.part}")
    for pid, rot in enumerate(d.rotations):
        if rot:
            k = min(range(len(rot)), key=lambda i: rot[i])
            canon = rot[k:] + rot[:k]
        else:
            canon = rot
        darts = " ".join(f"{x.sid}.{x.end}" for x in canon)
        lines.append(f"rot {pid}: {darts}".rstrip())
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> OnePlanarDrawing:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].startswith("1pg "):
        raise ParseError("missing 1pg header")
    head = lines[0].split()
    try:
        n_real, n_dummy, n_seg = (int(x) for x in head[1:4])
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad header: {lines[0]!r}") from exc

    pvs: dict[int, PVertex] = {}
    segs: dict[int, Segment] = {}
    rots: dict[int, tuple[Dart, ...]] = {}
    for ln in lines[1:]:
        parts = ln.split()
        try:
            if parts[0] == "pv":
                pid = int(parts[1])
                if parts[2] == "real":
                    pvs[pid] = RealV(int(parts[3]))
                elif parts[2] == "dummy":
                    pvs[pid] = DummyV(int(parts[3]), int(parts[4]))
                else:
                    raise ParseError(f"bad pv line: {ln!r}")
            elif parts[0] == "seg":
                sid = int(parts[1])
                segs[sid] = Segment(
                    (int(parts[2]), int(parts[3])), int(parts[4]), int(parts[5])
                )
            elif parts[0] == "rot":
                pid = int(parts[1].rstrip(":"))
                darts = []
                for tok in parts[2:]:
                    s, e = tok.split(".")
                    darts.append(Dart(int(s), int(e)))
                rots[pid] = tuple(darts)
            else:
                raise ParseError(f"unknown record: {ln!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad line: {ln!r}") from exc

    n_p = n_real + n_dummy
    if sorted(pvs) != list(range(n_p)) or len(segs) != n_seg:
        raise ParseError("record counts disagree with header")
    for pid in range(n_p):
        rots.setdefault(pid, ())

    # recover the edge list from segment endpoints
    eids = {seg.eid for seg in segs.values()}
    if eids and eids != set(range(max(eids) + 1)):
        raise ParseError("edge ids are not dense")
    edge_of: dict[int, tuple[int, int]] = {}
    pvs_t = tuple(pvs[p] for p in range(n_p))
    for seg in segs.values():
        for p in seg.ends:
            if not (0 <= p < n_p):
                raise ParseError(f"segment endpoint {p} out of range")
        reals = [pvs_t[p].vid for p in seg.ends if isinstance(pvs_t[p], RealV)]
        edge_of.setdefault(seg.eid, tuple())
        for r in reals:
            if r not in edge_of[seg.eid]:
                edge_of[seg.eid] = tuple(sorted(edge_of[seg.eid] + (r,)))
    edges = []
    for eid in range(len(eids)):
        if len(edge_of.get(eid, ())) != 2:
            raise ParseError(f"edge {eid} endpoints not recoverable")
        edges.append(edge_of[eid])

    multi = len(set(edges)) != len(edges)
    d = OnePlanarDrawing(
        n_real=n_real,
        edges=tuple(edges),
        pvertices=pvs_t,
        segments=tuple(segs[s] for s in range(n_seg)),
        rotations=tuple(rots[p] for p in range(n_p)),
        multi_allowed=multi,
    )
    report = validate(d)
    if not report.valid:
        raise ParseError("invalid drawing: " + "; ".join(report.violations))
    return d
