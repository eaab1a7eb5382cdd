"""Deterministic constructors for the extremal families with small matchings.

Every family returns a FamilyInstance bundling the graph, a valid
1-planar drawing, the witness set S whose odd components certify the
matching upper bound, and the predicted deficiency/matching numbers.

Vertex id layouts (all documented so witness sets are reproducible):
  * delta3(s):    triangulation on 0..s-1; face j inserts s+3j, s+3j+1, s+3j+2.
  * delta4(s):    quadrangulation on 0..s-1; face j inserts s+2j, s+2j+1.
  * delta4-k5(k): shared edge (0, 1); block i owns 3i+2, 3i+3, 3i+4.
  * delta5/6/7:   hub 0; block i owns (B-1)i+1 .. (B-1)(i+1) for block size B.
  * random:       triangulation on 0..n-1; crossing pair j inserts the next
                  two ids (each chosen face gains two auxiliary vertices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import (
    Dart,
    Face,
    OnePlanarDrawing,
    RealV,
    Segment,
    _face_orbits,
    _insert_vertex_multi,
    add_chord_in_face,
    add_crossed_edge,
    drawing_from_faces,
    insert_vertex_in_face,
    validate,
    wedge_at_vertex,
)
from .errors import BadParity, InvalidDrawing, ParseError, TooManyCrossings, TooSmall
from .graph import Graph, odd_components
from .rng import SplitMix64


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    graph: Graph
    drawing: OnePlanarDrawing
    delta: int
    witness: frozenset[int]
    predicted_deficiency: int
    predicted_matching_upper: int


# ---------------------------------------------------------------------
# face helpers


def _faces_sorted_by_corners(d: OnePlanarDrawing) -> list[Face]:
    return sorted(_face_orbits(d), key=lambda f: tuple(sorted(f.real_corners(d))))


def _face_with_corner_set(d: OnePlanarDrawing, want: set[int]) -> Face:
    for f in _face_orbits(d):
        if set(f.real_corners(d)) == want and len(f.real_corners(d)) == len(want):
            return f
    raise InvalidDrawing(f"no face with corner set {sorted(want)}")


def _triangle_drawing() -> OnePlanarDrawing:
    return drawing_from_faces(3, [[0, 1, 2], [2, 1, 0]])


def _c4_drawing() -> OnePlanarDrawing:
    return drawing_from_faces(4, [[0, 1, 2, 3], [3, 2, 1, 0]])


# ---------------------------------------------------------------------
# planar substrates


def stacked_triangulation(s: int, rng: SplitMix64 | None = None) -> OnePlanarDrawing:
    """Planar triangulation on s vertices grown by repeated face splitting.

    Deterministic (smallest-corner face first) unless an rng picks faces.
    """
    if s < 3:
        raise TooSmall(f"triangulation needs s >= 3, got {s}")
    d = _triangle_drawing()
    for _ in range(3, s):
        fs = _faces_sorted_by_corners(d)
        face = fs[rng.below(len(fs))] if rng is not None else fs[0]
        d = insert_vertex_in_face(d, face, list(face.real_corners(d)))
    return d


def stacked_quadrangulation(s: int) -> OnePlanarDrawing:
    """Planar quadrangulation on s vertices (s even) grown from C4.

    Each step adds a vertex joined to two opposite corners of the
    smallest-corner face, splitting one quad into two.
    """
    if s < 4:
        raise TooSmall(f"quadrangulation needs s >= 4, got {s}")
    if s % 2 != 0:
        raise BadParity(f"quadrangulation size must be even, got {s}")
    d = _c4_drawing()
    for _ in range(4, s):
        face = _faces_sorted_by_corners(d)[0]
        corners = face.real_corners(d)
        pick = min(range(4), key=lambda i: corners[i])
        d = _insert_vertex_multi(d, face, [corners[pick], corners[(pick + 2) % 4]])
    return d


# ---------------------------------------------------------------------
# per-face insertion patterns


def _fill_triangle(d: OnePlanarDrawing, face: Face) -> OnePlanarDrawing:
    """Insert three vertices adjacent to all corners of a triangular face.

    Canonical pattern: each new vertex hangs off one side of the
    triangle with two uncrossed legs; the three remaining legs cross one
    leg of the next vertex around, giving three crossings per face.
    """
    c0, c1, c2 = face.real_corners(d)
    a = d.n_real
    d = _insert_vertex_multi(d, face, [c0, c1])
    b = d.n_real
    d = _insert_vertex_multi(d, _face_with_corner_set(d, {c0, c1, c2, a}), [c1, c2])
    c = d.n_real
    d = _insert_vertex_multi(d, _face_with_corner_set(d, {c0, c1, c2, a, b}), [c2, c0])
    d = add_crossed_edge(d, b, c0, (a, c1))
    d = add_crossed_edge(d, c, c1, (b, c2))
    d = add_crossed_edge(d, a, c2, (c, c0))
    return d


def _fill_quad(d: OnePlanarDrawing, face: Face) -> OnePlanarDrawing:
    """Insert two vertices adjacent to all corners of a quadrilateral face.

    The first vertex's four legs are uncrossed; the second vertex sits
    in one corner cell and sends two legs across them.
    """
    c0, c1, c2, c3 = face.real_corners(d)
    a = d.n_real
    d = _insert_vertex_multi(d, face, [c0, c1, c2, c3])
    b = d.n_real
    d = _insert_vertex_multi(d, _face_with_corner_set(d, {c0, c1, a}), [c0, c1])
    d = add_crossed_edge(d, b, c2, (a, c1))
    d = add_crossed_edge(d, b, c3, (a, c0))
    return d


def _cross_quad_face(d: OnePlanarDrawing, face: Face) -> OnePlanarDrawing:
    """Add both diagonals of a quadrilateral face, crossing inside it."""
    w = face.real_corners(d)
    if len(w) != 4 or len(set(w)) != 4:
        raise InvalidDrawing(f"not a quadrilateral face: {w}")
    d = add_chord_in_face(d, face, w[0], w[2])
    return add_crossed_edge(d, w[1], w[3], (min(w[0], w[2]), max(w[0], w[2])))


# ---------------------------------------------------------------------
# extremal families


def family_delta3(s: int) -> FamilyInstance:
    """Triangulation on s vertices plus three degree-3 vertices per face."""
    if s < 4:
        raise TooSmall(f"family delta3 needs s >= 4, got {s}")
    d = stacked_triangulation(s)
    for face in _faces_sorted_by_corners(d):
        d = _fill_triangle(d, face)
    n = 7 * s - 12
    inst = FamilyInstance(
        name=f"delta3-s{s}",
        graph=d.graph(),
        drawing=d,
        delta=3,
        witness=frozenset(range(s)),
        predicted_deficiency=5 * s - 12,
        predicted_matching_upper=s,
    )
    assert inst.graph.n == n
    return inst


def family_delta4(s: int) -> FamilyInstance:
    """Quadrangulation on s vertices plus two degree-4 vertices per face."""
    if s < 4:
        raise TooSmall(f"family delta4 needs s >= 4, got {s}")
    d = stacked_quadrangulation(s)
    for face in _faces_sorted_by_corners(d):
        d = _fill_quad(d, face)
    n = 3 * s - 4
    inst = FamilyInstance(
        name=f"delta4-s{s}",
        graph=d.graph(),
        drawing=d,
        delta=4,
        witness=frozenset(range(s)),
        predicted_deficiency=s - 4,
        predicted_matching_upper=s,
    )
    assert inst.graph.n == n
    return inst


def _k2_drawing() -> OnePlanarDrawing:
    return OnePlanarDrawing(
        n_real=2,
        edges=((0, 1),),
        pvertices=(RealV(0), RealV(1)),
        segments=(Segment((0, 1), 0, 0),),
        rotations=((Dart(0, 0),), (Dart(0, 1),)),
    )


def family_delta4_k5(k: int) -> FamilyInstance:
    """k copies of K5 glued along the shared edge (0, 1)."""
    if k < 1:
        raise TooSmall(f"family delta4-k5 needs k >= 1, got {k}")
    d = _k2_drawing()
    for i in range(k):
        p1, p3, p2 = 3 * i + 2, 3 * i + 3, 3 * i + 4
        # each block grows on the side of the (0,1) segment's first dart
        sid01 = next(s for s, seg in enumerate(d.segments) if seg.eid == 0)
        face = next(f for f in _face_orbits(d) if Dart(sid01, 0) in f.darts)
        d = _insert_vertex_multi(d, face, [0, 1])  # p1
        face = next(f for f in _face_orbits(d) if Dart(sid01, 0) in f.darts)
        d = _insert_vertex_multi(d, face, [0, 1])  # p3
        rim = _face_with_corner_set(d, {0, 1, p1, p3})
        d = _insert_vertex_multi(d, rim, list(rim.real_corners(d)))  # p2
        d = add_crossed_edge(d, p1, p3, (0, p2))
        assert d.n_real == 3 * i + 5
    n = 3 * k + 2
    return FamilyInstance(
        name=f"delta4-k5-k{k}",
        graph=d.graph(),
        drawing=d,
        delta=4,
        witness=frozenset({0, 1}),
        predicted_deficiency=k - 2,
        predicted_matching_upper=(n - (k - 2)) // 2,
    )


def k6_drawing() -> OnePlanarDrawing:
    """The canonical 1-planar K6: triangular prism plus crossed quad diagonals."""
    d = drawing_from_faces(
        6,
        [[0, 1, 2], [3, 4, 5], [0, 1, 4, 3], [1, 2, 5, 4], [2, 0, 3, 5]],
    )
    for quad in ({0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}):
        d = _cross_quad_face(d, _face_with_corner_set(d, quad))
    return d


def cube_block_drawing() -> OnePlanarDrawing:
    """Cube plus both diagonals of each of its six faces (6-regular, 24 edges)."""
    quads = [
        [0, 1, 3, 2],
        [4, 6, 7, 5],
        [0, 4, 5, 1],
        [2, 3, 7, 6],
        [0, 2, 6, 4],
        [1, 5, 7, 3],
    ]
    d = drawing_from_faces(8, quads)
    for q in quads:
        d = _cross_quad_face(d, _face_with_corner_set(d, set(q)))
    return d


def mindeg7_block_drawing() -> OnePlanarDrawing:
    """24-vertex 7-regular simple 1-planar block.

    Skeleton: the 4-regular planar graph whose faces are 8 triangles and
    18 squares (one triangle per cube corner, one square per cube face
    and per cube edge; 24 vertices indexed 3*corner + axis).  Adding
    both diagonals inside every square raises all degrees to 7 while
    keeping one crossing per square.
    """

    def vid(c: int, a: int) -> int:
        return 3 * c + a

    tri = [[vid(c, 0), vid(c, 1), vid(c, 2)] for c in range(8)]
    axial = []
    for s in (0, 1):
        axial.append([vid(s, 0), vid(s + 2, 0), vid(s + 6, 0), vid(s + 4, 0)])
        axial.append([vid(2 * s, 1), vid(2 * s + 1, 1), vid(2 * s + 5, 1), vid(2 * s + 4, 1)])
        axial.append([vid(4 * s, 2), vid(4 * s + 1, 2), vid(4 * s + 3, 2), vid(4 * s + 2, 2)])
    edgesq = []
    for c in range(8):
        for a in range(3):
            c2 = c ^ (1 << a)
            if c < c2:
                b1, b2 = [x for x in range(3) if x != a]
                edgesq.append([vid(c, b1), vid(c, b2), vid(c2, b2), vid(c2, b1)])
    squares = axial + edgesq
    d = drawing_from_faces(24, tri + squares)
    for q in squares:
        d = _cross_quad_face(d, _face_with_corner_set(d, set(q)))
    return d


def _hub_family(
    name: str, block: OnePlanarDrawing, g: int, delta: int
) -> FamilyInstance:
    if g < 1:
        raise TooSmall(f"family {name} needs g >= 1, got {g}")
    d = block
    for _ in range(1, g):
        d = wedge_at_vertex(d, block, 0, 0)
    n = d.n_real
    block_n = block.n_real
    assert n == (block_n - 1) * g + 1
    deficiency = g - 1
    return FamilyInstance(
        name=f"{name}-g{g}",
        graph=d.graph(),
        drawing=d,
        delta=delta,
        witness=frozenset({0}),
        predicted_deficiency=deficiency,
        predicted_matching_upper=(n - deficiency) // 2,
    )


def family_delta5(g: int) -> FamilyInstance:
    """g complete graphs K6 sharing the hub vertex 0."""
    return _hub_family("delta5", k6_drawing(), g, 5)


def family_delta6(g: int) -> FamilyInstance:
    """g cube-plus-diagonals blocks sharing the hub vertex 0."""
    return _hub_family("delta6", cube_block_drawing(), g, 6)


def family_delta7(g: int) -> FamilyInstance:
    """g 24-vertex 7-regular blocks sharing the hub vertex 0."""
    return _hub_family("delta7", mindeg7_block_drawing(), g, 7)


FAMILIES = {
    "delta3": (family_delta3, "s"),
    "delta4": (family_delta4, "s"),
    "delta4-k5": (family_delta4_k5, "k"),
    "delta5": (family_delta5, "g"),
    "delta6": (family_delta6, "g"),
    "delta7": (family_delta7, "g"),
}


# ---------------------------------------------------------------------
# random corpus generator


def random_oneplanar(n: int, crossings: int, seed: int) -> OnePlanarDrawing:
    """Seeded random stacked triangulation plus disjoint crossing pairs.

    Each of the `crossings` chosen faces receives two auxiliary vertices
    and one crossing pair of new chords, so the result has n + 2*crossings
    real vertices.  Deterministic in (n, crossings, seed).
    """
    if n < 4:
        raise TooSmall(f"random drawing needs n >= 4, got {n}")
    rng = SplitMix64(seed)
    d = stacked_triangulation(n, rng)
    fs = _faces_sorted_by_corners(d)
    if crossings > len(fs):
        raise TooManyCrossings(f"{crossings} crossings but only {len(fs)} faces")
    chosen = rng.sample_indices(len(fs), crossings)
    for fi in chosen:
        face = fs[fi]
        u, v, w = face.real_corners(d)
        z = d.n_real
        d = _insert_vertex_multi(d, face, [u, v])
        y = d.n_real
        d = _insert_vertex_multi(d, _face_with_corner_set(d, {u, v, w, z}), [w, z])
        quad = _face_with_corner_set(d, {w, u, z, y})
        d = add_chord_in_face(d, quad, z, w)
        d = add_crossed_edge(d, u, y, (min(z, w), max(z, w)))
    return d


# ---------------------------------------------------------------------
# witness sidecar format


def write_witness(inst: FamilyInstance) -> str:
    s = " ".join(str(v) for v in sorted(inst.witness))
    return (
        f"S: {s}\n"
        f"deficiency: {inst.predicted_deficiency}\n"
        f"matching_upper: {inst.predicted_matching_upper}\n"
    )


def parse_witness(text: str) -> tuple[frozenset[int], int, int]:
    s: frozenset[int] | None = None
    deficiency = upper = None
    for ln in text.split("\n"):
        ln = ln.strip()
        if not ln:
            continue
        try:
            if ln.startswith("S:"):
                s = frozenset(int(x) for x in ln[2:].split())
            elif ln.startswith("deficiency:"):
                deficiency = int(ln.split(":", 1)[1])
            elif ln.startswith("matching_upper:"):
                upper = int(ln.split(":", 1)[1])
            else:
                raise ParseError(f"unknown witness line: {ln!r}")
        except ValueError as exc:
            raise ParseError(f"bad witness line: {ln!r}") from exc
    if s is None or deficiency is None or upper is None:
        raise ParseError("witness file incomplete")
    return s, deficiency, upper


def check_instance(inst: FamilyInstance) -> list[str]:
    """Verify the four FamilyInstance invariants; returns violations."""
    from .graph import min_degree

    bad = []
    if min_degree(inst.graph) != inst.delta:
        bad.append(f"min degree {min_degree(inst.graph)} != delta {inst.delta}")
    report = validate(inst.drawing)
    if not report.valid:
        bad.extend(report.violations)
    if inst.drawing.multi_allowed:
        bad.append("family drawing must be simple mode")
    count, _ = odd_components(inst.graph, inst.witness)
    if count - len(inst.witness) != inst.predicted_deficiency:
        bad.append(
            f"witness deficiency {count - len(inst.witness)} != predicted "
            f"{inst.predicted_deficiency}"
        )
    want_upper = (inst.graph.n - inst.predicted_deficiency) // 2
    if inst.predicted_matching_upper != want_upper:
        bad.append(f"matching upper {inst.predicted_matching_upper} != {want_upper}")
    return bad
