"""Bistellar rewriting: interior Pachner moves and boundary moves.

Seven kinds.  P14 splits a tet at an interior point; P23 replaces two tets
sharing an interior face by three around a new edge; P41/P32 are their
inverses.  B13 splits a boundary face towards the opposite apex, B31
undoes it, and B22 flips the diagonal of a boundary square pyramid (two
tets around an edge whose other two faces lie on the boundary).  Count
deltas (vertices, edges, faces, tets):

    P14 (+1,+4,+6,+3)   P23 (0,+1,+2,+1)   B13 (+1,+4,+5,+2)   B22 (0,0,0,0)

with inverses negating them.

The cone moves P14/B13 (and their inverses) are pure slot surgery and work
on singular targets too.  P23, P32 and B22 build new simplices out of
existing vertices and therefore require embedded configurations: the
corner vertices involved must be pairwise distinct.  Every precondition
failure raises MoveError with a witness.

New entities are appended after the surviving ones, so e.g. the edge
created by P23 is the last edge of the result; new vertices must be larger
than all existing ids, extending the total order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import ComplexBuilder, OrderedComplex

MOVE_KINDS = ("P14", "P41", "P23", "P32", "B13", "B31", "B22")

MOVE_DELTAS = {
    "P14": (1, 4, 6, 3),
    "P41": (-1, -4, -6, -3),
    "P23": (0, 1, 2, 1),
    "P32": (0, -1, -2, -1),
    "B13": (1, 4, 5, 2),
    "B31": (-1, -4, -5, -2),
    "B22": (0, 0, 0, 0),
}

INVERSE_KIND = {
    "P14": "P41", "P41": "P14",
    "P23": "P32", "P32": "P23",
    "B13": "B31", "B31": "B13",
    "B22": "B22",
}


class MoveError(ValueError):
    """Move precondition violated; the message names the witness."""


@dataclass(frozen=True)
class MoveDescriptor:
    """kind plus its target: a tet index for P14, face for P23/B13, edge for
    P32/B22, vertex id for P41/B31.  new_vertex applies to P14/B13."""

    kind: str
    target: int
    new_vertex: int | None = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")


def apply(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    handler = {
        "P14": _apply_p14,
        "P41": _apply_p41,
        "P23": _apply_p23,
        "P32": _apply_p32,
        "B13": _apply_b13,
        "B31": _apply_b31,
        "B22": _apply_b22,
    }[m.kind]
    return handler(c, m)


def enumerate_applicable(c: OrderedComplex, kind: str) -> list[MoveDescriptor]:
    """Every descriptor of the given kind whose precondition holds."""
    fresh = (max(c.vertices) + 1) if c.vertices else 0
    candidates: list[MoveDescriptor]
    if kind == "P14":
        candidates = [MoveDescriptor(kind, t, fresh) for t in range(len(c.tets))]
    elif kind == "B13":
        candidates = [MoveDescriptor(kind, f, fresh) for f in c.boundary_face_indices()]
    elif kind == "P23":
        candidates = [MoveDescriptor(kind, f) for f in range(len(c.faces))
                      if not c.is_boundary_face(f)]
    elif kind == "P32" or kind == "B22":
        candidates = [MoveDescriptor(kind, e) for e in range(len(c.edges))]
    elif kind == "P41" or kind == "B31":
        candidates = [MoveDescriptor(kind, v) for v in c.vertices]
    else:
        raise MoveError(f"unknown move kind {kind!r}")
    out = []
    for m in candidates:
        try:
            apply(c, m)
        except MoveError:
            continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# shared machinery
# ---------------------------------------------------------------------------

def _rebuild(c: OrderedComplex, drop_vertices=(), drop_edges=(), drop_faces=(), drop_tets=()):
    """Copy the complex minus the dropped entities; returns the builder and
    the old->new edge/face index maps."""
    drop_edges = set(drop_edges)
    drop_faces = set(drop_faces)
    drop_tets = set(drop_tets)
    drop_vertices = set(drop_vertices)
    b = ComplexBuilder()
    for v in c.vertices:
        if v not in drop_vertices:
            b.add_vertex(v)
    edge_map = {}
    for e, (t, h) in enumerate(c.edges):
        if e not in drop_edges:
            edge_map[e] = b.add_edge(t, h)
    face_map = {}
    for f, (e01, e02, e12) in enumerate(c.faces):
        if f not in drop_faces:
            face_map[f] = b.add_face(edge_map[e01], edge_map[e02], edge_map[e12])
    for t, slots in enumerate(c.tets):
        if t not in drop_tets:
            b.add_tet(*(face_map[s] for s in slots))
    return b, edge_map, face_map


def _fresh_vertex(c: OrderedComplex, m: MoveDescriptor) -> int:
    top = max(c.vertices) if c.vertices else -1
    w = m.new_vertex if m.new_vertex is not None else top + 1
    if w <= top:
        raise MoveError(f"new vertex {w} must exceed every existing id (max {top})")
    return w


def _face_consistent(edges, e01, e02, e12) -> bool:
    return (edges[e01][0] == edges[e02][0]
            and edges[e01][1] == edges[e12][0]
            and edges[e02][1] == edges[e12][1])


def _assemble_face(b: ComplexBuilder, candidates) -> int:
    """Add a face from three edge entities, finding a slot order that is
    endpoint-consistent.  Deterministic: first consistent permutation wins."""
    edges = b._edges
    for e01, e02, e12 in itertools.permutations(candidates):
        if _face_consistent(edges, e01, e02, e12):
            return b.add_face(e01, e02, e12)
    raise MoveError(f"edges {tuple(candidates)} admit no consistent face ordering")


def _assemble_tet(b: ComplexBuilder, candidates) -> int:
    """Add a tet from four face entities, trying slot assignments."""
    faces = b._faces
    for f012, f013, f023, f123 in itertools.permutations(candidates):
        if (faces[f012][0] == faces[f013][0]
                and faces[f012][1] == faces[f023][0]
                and faces[f013][1] == faces[f023][1]
                and faces[f012][2] == faces[f123][0]
                and faces[f013][2] == faces[f123][1]
                and faces[f023][2] == faces[f123][2]):
            return b.add_tet(f012, f013, f023, f123)
    raise MoveError(f"faces {tuple(candidates)} admit no consistent tet ordering")


_TET_EDGE_POSITIONS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_APEX_OF_SLOT = {0: 3, 1: 2, 2: 1, 3: 0}  # face slot index -> opposite corner
_SLOT_CORNERS = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _cone_faces(b, edge_of_position_pair, ce):
    """One new face per tet edge slot: the cone of that edge to the new
    vertex (P14 cones all four face slots afterwards, B13 all but one)."""
    cf = {}
    for p, q in _TET_EDGE_POSITIONS:
        cf[(p, q)] = b.add_face(edge_of_position_pair[(p, q)], ce[p], ce[q])
    return cf


# ---------------------------------------------------------------------------
# P14 / P41
# ---------------------------------------------------------------------------

def _apply_p14(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    t = m.target
    if not 0 <= t < len(c.tets):
        raise MoveError(f"no tet {t}")
    w = _fresh_vertex(c, m)
    b, edge_map, face_map = _rebuild(c, drop_tets={t})
    locs = c.tet_locals[t]
    ce = [b.add_edge(locs[p], w) for p in range(4)]
    edge_of_pair = {pq: edge_map[e] for pq, e in zip(_TET_EDGE_POSITIONS, c.tet_edge_slots(t))}
    cf = _cone_faces(b, edge_of_pair, ce)
    for slot, corners in enumerate(_SLOT_CORNERS):
        p, q, r = corners
        b.add_tet(face_map[c.tets[t][slot]], cf[(p, q)], cf[(p, r)], cf[(q, r)])
    return b.build()


def _star_of_vertex(c: OrderedComplex, v: int):
    tets = [t for t in range(len(c.tets)) if v in c.tet_locals[t]]
    edges = [e for e, (tail, head) in enumerate(c.edges) if v in (tail, head)]
    faces = [f for f in range(len(c.faces)) if v in c.face_locals[f]]
    return tets, edges, faces


def _apply_p41(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    v = m.target
    if v not in c.vertices:
        raise MoveError(f"no vertex {v}")
    tets, edges, faces = _star_of_vertex(c, v)
    if len(tets) != 4 or len(edges) != 4 or len(faces) != 6:
        raise MoveError(
            f"vertex {v} has star ({len(tets)} tets, {len(edges)} edges, "
            f"{len(faces)} faces); P41 needs (4, 4, 6)")
    if any(c.is_boundary_face(f) for f in faces):
        raise MoveError(f"vertex {v} lies on the boundary")
    outer = []
    for t in tets:
        free = [f for f in c.tets[t] if v not in c.face_locals[f]]
        if len(set(free)) != 1:
            raise MoveError(f"tet {t} does not have a single face opposite {v}")
        outer.append(free[0])
    if len(set(outer)) != 4:
        raise MoveError(f"outer faces around {v} are not distinct")
    b, edge_map, face_map = _rebuild(
        c, drop_vertices={v}, drop_edges=edges, drop_faces=faces, drop_tets=tets)
    _assemble_tet(b, [face_map[f] for f in outer])
    return b.build()


# ---------------------------------------------------------------------------
# P23 / P32
# ---------------------------------------------------------------------------

def _tet_face_by_vertexset(c: OrderedComplex, t: int, want: frozenset[int]) -> int:
    hits = [f for f in set(c.tets[t]) if frozenset(c.face_locals[f]) == want]
    if len(hits) != 1:
        raise MoveError(f"tet {t} has no unique face with vertices {set(want)}")
    return hits[0]


def _tet_edge_by_vertexset(c: OrderedComplex, t: int, want: frozenset[int]) -> int:
    hits = {e for e in c.tet_edge_slots(t) if frozenset(c.edges[e]) == want}
    if len(hits) != 1:
        raise MoveError(f"tet {t} has no unique edge with vertices {set(want)}")
    return hits.pop()


def _apply_p23(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    f = m.target
    if not 0 <= f < len(c.faces):
        raise MoveError(f"no face {f}")
    inc = c.face_incidence[f]
    if len(inc) != 2:
        raise MoveError(f"face {f} lies in {len(inc)} tet slots; P23 needs an interior face")
    (t1, s1), (t2, s2) = inc
    if t1 == t2:
        raise MoveError(f"face {f} is glued to tet {t1} twice")
    a, bb, cc = c.face_locals[f]
    d = c.tet_locals[t1][_APEX_OF_SLOT[s1]]
    e = c.tet_locals[t2][_APEX_OF_SLOT[s2]]
    corners = (a, bb, cc, d, e)
    if len(set(corners)) != 5:
        raise MoveError(f"P23 configuration at face {f} is not embedded: corners {corners}")

    b, edge_map, face_map = _rebuild(c, drop_faces={f}, drop_tets={t1, t2})
    de = b.add_edge(min(d, e), max(d, e))
    side = {}
    for x in (a, bb, cc):
        xd = edge_map[_tet_edge_by_vertexset(c, t1, frozenset({x, d}))]
        xe = edge_map[_tet_edge_by_vertexset(c, t2, frozenset({x, e}))]
        side[x] = _assemble_face(b, (xd, xe, de))
    for x, y in ((a, bb), (a, cc), (bb, cc)):
        fxy_d = face_map[_tet_face_by_vertexset(c, t1, frozenset({x, y, d}))]
        fxy_e = face_map[_tet_face_by_vertexset(c, t2, frozenset({x, y, e}))]
        _assemble_tet(b, (fxy_d, fxy_e, side[x], side[y]))
    return b.build()


def _apply_p32(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    x = m.target
    if not 0 <= x < len(c.edges):
        raise MoveError(f"no edge {x}")
    d, e = c.edges[x]
    around_faces = [f for f in range(len(c.faces)) if x in c.faces[f]]
    around_tets = [t for t in range(len(c.tets)) if x in c.tet_edge_slots(t)]
    if len(around_faces) != 3 or len(around_tets) != 3:
        raise MoveError(
            f"edge {x} has {len(around_faces)} faces and {len(around_tets)} tets "
            f"around it; P32 needs exactly 3 of each")
    if any(c.is_boundary_face(f) for f in around_faces):
        raise MoveError(f"edge {x} touches the boundary")
    outer_corners = []
    for f in around_faces:
        rest = [v for v in c.face_locals[f] if v not in (d, e)]
        if len(rest) != 1:
            raise MoveError(f"face {f} around edge {x} is not embedded")
        outer_corners.append(rest[0])
    corners = (d, e, *outer_corners)
    if len(set(corners)) != 5:
        raise MoveError(f"P32 configuration at edge {x} is not embedded: corners {corners}")
    aa, bb, cc = outer_corners

    # match tets to corner pairs and collect outer faces/edges
    pair_of_tet = {}
    for t in around_tets:
        vs = set(c.tet_locals[t])
        pair = frozenset(vs - {d, e})
        if len(vs) != 4 or len(pair) != 2 or not pair <= {aa, bb, cc}:
            raise MoveError(f"tet {t} around edge {x} is not part of a bipyramid")
        pair_of_tet[t] = pair
    if set(pair_of_tet.values()) != {frozenset(p) for p in
                                     ((aa, bb), (aa, cc), (bb, cc))}:
        raise MoveError(f"tets around edge {x} do not form a bipyramid")

    base_edges = {}
    for t, pair in pair_of_tet.items():
        base_edges[pair] = _tet_edge_by_vertexset(c, t, pair)
    outer_face = {}
    for t, pair in pair_of_tet.items():
        for apex in (d, e):
            outer_face[(pair, apex)] = _tet_face_by_vertexset(
                c, t, frozenset(pair | {apex}))

    b, edge_map, face_map = _rebuild(
        c, drop_edges={x}, drop_faces=set(around_faces), drop_tets=set(around_tets))
    base = _assemble_face(b, tuple(edge_map[base_edges[p]] for p in
                                   (frozenset((aa, bb)), frozenset((aa, cc)),
                                    frozenset((bb, cc)))))
    for apex in (d, e):
        fs = [face_map[outer_face[(frozenset(pr), apex)]]
              for pr in ((aa, bb), (aa, cc), (bb, cc))]
        _assemble_tet(b, (base, *fs))
    return b.build()


# ---------------------------------------------------------------------------
# B13 / B31
# ---------------------------------------------------------------------------

def _apply_b13(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    f = m.target
    if not 0 <= f < len(c.faces):
        raise MoveError(f"no face {f}")
    inc = c.face_incidence[f]
    if len(inc) != 1:
        raise MoveError(f"face {f} lies in {len(inc)} tet slots; B13 needs a boundary face")
    (t, slot) = inc[0]
    w = _fresh_vertex(c, m)
    b, edge_map, face_map = _rebuild(c, drop_faces={f}, drop_tets={t})
    locs = c.tet_locals[t]
    ce = [b.add_edge(locs[p], w) for p in range(4)]
    edge_of_pair = {pq: edge_map[e] for pq, e in zip(_TET_EDGE_POSITIONS, c.tet_edge_slots(t))}
    cf = _cone_faces(b, edge_of_pair, ce)
    for s, corners in enumerate(_SLOT_CORNERS):
        if s == slot:
            continue  # the split face is replaced, not coned over
        p, q, r = corners
        b.add_tet(face_map[c.tets[t][s]], cf[(p, q)], cf[(p, r)], cf[(q, r)])
    return b.build()


def _apply_b31(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    v = m.target
    if v not in c.vertices:
        raise MoveError(f"no vertex {v}")
    tets, edges, faces = _star_of_vertex(c, v)
    if len(tets) != 3 or len(edges) != 4 or len(faces) != 6:
        raise MoveError(
            f"vertex {v} has star ({len(tets)} tets, {len(edges)} edges, "
            f"{len(faces)} faces); B31 needs (3, 4, 6)")
    bdry = [f for f in faces if c.is_boundary_face(f)]
    if len(bdry) != 3:
        raise MoveError(f"vertex {v} lies in {len(bdry)} boundary faces; B31 needs 3")
    # each boundary face contributes its edge not touching v
    rim = []
    for f in bdry:
        free = [e for e in c.faces[f] if v not in c.edges[e]]
        if len(set(free)) != 1:
            raise MoveError(f"boundary face {f} at {v} has no unique rim edge")
        rim.append(free[0])
    if len(set(rim)) != 3:
        raise MoveError(f"rim edges around {v} are not distinct")
    outer = []
    for t in tets:
        free = [f for f in c.tets[t] if v not in c.face_locals[f]]
        if len(set(free)) != 1:
            raise MoveError(f"tet {t} does not have a single face opposite {v}")
        outer.append(free[0])
    if len(set(outer)) != 3:
        raise MoveError(f"outer faces around {v} are not distinct")
    b, edge_map, face_map = _rebuild(
        c, drop_vertices={v}, drop_edges=edges, drop_faces=faces, drop_tets=tets)
    base = _assemble_face(b, tuple(edge_map[e] for e in rim))
    _assemble_tet(b, (base, *(face_map[f] for f in outer)))
    return b.build()


# ---------------------------------------------------------------------------
# B22
# ---------------------------------------------------------------------------

def _face_corner_opposite_edge(c: OrderedComplex, f: int, e: int) -> int:
    e01, e02, e12 = c.faces[f]
    if e == e01:
        return c.face_locals[f][2]
    if e == e02:
        return c.face_locals[f][1]
    if e == e12:
        return c.face_locals[f][0]
    raise MoveError(f"edge {e} is not a slot of face {f}")


def _apply_b22(c: OrderedComplex, m: MoveDescriptor) -> OrderedComplex:
    x = m.target
    if not 0 <= x < len(c.edges):
        raise MoveError(f"no edge {x}")
    d_tail, d_head = c.edges[x]
    around_faces = [f for f in range(len(c.faces)) if x in c.faces[f]]
    around_tets = [t for t in range(len(c.tets)) if x in c.tet_edge_slots(t)]
    if len(around_tets) != 2 or len(around_faces) != 3:
        raise MoveError(
            f"edge {x} has {len(around_faces)} faces and {len(around_tets)} tets; "
            f"B22 needs 3 and 2")
    t1, t2 = around_tets
    shared = [f for f in around_faces if not c.is_boundary_face(f)
              and f in c.tets[t1] and f in c.tets[t2]]
    wings = [f for f in around_faces if c.is_boundary_face(f)]
    if len(shared) != 1 or len(wings) != 2:
        raise MoveError(
            f"edge {x} needs one shared interior face and two boundary faces, "
            f"got {len(shared)} and {len(wings)}")
    f_sh = shared[0]
    f_q = wings[0] if wings[0] in c.tets[t1] else wings[1]
    f_r = wings[1] if f_q == wings[0] else wings[0]
    if f_q not in c.tets[t1] or f_r not in c.tets[t2]:
        raise MoveError(f"boundary faces around edge {x} are not one per tet")

    p = _face_corner_opposite_edge(c, f_sh, x)
    q = _face_corner_opposite_edge(c, f_q, x)
    r = _face_corner_opposite_edge(c, f_r, x)
    corners = (d_tail, d_head, p, q, r)
    if len(set(corners)) != 5:
        raise MoveError(f"B22 configuration at edge {x} is not embedded: corners {corners}")

    surv1 = {y: _tet_face_by_vertexset(c, t1, frozenset({p, y, q})) for y in (d_tail, d_head)}
    surv2 = {y: _tet_face_by_vertexset(c, t2, frozenset({p, y, r})) for y in (d_tail, d_head)}
    pq = _tet_edge_by_vertexset(c, t1, frozenset({p, q}))
    pr = _tet_edge_by_vertexset(c, t2, frozenset({p, r}))
    yq = {y: _tet_edge_by_vertexset(c, t1, frozenset({y, q})) for y in (d_tail, d_head)}
    yr = {y: _tet_edge_by_vertexset(c, t2, frozenset({y, r})) for y in (d_tail, d_head)}

    b, edge_map, face_map = _rebuild(
        c, drop_edges={x}, drop_faces={f_sh, f_q, f_r}, drop_tets={t1, t2})
    qr = b.add_edge(min(q, r), max(q, r))
    mid = _assemble_face(b, (edge_map[pq], edge_map[pr], qr))
    new_wing = {}
    for y in (d_tail, d_head):
        new_wing[y] = _assemble_face(b, (edge_map[yq[y]], edge_map[yr[y]], qr))
    for y in (d_tail, d_head):
        _assemble_tet(b, (face_map[surv1[y]], face_map[surv2[y]], mid, new_wing[y]))
    return b.build()
