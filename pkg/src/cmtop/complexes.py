"""Ordered Δ-complexes for triangulated compact 3-manifolds with boundary.

The internal representation is slot-based: an edge is a (tail, head) pair of
vertex ids, a face is three edge slots (01),(02),(12), a tet is four face
slots (012),(013),(023),(123).  Slots must agree on shared sub-simplices,
which is checked at construction.  Simplicial complexes (distinct vertices,
everything determined by vertex subsets) are a constructor view on top;
singular triangulations with identified simplices, parallel edges and loops
are first-class, because the fixtures for D²×S¹ and S²×[0,1] need them.

Local vertex order of a simplex is carried by its slot structure, never
recomputed from vertex ids, so identified vertices are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "OrderedComplex",
    "ComplexBuilder",
    "ComplexStructureError",
    "Boundary2Complex",
    "SimplexCounts",
    "from_tet_list",
    "boundary",
    "validate_manifold_basics",
    "relabel",
    "disjoint_union",
    "prism_product",
    "are_isomorphic",
]


class ComplexStructureError(ValueError):
    """Slot tables are inconsistent (not a Δ-complex at all)."""


@dataclass(frozen=True)
class SimplexCounts:
    k0: int
    k1: int
    k2: int
    k3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k0, self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class OrderedComplex:
    """An ordered Δ-complex.  Immutable; moves produce new complexes."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int, int], ...]
    tets: tuple[tuple[int, int, int, int], ...]
    # derived, filled by ComplexBuilder.build()
    face_locals: tuple[tuple[int, int, int], ...] = field(repr=False, default=())
    tet_locals: tuple[tuple[int, int, int, int], ...] = field(repr=False, default=())
    face_incidence: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, default=())
    simplicial: bool = False

    @property
    def counts(self) -> SimplexCounts:
        return SimplexCounts(len(self.vertices), len(self.edges),
                             len(self.faces), len(self.tets))

    def boundary_face_indices(self) -> tuple[int, ...]:
        return tuple(f for f, inc in enumerate(self.face_incidence) if len(inc) == 1)

    def is_boundary_face(self, f: int) -> bool:
        return len(self.face_incidence[f]) == 1

    def tet_edge_slots(self, t: int) -> tuple[int, int, int, int, int, int]:
        """The six edge entities of a tet as (e01,e02,e03,e12,e13,e23)."""
        f012, f013, f023, f123 = self.tets[t]
        return (
            self.faces[f012][0],  # 01
            self.faces[f012][1],  # 02
            self.faces[f013][1],  # 03
            self.faces[f012][2],  # 12
            self.faces[f013][2],  # 13
            self.faces[f023][2],  # 23
        )

    def euler_characteristic(self) -> int:
        c = self.counts
        return c.k0 - c.k1 + c.k2 - c.k3

    def __repr__(self) -> str:
        c = self.counts
        kind = "simplicial" if self.simplicial else "delta"
        return f"OrderedComplex({kind}, V={c.k0}, E={c.k1}, F={c.k2}, T={c.k3})"


class ComplexBuilder:
    """Incremental constructor enforcing slot compatibility."""

    def __init__(self):
        self._vertices: set[int] = set()
        self._edges: list[tuple[int, int]] = []
        self._faces: list[tuple[int, int, int]] = []
        self._tets: list[tuple[int, int, int, int]] = []

    def add_vertex(self, v: int) -> int:
        if not isinstance(v, int) or v < 0:
            raise ComplexStructureError(f"vertex ids must be nonnegative integers, got {v!r}")
        self._vertices.add(v)
        return v

    def add_edge(self, tail: int, head: int) -> int:
        self.add_vertex(tail)
        self.add_vertex(head)
        self._edges.append((tail, head))
        return len(self._edges) - 1

    def add_face(self, e01: int, e02: int, e12: int) -> int:
        for e in (e01, e02, e12):
            if not 0 <= e < len(self._edges):
                raise ComplexStructureError(f"face references unknown edge {e}")
        t01, h01 = self._edges[e01]
        t02, h02 = self._edges[e02]
        t12, h12 = self._edges[e12]
        if not (t01 == t02 and h01 == t12 and h02 == h12):
            raise ComplexStructureError(
                f"face edges ({e01},{e02},{e12}) do not share endpoints consistently: "
                f"{self._edges[e01]}, {self._edges[e02]}, {self._edges[e12]}")
        self._faces.append((e01, e02, e12))
        return len(self._faces) - 1

    def add_tet(self, f012: int, f013: int, f023: int, f123: int) -> int:
        for f in (f012, f013, f023, f123):
            if not 0 <= f < len(self._faces):
                raise ComplexStructureError(f"tet references unknown face {f}")
        F = self._faces
        conditions = [
            (F[f012][0], F[f013][0], "01"),
            (F[f012][1], F[f023][0], "02"),
            (F[f013][1], F[f023][1], "03"),
            (F[f012][2], F[f123][0], "12"),
            (F[f013][2], F[f123][1], "13"),
            (F[f023][2], F[f123][2], "23"),
        ]
        for a, b, slot in conditions:
            if a != b:
                raise ComplexStructureError(
                    f"tet faces ({f012},{f013},{f023},{f123}) disagree on edge {slot}: "
                    f"{a} vs {b}")
        self._tets.append((f012, f013, f023, f123))
        return len(self._tets) - 1

    def build(self) -> OrderedComplex:
        face_locals = []
        for e01, e02, e12 in self._faces:
            face_locals.append((self._edges[e01][0], self._edges[e01][1],
                                self._edges[e02][1]))
        tet_locals = []
        for f012, f013, _f023, _f123 in self._tets:
            v0, v1, v2 = face_locals[f012]
            tet_locals.append((v0, v1, v2, face_locals[f013][2]))
        incidence: list[list[tuple[int, int]]] = [[] for _ in self._faces]
        for t, slots in enumerate(self._tets):
            for s, f in enumerate(slots):
                incidence[f].append((t, s))
        simplicial = self._is_simplicial(face_locals, tet_locals)
        return OrderedComplex(
            vertices=tuple(sorted(self._vertices)),
            edges=tuple(self._edges),
            faces=tuple(self._faces),
            tets=tuple(self._tets),
            face_locals=tuple(face_locals),
            tet_locals=tuple(tet_locals),
            face_incidence=tuple(tuple(i) for i in incidence),
            simplicial=simplicial,
        )

    def _is_simplicial(self, face_locals, tet_locals) -> bool:
        if any(not t < h for t, h in self._edges):
            return False
        if any(not (a < b < c) for a, b, c in face_locals):
            return False
        if any(not (a < b < c < d) for a, b, c, d in tet_locals):
            return False
        for entities in (self._edges, face_locals, tet_locals):
            if len(set(entities)) != len(entities):
                return False
        return True


def from_tet_list(tets: Iterable[Sequence[int]]) -> OrderedComplex:
    """Simplicial-mode constructor: tets as 4-tuples of distinct vertex ids.

    Edges and faces are deduplicated as vertex subsets; a face shared by
    more than two tets is an error, as is a repeated vertex in a tet.
    """
    tet_tuples = []
    for raw in tets:
        vs = tuple(sorted(int(v) for v in raw))
        if len(vs) != 4 or len(set(vs)) != 4:
            raise ValueError(f"tet {tuple(raw)} must have 4 distinct vertices")
        tet_tuples.append(vs)
    if len(set(tet_tuples)) != len(tet_tuples):
        raise ValueError("duplicate tet in input")
    tet_tuples.sort()

    edge_set: set[tuple[int, int]] = set()
    face_set: set[tuple[int, int, int]] = set()
    for a, b, c, d in tet_tuples:
        vs = (a, b, c, d)
        for i in range(4):
            for j in range(i + 1, 4):
                edge_set.add((vs[i], vs[j]))
        for skip in range(4):
            face_set.add(tuple(v for k, v in enumerate(vs) if k != skip))

    builder = ComplexBuilder()
    edge_idx: dict[tuple[int, int], int] = {}
    for pair in sorted(edge_set):
        edge_idx[pair] = builder.add_edge(*pair)
    face_idx: dict[tuple[int, int, int], int] = {}
    for a, b, c in sorted(face_set):
        face_idx[(a, b, c)] = builder.add_face(
            edge_idx[(a, b)], edge_idx[(a, c)], edge_idx[(b, c)])

    face_use: dict[tuple[int, int, int], int] = {f: 0 for f in face_set}
    for a, b, c, d in tet_tuples:
        for tri in ((a, b, c), (a, b, d), (a, c, d), (b, c, d)):
            face_use[tri] += 1
            if face_use[tri] > 2:
                raise ValueError(f"face {tri} shared by more than two tets")
        builder.add_tet(face_idx[(a, b, c)], face_idx[(a, b, d)],
                        face_idx[(a, c, d)], face_idx[(b, c, d)])
    return builder.build()


@dataclass(frozen=True)
class Boundary2Complex:
    """The 2-dimensional subcomplex of faces lying in exactly one tet."""

    vertex_ids: tuple[int, ...]
    edge_indices: tuple[int, ...]
    face_indices: tuple[int, ...]

    def euler_characteristic(self) -> int:
        return len(self.vertex_ids) - len(self.edge_indices) + len(self.face_indices)


def boundary(c: OrderedComplex) -> Boundary2Complex:
    faces = c.boundary_face_indices()
    edge_indices = sorted({e for f in faces for e in c.faces[f]})
    vertex_ids = sorted({v for e in edge_indices for v in c.edges[e]})
    return Boundary2Complex(tuple(vertex_ids), tuple(edge_indices), tuple(faces))


def validate_manifold_basics(c: OrderedComplex) -> list[str]:
    """Necessary pseudo-manifold checks; returns a report of failures.

    Structural slot compatibility is already enforced at construction, so
    this looks at incidence patterns: faces in more than two tet slots,
    stray faces/edges, disconnected tet graphs, and (simplicial mode only)
    edge links that are not a single cycle or path.
    """
    report: list[str] = []
    for f, inc in enumerate(c.face_incidence):
        if len(inc) > 2:
            report.append(f"face {f} lies in {len(inc)} tet slots (max 2): {inc}")
    if c.tets:
        used_faces = {f for slots in c.tets for f in slots}
        for f in range(len(c.faces)):
            if f not in used_faces:
                report.append(f"face {f} belongs to no tet")
        used_edges = {e for f in used_faces for e in c.faces[f]}
        for e in range(len(c.edges)):
            if e not in used_edges:
                report.append(f"edge {e} belongs to no face")
        # tet connectivity through shared faces
        adj: dict[int, set[int]] = {t: set() for t in range(len(c.tets))}
        for inc in c.face_incidence:
            if len(inc) == 2:
                (t1, _), (t2, _) = inc
                adj[t1].add(t2)
                adj[t2].add(t1)
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(c.tets):
            report.append(
                f"tet graph not connected: {len(seen)} of {len(c.tets)} reachable")
    if c.simplicial:
        report.extend(_simplicial_edge_link_report(c))
    return report


def _simplicial_edge_link_report(c: OrderedComplex) -> list[str]:
    report = []
    boundary_faces = set(c.boundary_face_indices())
    for e in range(len(c.edges)):
        incident = [(t, slot) for t in range(len(c.tets))
                    for slot, f in enumerate(c.tets[t])
                    if e in c.faces[f]]
        tets_at_e = sorted({t for t, _ in incident})
        if not tets_at_e:
            continue
        # faces around the edge; each incident tet contributes exactly two
        faces_at_e = sorted({f for t in tets_at_e for f in c.tets[t] if e in c.faces[f]})
        face_tets = {f: [t for t in tets_at_e if f in c.tets[t]] for f in faces_at_e}
        bdry = [f for f in faces_at_e if f in boundary_faces]
        # walk the tet cycle/path around the edge
        seen_t = set()
        start = tets_at_e[0]
        if bdry:
            start = face_tets[bdry[0]][0]
        frontier = [start]
        seen_t.add(start)
        while frontier:
            t = frontier.pop()
            for f in c.tets[t]:
                if e in c.faces[f]:
                    for t2 in face_tets[f]:
                        if t2 not in seen_t:
                            seen_t.add(t2)
                            frontier.append(t2)
        if len(seen_t) != len(tets_at_e):
            report.append(f"edge {e} link is disconnected")
        if len(bdry) not in (0, 2):
            report.append(f"edge {e} lies in {len(bdry)} boundary faces (expect 0 or 2)")
    return report


def relabel(c: OrderedComplex, permutation: Mapping[int, int] | Callable[[int], int]) -> OrderedComplex:
    """Rename vertices under a bijection of vertex ids.

    In simplicial mode the complex is rebuilt, so every simplex is re-sorted
    under the new total order and the slot wiring genuinely changes.  In
    Δ-mode the slot structure is the data, so only ids are renamed.
    """
    if callable(permutation):
        perm = {v: permutation(v) for v in c.vertices}
    else:
        perm = dict(permutation)
    if sorted(perm) != list(c.vertices):
        raise ValueError("permutation domain must be exactly the vertex set")
    if len(set(perm.values())) != len(perm):
        raise ValueError("permutation must be injective")
    if c.simplicial and c.tets and _fully_covered(c):
        return from_tet_list([tuple(perm[v] for v in tl) for tl in c.tet_locals])
    builder = ComplexBuilder()
    for v in c.vertices:
        builder.add_vertex(perm[v])
    for t, h in c.edges:
        builder.add_edge(perm[t], perm[h])
    for e01, e02, e12 in c.faces:
        builder.add_face(e01, e02, e12)
    for slots in c.tets:
        builder.add_tet(*slots)
    return builder.build()


def _fully_covered(c: OrderedComplex) -> bool:
    """True when every edge and face lies under some tet, so rebuilding
    from the tet list loses nothing."""
    used_faces = {f for slots in c.tets for f in slots}
    if len(used_faces) != len(c.faces):
        return False
    used_edges = {e for f in used_faces for e in c.faces[f]}
    return len(used_edges) == len(c.edges)


def disjoint_union(a: OrderedComplex, b: OrderedComplex) -> OrderedComplex:
    """a ⊔ b with b's vertex ids shifted above a's."""
    shift = (max(a.vertices) + 1 - min(b.vertices)) if a.vertices and b.vertices else 0
    builder = ComplexBuilder()
    for v in a.vertices:
        builder.add_vertex(v)
    for v in b.vertices:
        builder.add_vertex(v + shift)
    for t, h in a.edges:
        builder.add_edge(t, h)
    for t, h in b.edges:
        builder.add_edge(t + shift, h + shift)
    ne, nf = len(a.edges), len(a.faces)
    for e01, e02, e12 in a.faces:
        builder.add_face(e01, e02, e12)
    for e01, e02, e12 in b.faces:
        builder.add_face(e01 + ne, e02 + ne, e12 + ne)
    for slots in a.tets:
        builder.add_tet(*slots)
    for slots in b.tets:
        builder.add_tet(*(f + nf for f in slots))
    return builder.build()


def prism_product(
    base_edges: Sequence[tuple[int, int]],
    base_faces: Sequence[tuple[int, int, int]],
    identify_ends: bool = False,
) -> OrderedComplex:
    """The product (2-complex) × [0,1], triangulated layer by layer.

    The base is a 2-dimensional Δ-complex given by edge endpoint pairs and
    face edge slots.  Each base triangle becomes three tets; quads over base
    edges split along the diagonal (u,0)-(v,1), which is consistent across
    neighbouring prisms because it depends only on the edge.  With
    ``identify_ends`` the top layer is glued back onto the bottom (vertical
    edges become loops), which turns base × [0,1] into base × S¹.
    """
    base_vertices = sorted({v for e in base_edges for v in e})
    if not all(t < h for t, h in base_edges):
        raise ValueError("base edges must be ascending pairs")
    offset = max(base_vertices) + 1 if base_vertices else 0

    builder = ComplexBuilder()
    top = (lambda v: v) if identify_ends else (lambda v: v + offset)

    bots = {}
    tops = {}
    verts = {}
    diags = {}
    for i, (u, v) in enumerate(base_edges):
        bots[i] = builder.add_edge(u, v)
    for u in base_vertices:
        verts[u] = builder.add_edge(u, top(u))
    for i, (u, v) in enumerate(base_edges):
        tops[i] = bots[i] if identify_ends else builder.add_edge(top(u), top(v))
        diags[i] = builder.add_edge(u, top(v))

    quad_low = {}
    quad_high = {}
    for i, (u, v) in enumerate(base_edges):
        # (u0, v0, v1) and (u0, u1, v1)
        quad_low[i] = builder.add_face(bots[i], diags[i], verts[v])
        quad_high[i] = builder.add_face(verts[u], diags[i], tops[i])

    bot_face = {}
    top_face = {}
    int1 = {}
    int2 = {}
    for j, (E01, E02, E12) in enumerate(base_faces):
        bot_face[j] = builder.add_face(bots[E01], bots[E02], bots[E12])
        top_face[j] = bot_face[j] if identify_ends else builder.add_face(
            tops[E01], tops[E02], tops[E12])
        int1[j] = builder.add_face(bots[E01], diags[E02], diags[E12])  # (x0,y0,z1)
        int2[j] = builder.add_face(diags[E01], diags[E02], tops[E12])  # (x0,y1,z1)

    for j, (E01, E02, E12) in enumerate(base_faces):
        builder.add_tet(bot_face[j], int1[j], quad_low[E02], quad_low[E12])   # (x0,y0,z0,z1)
        builder.add_tet(quad_low[E01], int1[j], int2[j], quad_high[E12])      # (x0,y0,y1,z1)
        builder.add_tet(quad_high[E01], quad_high[E02], int2[j], top_face[j])  # (x0,x1,y1,z1)
    return builder.build()


def are_isomorphic(a: OrderedComplex, b: OrderedComplex) -> bool:
    """Structural isomorphism of Δ-complexes (slot-preserving bijections).

    Backtracks over tet correspondences, propagating the induced face, edge
    and vertex maps.  Intended for desk-scale complexes in tests.
    """
    ca, cb = a.counts.as_tuple(), b.counts.as_tuple()
    if ca != cb:
        return False
    if not a.tets:
        return (len(a.edges), len(a.faces)) == (len(b.edges), len(b.faces))
    if a.simplicial and b.simplicial and _simplicial_canonical(a) == _simplicial_canonical(b):
        # an order-preserving vertex bijection exists; no search needed
        return True

    na = len(a.tets)
    # signature pruning: multiset of per-tet face-incidence patterns
    def tet_sig(c, t):
        return tuple(sorted(len(c.face_incidence[f]) for f in c.tets[t]))
    if sorted(tet_sig(a, t) for t in range(na)) != sorted(tet_sig(b, t) for t in range(na)):
        return False

    def extend(t_map, f_map, e_map, v_map, next_a):
        if next_a == na:
            return len(set(f_map.values())) == len(f_map) and \
                len(set(e_map.values())) == len(e_map) and \
                len(set(v_map.values())) == len(v_map)
        for tb in range(na):
            if tb in t_map.values() or tet_sig(a, next_a) != tet_sig(b, tb):
                continue
            nf, ne, nv = dict(f_map), dict(e_map), dict(v_map)
            ok = True
            for fa, fb in zip(a.tets[next_a], b.tets[tb]):
                if nf.get(fa, fb) != fb:
                    ok = False
                    break
                nf[fa] = fb
                for ea, eb in zip(a.faces[fa], b.faces[fb]):
                    if ne.get(ea, eb) != eb:
                        ok = False
                        break
                    ne[ea] = eb
                    for va, vb in zip(a.edges[ea], b.edges[eb]):
                        if nv.get(va, vb) != vb:
                            ok = False
                            break
                        nv[va] = vb
                    if not ok:
                        break
                if not ok:
                    break
            if ok and extend({**t_map, next_a: tb}, nf, ne, nv, next_a + 1):
                return True
        return False

    return extend({}, {}, {}, {}, 0)


def _simplicial_canonical(c: OrderedComplex):
    rank = {v: i for i, v in enumerate(c.vertices)}
    return sorted(tuple(rank[v] for v in tl) for tl in c.tet_locals)
