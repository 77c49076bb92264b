"""Combinatorial plane graphs stored as rotation systems.

A graph is a set of integer vertex ids plus, for every vertex, the cyclic
counterclockwise order of its neighbours.  Darts are ordered pairs (u, v);
twin((u, v)) = (v, u).  Faces are the orbits of

    face_next(d) = prev_rotation(twin(d))

which walks each face with its interior on the left: inner faces come out
counterclockwise, the designated outer face clockwise.  Coordinates are
optional metadata used only for rendering and for picking the default
start vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    EmbeddingError,
    InvalidDimensionError,
    NotConnectedError,
    UnsupportedClassError,
)

Dart = Tuple[int, int]


def edge_key(u: int, v: int) -> FrozenSet[int]:
    return frozenset((u, v))


@dataclass(frozen=True)
class Room:
    """An inner face: cyclic vertex boundary, counterclockwise."""

    face_id: int
    boundary: Tuple[int, ...]
    kind: str = "ordinary"

    def __len__(self):
        return len(self.boundary)


@dataclass(frozen=True)
class EmbeddingReport:
    """Per-room embedding depths.

    ea[face] counts how many room contours strictly enclose the face;
    eb[face] is the embedding value of the room taken as a standalone
    subgraph; graph_e_value is the maximum ea over all rooms.
    """

    ea: Dict[int, int]
    eb: Dict[int, int]
    graph_e_value: int

    def subgraph_ea(self, faces: Iterable[int]) -> int:
        faces = list(faces)
        return min(self.ea[f] for f in faces) if faces else 0

    def subgraph_eb(self, faces: Iterable[int]) -> int:
        faces = list(faces)
        return max(self.eb[f] for f in faces) if faces else 0


@dataclass(frozen=True)
class GraphClass:
    kind: str  # grid | tree | combined-grid | e0 | en
    level: int = 0

    def __str__(self):
        return f"En({self.level})" if self.kind == "en" else self.kind.capitalize()


class PlanarGraph:
    """Immutable rotation-system plane graph with a designated outer face."""

    def __init__(
        self,
        rotation: Dict[int, Sequence[int]],
        outer_dart: Dart,
        coords: Optional[Dict[int, Tuple[float, float]]] = None,
        check: bool = True,
    ):
        self.rotation: Dict[int, Tuple[int, ...]] = {
            v: tuple(nbrs) for v, nbrs in rotation.items()
        }
        self.outer_dart: Dart = tuple(outer_dart)  # type: ignore[assignment]
        self.coords = dict(coords) if coords else None
        self._faces: Optional[List[Tuple[Dart, ...]]] = None
        self._face_of: Optional[Dict[Dart, int]] = None
        self._rot_index: Dict[int, Dict[int, int]] = {
            v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in self.rotation.items()
        }
        self._contour_cache: Dict[int, Optional[Tuple[Dart, ...]]] = {}
        self._inside_cache: Dict[int, FrozenSet[int]] = {}
        if check:
            self._validate()

    # ------------------------------------------------------------------
    # basic structure

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.rotation))

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def edges(self) -> List[FrozenSet[int]]:
        seen = set()
        for u, nbrs in self.rotation.items():
            for w in nbrs:
                seen.add(edge_key(u, w))
        return sorted(seen, key=sorted)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._rot_index.get(u, ())

    def darts(self):
        for u, nbrs in self.rotation.items():
            for w in nbrs:
                yield (u, w)

    def num_vertices(self) -> int:
        return len(self.rotation)

    def num_edges(self) -> int:
        return sum(len(n) for n in self.rotation.values()) // 2

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        nbrs = self.rotation[u]
        i = self._rot_index[u][v]
        return (u, nbrs[(i + 1) % len(nbrs)])

    def prev_dart(self, d: Dart) -> Dart:
        u, v = d
        nbrs = self.rotation[u]
        i = self._rot_index[u][v]
        return (u, nbrs[(i - 1) % len(nbrs)])

    @staticmethod
    def twin(d: Dart) -> Dart:
        return (d[1], d[0])

    def face_next(self, d: Dart) -> Dart:
        return self.prev_dart(self.twin(d))

    # ------------------------------------------------------------------
    # faces

    def faces(self) -> List[Tuple[Dart, ...]]:
        if self._faces is None:
            if self.num_edges() == 0:
                self._faces = [()]
                self._face_of = {}
                return self._faces
            self._faces = []
            self._face_of = {}
            for d in sorted(self.darts()):
                if d in self._face_of:
                    continue
                walk = []
                cur = d
                while cur not in self._face_of:
                    self._face_of[cur] = len(self._faces)
                    walk.append(cur)
                    cur = self.face_next(cur)
                self._faces.append(tuple(walk))
        return self._faces

    def face_of(self, d: Dart) -> int:
        self.faces()
        assert self._face_of is not None
        return self._face_of[d]

    def outer_face(self) -> int:
        if self.num_edges() == 0:
            return 0
        return self.face_of(self.outer_dart)

    def num_faces(self) -> int:
        return len(self.faces())

    def inner_faces(self) -> List[int]:
        outer = self.outer_face()
        return [i for i in range(len(self.faces())) if i != outer]

    def face_walk_vertices(self, face_id: int) -> Tuple[int, ...]:
        return tuple(d[0] for d in self.faces()[face_id])

    def outer_walk(self) -> Tuple[Dart, ...]:
        return self.faces()[self.outer_face()]

    def rooms(self) -> List[Room]:
        out = []
        for f in self.inner_faces():
            out.append(Room(face_id=f, boundary=self.face_walk_vertices(f)))
        return out

    def room_count(self) -> int:
        return len(self.inner_faces())

    def faces_of_edge(self, u: int, v: int) -> Tuple[int, int]:
        return (self.face_of((u, v)), self.face_of((v, u)))

    # ------------------------------------------------------------------
    # validation

    def _validate(self):
        if not self.rotation:
            raise EmbeddingError("empty graph")
        for v, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs):
                raise EmbeddingError(f"repeated neighbour in rotation of {v}")
            if v in nbrs:
                raise EmbeddingError(f"self-loop at {v}")
            for w in nbrs:
                if w not in self.rotation or v not in self._rot_index[w]:
                    raise EmbeddingError(f"dart ({v},{w}) has no twin")
        if self.num_edges() == 0:
            if len(self.rotation) != 1:
                raise NotConnectedError("edgeless graph with several vertices")
            return
        u, v = self.outer_dart
        if not self.has_edge(u, v):
            raise EmbeddingError("outer dart is not a dart of the graph")
        if not self.is_connected():
            raise NotConnectedError("graph is not connected")
        # Euler characteristic 2 <=> genus-0 embedding.
        if self.num_vertices() - self.num_edges() + self.num_faces() != 2:
            raise EmbeddingError("rotation system is not planar (Euler check failed)")

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return False
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for w in self.rotation[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    # ------------------------------------------------------------------
    # derived copies

    def delete_vertices(self, doomed: Iterable[int]) -> "PlanarGraph":
        doomed = set(doomed)
        rot = {
            v: tuple(w for w in nbrs if w not in doomed)
            for v, nbrs in self.rotation.items()
            if v not in doomed
        }
        u, v = self.outer_dart
        if u in doomed or v in doomed:
            raise EmbeddingError("outer dart destroyed by vertex deletion")
        coords = None
        if self.coords:
            coords = {v: xy for v, xy in self.coords.items() if v not in doomed}
        return PlanarGraph(rot, (u, v), coords)

    def delete_edge(self, u: int, v: int, check: bool = True) -> "PlanarGraph":
        rot = {
            a: tuple(w for w in nbrs if not (a == u and w == v) and not (a == v and w == u))
            for a, nbrs in self.rotation.items()
        }
        ou, ov = self.outer_dart
        if edge_key(ou, ov) == edge_key(u, v):
            # pick another outer-face dart that survives
            repl = None
            for d in self.outer_walk():
                if edge_key(*d) != edge_key(u, v):
                    repl = d
                    break
            if repl is None:
                raise EmbeddingError("cannot delete the only outer edge")
            ou, ov = repl
        return PlanarGraph(rot, (ou, ov), self.coords, check=check)

    def relabeled(self) -> "PlanarGraph":
        """Copy with fresh consecutive integer ids (sorted order preserved)."""
        ids = {v: i for i, v in enumerate(self.vertices)}
        rot = {ids[v]: tuple(ids[w] for w in nbrs) for v, nbrs in self.rotation.items()}
        coords = (
            {ids[v]: xy for v, xy in self.coords.items()} if self.coords else None
        )
        return PlanarGraph(rot, (ids[self.outer_dart[0]], ids[self.outer_dart[1]]), coords)

    def structurally_equal(self, other: "PlanarGraph") -> bool:
        return (
            self.rotation == other.rotation
            and set(self.faces()[self.outer_face()]) == set(other.faces()[other.outer_face()])
        )

    # ------------------------------------------------------------------
    # contours and containment

    def _lobes(self, walk: Sequence[Dart]) -> List[Tuple[Dart, ...]]:
        """Split a closed walk into edge-disjoint closed subwalks.

        Face walks never cross themselves, so repeated vertices nest like
        brackets; each popped lobe is a simple cycle or a twice-used spike.
        """
        path_v = [walk[0][0]]
        path_d: List[Dart] = []
        open_idx = {walk[0][0]: 0}
        out: List[Tuple[Dart, ...]] = []
        for d in walk:
            w = d[1]
            path_d.append(d)
            if w in open_idx:
                i = open_idx[w]
                lobe = tuple(path_d[i:])
                out.append(lobe)
                for gone in path_v[i + 1 :]:
                    open_idx.pop(gone, None)
                del path_d[i:]
                del path_v[i + 1 :]
            else:
                path_v.append(w)
                open_idx[w] = len(path_v) - 1
        if path_d:
            out.append(tuple(path_d))
        return out

    def _dual_side(self, face_id: int, blocked_edges: FrozenSet[FrozenSet[int]]) -> bool:
        """True if face_id is separated from the outer face by blocked_edges."""
        outer = self.outer_face()
        if face_id == outer:
            return False
        seen = {outer}
        stack = [outer]
        while stack:
            f = stack.pop()
            if f == face_id:
                return False
            for d in self.faces()[f]:
                if edge_key(*d) in blocked_edges:
                    continue
                g = self.face_of(self.twin(d))
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return True

    def contour(self, face_id: int) -> Optional[Tuple[Dart, ...]]:
        """The simple cycle bounding face_id from outside; None for the outer face."""
        if face_id in self._contour_cache:
            return self._contour_cache[face_id]
        result: Optional[Tuple[Dart, ...]] = None
        if face_id != self.outer_face():
            walk = self.faces()[face_id]
            verts = [d[0] for d in walk]
            if len(set(verts)) == len(verts):
                result = walk  # simple walk: it is its own contour
            else:
                for lobe in self._lobes(walk):
                    if len(lobe) < 3:
                        continue
                    blocked = frozenset(edge_key(*d) for d in lobe)
                    if self._dual_side(face_id, blocked):
                        result = lobe
                        break
                if result is None:
                    raise EmbeddingError(f"inner face {face_id} has no enclosing contour")
        self._contour_cache[face_id] = result
        return result

    def contour_vertices(self, face_id: int) -> Tuple[int, ...]:
        c = self.contour(face_id)
        return tuple(d[0] for d in c) if c else ()

    def contour_edges(self, face_id: int) -> FrozenSet[FrozenSet[int]]:
        c = self.contour(face_id)
        return frozenset(edge_key(*d) for d in c) if c else frozenset()

    def faces_inside(self, face_id: int) -> FrozenSet[int]:
        """Faces lying inside the contour of face_id (face_id included)."""
        if face_id in self._inside_cache:
            return self._inside_cache[face_id]
        c = self.contour(face_id)
        if c is None:
            result = frozenset(range(self.num_faces()))
        else:
            blocked = frozenset(edge_key(*d) for d in c)
            outer = self.outer_face()
            seen = {outer}
            stack = [outer]
            while stack:
                f = stack.pop()
                for d in self.faces()[f]:
                    if edge_key(*d) in blocked:
                        continue
                    g = self.face_of(self.twin(d))
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
            result = frozenset(range(self.num_faces())) - seen
        self._inside_cache[face_id] = result
        return result

    def embedded_vertices(self, face_id: int) -> FrozenSet[int]:
        """Vertices strictly inside the contour of an inner face."""
        c = self.contour(face_id)
        if c is None:
            return frozenset()
        on_contour = set(d[0] for d in c)
        inside = set()
        for g in self.faces_inside(face_id):
            for d in self.faces()[g]:
                if d[0] not in on_contour:
                    inside.add(d[0])
        return frozenset(inside)


# ----------------------------------------------------------------------
# constructors


def build_grid(rows: int, cols: int) -> PlanarGraph:
    """rows x cols lattice of vertices with unit rooms on integer coordinates."""
    if rows < 2 or cols < 2:
        raise InvalidDimensionError(f"grid needs rows, cols >= 2, got {rows}x{cols}")

    def vid(r, c):
        return r * cols + c

    rot = {}
    coords = {}
    for r in range(rows):
        for c in range(cols):
            nbrs = []
            # counterclockwise: east, north, west, south
            if c + 1 < cols:
                nbrs.append(vid(r, c + 1))
            if r + 1 < rows:
                nbrs.append(vid(r + 1, c))
            if c - 1 >= 0:
                nbrs.append(vid(r, c - 1))
            if r - 1 >= 0:
                nbrs.append(vid(r - 1, c))
            rot[vid(r, c)] = tuple(nbrs)
            coords[vid(r, c)] = (float(c), float(r))
    outer = (vid(0, cols - 1), vid(0, cols - 2))  # lower-right heading west
    return PlanarGraph(rot, outer, coords)


def from_cells(cells: Iterable[Tuple[int, int]]) -> PlanarGraph:
    """Plane graph of a polyomino: one unit room per (x, y) cell."""
    cells = set(cells)
    if not cells:
        raise InvalidDimensionError("no cells")
    corners = set()
    adj: Dict[Tuple[int, int], set] = {}

    def link(a, b):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    for (x, y) in cells:
        pts = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        corners.update(pts)
        link(pts[0], pts[1])
        link(pts[1], pts[2])
        link(pts[2], pts[3])
        link(pts[3], pts[0])
    ids = {p: i for i, p in enumerate(sorted(corners, key=lambda p: (p[1], p[0])))}
    rot = {}
    coords = {}
    for p, i in ids.items():
        x, y = p
        nbrs = []
        for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):  # E N W S = ccw
            q = (x + dx, y + dy)
            if q in adj.get(p, ()):
                nbrs.append(ids[q])
        rot[i] = tuple(nbrs)
        coords[i] = (float(x), float(y))
    # lower-right boundary vertex heading west along the bottom of its cell
    start = max(corners, key=lambda p: (-p[1], p[0]))
    west = (start[0] - 1, start[1])
    if west not in adj.get(start, ()):
        raise EmbeddingError("degenerate cell set")
    return PlanarGraph(rot, (ids[start], ids[west]), coords)


# ----------------------------------------------------------------------
# operations


def extract_rooms(g: PlanarGraph) -> List[Room]:
    return g.rooms()


def connection_calculation(
    g: PlanarGraph,
    seed_rooms: Iterable[int],
    excluded: Iterable[int] = (),
) -> List[List[int]]:
    """Edge-connected groups of untraversed rooms adjacent to the seeds.

    Returns each group as a sorted list of face ids; groups are ordered by
    their smallest member for determinism.
    """
    seeds = set(seed_rooms)
    off_limits = set(excluded) | seeds
    outer = g.outer_face()
    # rooms sharing an edge with a seed
    frontier = set()
    for f in seeds:
        for d in g.faces()[f]:
            h = g.face_of(g.twin(d))
            if h != outer and h not in off_limits:
                frontier.add(h)
    # group by edge-connectivity inside the untraversed region
    groups = []
    unassigned = set(frontier)
    while unassigned:
        root = min(unassigned)
        comp = {root}
        stack = [root]
        while stack:
            f = stack.pop()
            for d in g.faces()[f]:
                h = g.face_of(g.twin(d))
                if h in unassigned and h not in comp:
                    comp.add(h)
                    stack.append(h)
        groups.append(sorted(comp))
        unassigned -= comp
    groups.sort(key=lambda c: c[0])
    return groups


def room_adjacency(g: PlanarGraph, faces: Optional[Iterable[int]] = None) -> Dict[int, set]:
    """Shared-edge adjacency between inner faces (restricted to `faces` if given)."""
    keep = set(faces) if faces is not None else set(g.inner_faces())
    outer = g.outer_face()
    adj: Dict[int, set] = {f: set() for f in keep}
    for f in keep:
        for d in g.faces()[f]:
            h = g.face_of(g.twin(d))
            if h != outer and h != f and h in keep:
                adj[f].add(h)
    return adj


def simplify(g: PlanarGraph) -> PlanarGraph:
    """Delete everything strictly inside any room, iterated to a fixpoint."""
    cur = g
    while True:
        doomed = set()
        for f in cur.inner_faces():
            doomed |= cur.embedded_vertices(f)
        if not doomed:
            return cur
        cur = cur.delete_vertices(doomed)


def embedding_levels(g: PlanarGraph) -> EmbeddingReport:
    """EA/EB levels computed from contour containment."""
    inner = g.inner_faces()
    inside = {f: g.faces_inside(f) for f in inner}
    ea = {}
    for f in inner:
        ea[f] = sum(1 for h in inner if h != f and f in inside[h])
    eb = {}
    for f in inner:
        depths = [ea[h] - ea[f] for h in inner if h in inside[f]]
        eb[f] = max(depths) if depths else 0
    level = max(ea.values()) if ea else 0
    return EmbeddingReport(ea=ea, eb=eb, graph_e_value=level)


def _rooms_all_simple(g: PlanarGraph) -> bool:
    for f in g.inner_faces():
        verts = g.face_walk_vertices(f)
        if len(set(verts)) != len(verts):
            return False
    return True


def _no_embedment(g: PlanarGraph) -> bool:
    return all(not g.embedded_vertices(f) for f in g.inner_faces())


def _all_edges_on_contours(g: PlanarGraph) -> bool:
    covered = set()
    for f in g.inner_faces():
        covered |= g.contour_edges(f)
    return covered == set(g.edges())


def _room_continuity(g: PlanarGraph) -> bool:
    inner = g.inner_faces()
    if not inner:
        return False
    adj = room_adjacency(g)
    seen = {inner[0]}
    stack = [inner[0]]
    while stack:
        f = stack.pop()
        for h in adj[f]:
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return len(seen) == len(inner)


def _is_full_rectangle(g: PlanarGraph) -> bool:
    """True when the rooms tile a full a x b rectangle of unit quads."""
    inner = g.inner_faces()
    if not inner or any(len(g.faces()[f]) != 4 for f in inner):
        return False
    outer = g.outer_face()
    # unfold room coordinates across shared edges
    start = inner[0]
    pos = {start: (0, 0)}
    # orientation: walk of `start` is ccw; assign its darts directions 0..3
    dir_of: Dict[int, Dict[Dart, int]] = {start: {}}
    for i, d in enumerate(g.faces()[start]):
        dir_of[start][d] = i
    moves = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
    stack = [start]
    while stack:
        f = stack.pop()
        for d in g.faces()[f]:
            h = g.face_of(g.twin(d))
            if h == outer:
                continue
            k = dir_of[f][d]
            # a ccw dart pointing direction k has its neighbour room at k-1
            npos = (
                pos[f][0] + moves[(k + 3) % 4][0],
                pos[f][1] + moves[(k + 3) % 4][1],
            )
            if h in pos:
                if pos[h] != npos:
                    return False
                continue
            pos[h] = npos
            walk_h = g.faces()[h]
            j = walk_h.index(g.twin(d))
            dir_of[h] = {}
            for off in range(4):
                dir_of[h][walk_h[(j + off) % 4]] = (k + 2 + off) % 4
            stack.append(h)
    if len(pos) != len(inner):
        return False
    xs = sorted(set(p[0] for p in pos.values()))
    ys = sorted(set(p[1] for p in pos.values()))
    return len(pos) == len(xs) * len(ys) and (
        xs == list(range(xs[0], xs[0] + len(xs))) and ys == list(range(ys[0], ys[0] + len(ys)))
    )


def classify(g: PlanarGraph) -> GraphClass:
    """Sort a connected plane graph into grid/tree/combined-grid/E0/En(k)."""
    if not g.is_connected():
        raise NotConnectedError("classify requires a connected graph")
    if g.room_count() == 0:
        return GraphClass("tree")
    base_ok = (
        _rooms_all_simple(g)
        and _no_embedment(g)
        and _all_edges_on_contours(g)
        and _room_continuity(g)
    )
    if base_ok:
        if all(len(g.faces()[f]) == 4 for f in g.inner_faces()):
            if _is_full_rectangle(g):
                return GraphClass("grid")
            return GraphClass("combined-grid")
        return GraphClass("e0")
    s = simplify(g)
    if s.num_vertices() < g.num_vertices():
        sub = classify(s)
        if sub.kind in ("grid", "combined-grid", "e0"):
            level = embedding_levels(g).graph_e_value
            return GraphClass("en", level)
    raise UnsupportedClassError("graph is not a grid/tree/combined-grid/E0/En graph")


# ----------------------------------------------------------------------
# isomorphism


def _rooted_code(g: PlanarGraph, root: Dart, reflect: bool) -> tuple:
    number = {root[0]: 0}
    order = [root[0]]
    entry = {root[0]: root}
    code = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        nbrs = g.rotation[v]
        i = g._rot_index[v][entry[v][1]]
        n = len(nbrs)
        if reflect:
            seq = [nbrs[(i - k) % n] for k in range(n)]
        else:
            seq = [nbrs[(i + k) % n] for k in range(n)]
        row = []
        for w in seq:
            if w not in number:
                number[w] = len(order)
                order.append(w)
                entry[w] = (w, v)
            row.append(number[w])
        code.append(tuple(row))
    return tuple(code)


def canonical_code(g: PlanarGraph, reflect: bool = False) -> tuple:
    """Minimum rooted code over all outer-face root darts."""
    return min(_rooted_code(g, d, reflect) for d in g.outer_walk())


def is_isomorphic(g1: PlanarGraph, g2: PlanarGraph, allow_reflection: bool = True) -> bool:
    """Plane-graph isomorphism with matching outer faces.

    With allow_reflection the chirality may flip globally.
    """
    if g1.num_vertices() != g2.num_vertices() or g1.num_edges() != g2.num_edges():
        return False
    if g1.num_faces() != g2.num_faces():
        return False
    if sorted(len(n) for n in g1.rotation.values()) != sorted(
        len(n) for n in g2.rotation.values()
    ):
        return False
    if len(g1.outer_walk()) != len(g2.outer_walk()):
        return False
    c1 = canonical_code(g1)
    if c1 == canonical_code(g2):
        return True
    return allow_reflection and c1 == canonical_code(g2, reflect=True)


def isomorphism_witness(g1: PlanarGraph, g2: PlanarGraph) -> Optional[int]:
    """First position where the canonical codes diverge (None when equal)."""
    c1 = canonical_code(g1)
    c2 = min(canonical_code(g2), canonical_code(g2, reflect=True))
    if c1 == c2:
        return None
    flat1 = list(itertools.chain.from_iterable(c1))
    flat2 = list(itertools.chain.from_iterable(c2))
    for i, (a, b) in enumerate(zip(flat1, flat2)):
        if a != b:
            return i
    return min(len(flat1), len(flat2))
