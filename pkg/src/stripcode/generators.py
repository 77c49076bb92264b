"""Seeded graph generators for corpora and demos.

All generators are deterministic in their seed.  Combined grids are built
as polyominoes, E0 graphs by merging rooms of a polyomino, En graphs by
hanging components (paths, stars, cycles) inside rooms, recursively for
deeper embedding levels.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from . import planar
from .errors import StripcodeError, UnsupportedClassError
from .planar import PlanarGraph, build_grid, classify, from_cells


def random_tree(n: int, seed: int) -> PlanarGraph:
    """Random tree on n vertices with random rotation orders."""
    rng = random.Random(seed)
    if n < 1:
        raise StripcodeError("tree needs at least one vertex")
    if n == 1:
        return PlanarGraph({0: ()}, (0, 0))
    rot: Dict[int, List[int]] = {0: []}
    for v in range(1, n):
        parent = rng.randrange(v)
        slot = rng.randrange(len(rot[parent]) + 1)
        rot[parent].insert(slot, v)
        rot[v] = [parent]
    return PlanarGraph({v: tuple(ns) for v, ns in rot.items()}, (0, rot[0][0]))


def random_cells(seed: int, max_rooms: int, min_rooms: int = 2) -> List[Tuple[int, int]]:
    rng = random.Random(seed)
    n = rng.randint(min_rooms, max_rooms)
    cells = {(0, 0)}
    while len(cells) < n:
        x, y = rng.choice(sorted(cells))
        dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
        cells.add((x + dx, y + dy))
    return sorted(cells)


def random_combined_grid(seed: int, max_rooms: int = 40) -> PlanarGraph:
    return from_cells(random_cells(seed, max_rooms))


def random_e0(seed: int, max_rooms: int = 30) -> PlanarGraph:
    """Polyomino with random room merges; always classifies as E0."""
    rng = random.Random(seed)
    g = from_cells(random_cells(seed * 2 + 1, max_rooms, min_rooms=4))
    tries = max(3, g.room_count() // 2)
    merged = 0
    for _ in range(tries * 4):
        if merged >= tries:
            break
        inner = set(g.inner_faces())
        shared = [
            e
            for e in g.edges()
            if set(g.faces_of_edge(*sorted(e))) <= inner
            and len(set(g.faces_of_edge(*sorted(e)))) == 2
        ]
        if not shared:
            break
        u, v = sorted(rng.choice(sorted(shared, key=sorted)))
        try:
            cand = g.delete_edge(u, v)
            if classify(cand).kind != "e0":
                continue
        except StripcodeError:
            continue
        g = cand
        merged += 1
    if classify(g).kind != "e0":
        # force one merge so the class is E0 rather than combined-grid
        for e in g.edges():
            u, v = sorted(e)
            faces = set(g.faces_of_edge(u, v))
            if len(faces) == 2 and g.outer_face() not in faces:
                try:
                    cand = g.delete_edge(u, v)
                    if classify(cand).kind == "e0":
                        return cand
                except StripcodeError:
                    continue
    return g


# ----------------------------------------------------------------------
# embedding surgery


def _room_corner_insert(rot: Dict[int, List[int]], a: int, y: int, x: int, new: List[int]):
    """Insert `new` neighbours of `a` inside the room corner between darts
    (a->y) and (a->x); y must immediately precede x in ccw order."""
    nbrs = rot[a]
    i = nbrs.index(y)
    assert nbrs[(i + 1) % len(nbrs)] == x, "not a face corner"
    rot[a] = nbrs[: i + 1] + new + nbrs[i + 1 :]


def _corner_of(g: PlanarGraph, face_id: int, a: int) -> Tuple[int, int]:
    """(y, x) such that the room corner at `a` spans ccw from (a->y) to (a->x)."""
    walk = g.faces()[face_id]
    for k, d in enumerate(walk):
        if d[0] == a:
            x = walk[k - 1][0]  # in-dart (x -> a)
            y = d[1]  # out-dart (a -> y)
            return (y, x)
    raise StripcodeError(f"vertex {a} not on face {face_id}")


class _Embedder:
    """Mutable rotation-table editor used to hang components inside rooms."""

    def __init__(self, g: PlanarGraph):
        self.rot: Dict[int, List[int]] = {v: list(ns) for v, ns in g.rotation.items()}
        self.coords = dict(g.coords) if g.coords else {}
        self.outer = g.outer_dart
        self.next_id = max(g.rotation) + 1

    def fresh(self, near: int) -> int:
        v = self.next_id
        self.next_id += 1
        if self.coords:
            bx, by = self.coords.get(near, (0.0, 0.0))
            self.coords[v] = (bx + 0.1 + 0.05 * (v % 7), by + 0.1 + 0.05 * (v % 5))
        return v

    def add_path(self, a: int, y: int, x: int, length: int) -> List[int]:
        vs = []
        prev = a
        for _ in range(length):
            v = self.fresh(a)
            self.rot[v] = [prev]
            if prev != a:
                self.rot[prev].append(v)
            vs.append(v)
            prev = v
        _room_corner_insert(self.rot, a, y, x, [vs[0]])
        return vs

    def add_star(self, a: int, y: int, x: int, leaves: int) -> List[int]:
        c = self.fresh(a)
        self.rot[c] = [a]
        vs = [c]
        for _ in range(leaves):
            v = self.fresh(a)
            self.rot[v] = [c]
            self.rot[c].append(v)
            vs.append(v)
        _room_corner_insert(self.rot, a, y, x, [c])
        return vs

    def add_cycle(self, a: int, y: int, x: int, k: int) -> List[int]:
        """k-cycle through `a` (k-1 new vertices); the cycle interior becomes
        a new room inside the host room."""
        vs = [self.fresh(a) for _ in range(k - 1)]
        seq = [a] + vs
        for i, v in enumerate(vs, start=1):
            self.rot[v] = [seq[i - 1] if seq[i - 1] != a else a, seq[(i + 1) % len(seq)]]
        # ccw corner order [first, last] makes the cycle interior ccw
        _room_corner_insert(self.rot, a, y, x, [vs[0], vs[-1]])
        return vs

    def build(self) -> PlanarGraph:
        return PlanarGraph(
            {v: tuple(ns) for v, ns in self.rot.items()},
            self.outer,
            self.coords or None,
        )


def random_en(seed: int, max_level: int = 3, max_rooms: int = 12) -> PlanarGraph:
    """En graph: an E0-ish host with components embedded in its rooms.

    graph_e_value is at least 1 and at most max_level.
    """
    rng = random.Random(seed)
    host = (
        random_combined_grid(seed * 3 + 1, max_rooms)
        if rng.random() < 0.5
        else random_e0(seed * 3 + 2, max_rooms)
    )
    g = _embed_levels(host, rng, max_level)
    cls = classify(g)
    if cls.kind != "en":
        raise UnsupportedClassError("generator failed to produce an En graph")
    return g


def _embed_levels(g: PlanarGraph, rng: random.Random, levels: int) -> PlanarGraph:
    if levels < 1:
        return g
    target = rng.randint(1, levels)
    emb = _Embedder(g)
    rooms = g.inner_faces()
    targets = rng.sample(rooms, k=max(1, min(len(rooms), rng.randint(1, 3))))
    cycle_attachments: List[Tuple[int, int]] = []  # (attach vertex, first cycle vertex)
    for i, f in enumerate(targets):
        contour = g.contour_vertices(f)
        a = rng.choice(sorted(set(contour)))
        y, x = _corner_of(g, f, a)
        kind = rng.choice(["path", "star", "cycle"]) if i else "cycle"
        if kind == "path":
            emb.add_path(a, y, x, rng.randint(1, 3))
        elif kind == "star":
            emb.add_star(a, y, x, rng.randint(2, 3))
        else:
            vs = emb.add_cycle(a, y, x, rng.randint(3, 4))
            cycle_attachments.append((a, vs[0]))
    out = emb.build()
    # nest further cycles to reach the target embedding value
    a, w = cycle_attachments[0]
    for depth in range(2, target + 1):
        face = out.face_of((a, w))  # ccw interior of the last cycle
        deeper = _Embedder(out)
        b = rng.choice(sorted(set(out.contour_vertices(face))))
        yy, xx = _corner_of(out, face, b)
        vs = deeper.add_cycle(b, yy, xx, rng.randint(3, 4))
        out = deeper.build()
        a, w = b, vs[0]
    return out


# ----------------------------------------------------------------------
# fixed fixtures


def tree_case() -> PlanarGraph:
    """Small tree with one long backtrack (3 -> 1) and one sibling pair (6, 7)."""
    rot = {
        1: (2, 4),
        2: (1, 3),
        3: (2,),
        4: (1, 5),
        5: (4, 6, 7),
        6: (5,),
        7: (5,),
    }
    return PlanarGraph(rot, (1, 2))


def nested_squares(levels: int = 3) -> PlanarGraph:
    """Square containing a square containing ... linked by bridges."""
    rot: Dict[int, List[int]] = {}
    coords = {}
    base = 0

    def square(idx, size, offset):
        a, b, c, d = idx, idx + 1, idx + 2, idx + 3
        rot[a] = [b, d]
        rot[b] = [c, a]
        rot[c] = [d, b]
        rot[d] = [a, c]
        coords[a] = (offset, offset)
        coords[b] = (offset + size, offset)
        coords[c] = (offset + size, offset + size)
        coords[d] = (offset, offset + size)
        return a

    prev_corner = None
    for lvl in range(levels):
        a = square(base, 10.0 - 3 * lvl, 1.5 * lvl)
        if prev_corner is not None:
            # bridge from previous square's corner into this one's corner
            rot[prev_corner].insert(1, a)
            rot[a].append(prev_corner)
        prev_corner = base  # attach deeper bridge at this square's sw corner
        base += 4
    return PlanarGraph(
        {v: tuple(ns) for v, ns in rot.items()}, (1, 0), coords
    )
