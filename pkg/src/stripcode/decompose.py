"""Division of a plane graph into the strip/branch/inward-subgraph hierarchy.

Kinds follow the space symbol table: C0 strip, C1 branch, C2 subgraph used
as a junction vertex, C3 subgraph chain between main rooms, C4 inward
subgraph, C5 room with embedded content, C6 combined tree, C7 tree.

The decomposition fixes room ownership, chain orders and directions; the
traversal module turns it into the vertex/event sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import (
    DegenerateStripError,
    InvalidStartError,
    NoRouteError,
    StripcodeError,
    UnsupportedClassError,
)
from .planar import PlanarGraph, Room, classify, edge_key, embedding_levels

CW, ACW = "cw", "acw"


def opposite(direction: str) -> str:
    return ACW if direction == CW else CW


@dataclass
class SpaceObject:
    sid: int
    kind: str  # 'C0'..'C7'
    direction: Optional[str] = None
    rooms: Tuple[int, ...] = ()
    children: List["SpaceObject"] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def dump(self, indent: int = 0) -> str:
        bits = [self.kind]
        if self.direction:
            bits.append(self.direction)
        if self.rooms:
            bits.append("rooms=" + ",".join(map(str, self.rooms)))
        for k in ("circular", "segments", "attach", "ea", "eb"):
            if k in self.meta and self.meta[k] not in (None, False):
                v = self.meta[k]
                if k == "segments":
                    v = "|".join(",".join(map(str, seg)) for seg in v)
                bits.append(f"{k}={v}")
        line = "  " * indent + " ".join(map(str, bits))
        return "\n".join([line] + [c.dump(indent + 1) for c in self.children])


@dataclass
class MainRoute:
    main_rooms: Tuple[int, ...]
    c4_vertices: List[SpaceObject]  # kind C2
    c4_chains: List[SpaceObject]  # kind C3
    junction_vertices: Dict[str, Tuple[int, ...]] = field(default_factory=dict)


@dataclass
class CombinedTree:
    nodes: List[SpaceObject]  # C7 / C4 nodes
    tree_edges: List[Tuple[int, int]]  # indices into nodes
    attachment: Tuple[int, ...]  # room-contour vertices it hangs from
    ea_value: int
    eb_value: int


@dataclass
class TraversalConfig:
    principle: str = "inward"  # inward | outward
    mode: str = "virtual-edge"  # branch | virtual-edge
    start: Optional[Tuple[int, int]] = None  # boundary dart, or None for geometric


@dataclass
class SpaceTree:
    graph: PlanarGraph
    root: SpaceObject
    config: TraversalConfig
    kind: str  # classification kind
    level: int = 0
    by_sid: Dict[int, SpaceObject] = field(default_factory=dict)
    room_strip: Dict[int, int] = field(default_factory=dict)  # room -> strip sid
    strip_depth: Dict[int, int] = field(default_factory=dict)  # strip sid -> depth
    room_space: Dict[int, int] = field(default_factory=dict)  # room -> owning sid

    def register(self, node: SpaceObject):
        self.by_sid[node.sid] = node

    def strips(self) -> List[SpaceObject]:
        return [s for s in self.root.walk() if s.kind == "C0"]

    def dump(self) -> str:
        return self.root.dump()


class _Ids:
    def __init__(self):
        self.n = 0

    def take(self) -> int:
        self.n += 1
        return self.n


# ----------------------------------------------------------------------
# room-level helpers (contour based, so they also work on En skeletons)


def _contour_adjacency(g: PlanarGraph, faces: Sequence[int]) -> Dict[int, Set[int]]:
    keep = set(faces)
    by_edge: Dict[FrozenSet[int], List[int]] = {}
    for f in keep:
        for e in g.contour_edges(f):
            by_edge.setdefault(e, []).append(f)
    adj: Dict[int, Set[int]] = {f: set() for f in keep}
    for e, fs in by_edge.items():
        if len(fs) == 2:
            adj[fs[0]].add(fs[1])
            adj[fs[1]].add(fs[0])
    return adj


def _groups(adj: Dict[int, Set[int]], members: Set[int]) -> List[List[int]]:
    out = []
    left = set(members)
    while left:
        root = min(left)
        comp = {root}
        stack = [root]
        while stack:
            f = stack.pop()
            for h in adj[f]:
                if h in left and h not in comp:
                    comp.add(h)
                    stack.append(h)
        out.append(sorted(comp))
        left -= comp
    out.sort(key=lambda c: c[0])
    return out


def _bfs_far(adj: Dict[int, Set[int]], start: int, members: Set[int]) -> int:
    dist = {start: 0}
    frontier = [start]
    far = start
    while frontier:
        nxt = []
        for f in frontier:
            for h in sorted(adj[f]):
                if h in members and h not in dist:
                    dist[h] = dist[f] + 1
                    nxt.append(h)
                    if (dist[h], h) > (dist[far], far) and False:
                        pass
        frontier = nxt
    far = max(dist, key=lambda f: (dist[f], -f))
    return far


def _shortest_chain(adj: Dict[int, Set[int]], a: int, b: int, members: Set[int]) -> List[int]:
    """Fewest rooms a->b; ties broken by smallest room-id sequence."""
    if a == b:
        return [a]
    best_prev: Dict[int, int] = {}
    dist = {a: 0}
    frontier = [a]
    while frontier and b not in dist:
        nxt = []
        for f in sorted(frontier):
            for h in sorted(adj[f]):
                if h in members and h not in dist:
                    dist[h] = dist[f] + 1
                    best_prev[h] = f
                    nxt.append(h)
                elif h in members and dist.get(h) == dist[f] + 1 and best_prev.get(h, f) > f:
                    best_prev[h] = f
        frontier = nxt
    if b not in dist:
        raise NoRouteError(f"rooms {a} and {b} are not connected")
    chain = [b]
    while chain[-1] != a:
        chain.append(best_prev[chain[-1]])
    return chain[::-1]


def _ring_order(adj: Dict[int, Set[int]], members: Set[int], entry: int) -> List[int]:
    order = [entry]
    prev = None
    cur = entry
    while True:
        nbrs = sorted(n for n in adj[cur] if n in members and n != prev)
        if not nbrs:
            break
        nxt = nbrs[0]
        if nxt == entry:
            break
        order.append(nxt)
        prev, cur = cur, nxt
        if len(order) > len(members):
            raise StripcodeError("ring walk failed")
    return order


def main_route(
    g: PlanarGraph,
    group: Sequence[int],
    endpoints: Tuple[int, int],
    ids: Optional[_Ids] = None,
) -> MainRoute:
    """Shortest room chain between the endpoints; off-chain rooms grouped
    into C4 objects (classified later as C2 junction / C3 chain)."""
    ids = ids or _Ids()
    members = set(group)
    adj = _contour_adjacency(g, group)
    chain = _shortest_chain(adj, endpoints[0], endpoints[1], members)
    off = members - set(chain)
    c2s: List[SpaceObject] = []
    c3s: List[SpaceObject] = []
    junctions: Dict[str, List[int]] = {"A1": [], "A2": [], "A3": []}
    for comp in _groups(adj, off):
        node = SpaceObject(ids.take(), "C3", rooms=tuple(comp), meta={})
        # which main rooms the component touches decides its role; the
        # caller may upgrade C3 -> C2 once later strips are known
        touching = sorted(
            m for m in chain if any(m in adj[c] for c in comp)
        )
        node.meta["touch_main"] = tuple(touching)
        c3s.append(node)
    return MainRoute(
        main_rooms=tuple(chain),
        c4_vertices=c2s,
        c4_chains=c3s,
        junction_vertices={k: tuple(v) for k, v in junctions.items()},
    )


# ----------------------------------------------------------------------
# start resolution and the initial strip


def resolve_start(g: PlanarGraph, start: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    """Outer-walk dart to begin at: explicit, or lower-right by coordinates."""
    walk = g.outer_walk()
    if start is not None:
        d = tuple(start)
        if d not in walk:
            raise InvalidStartError(f"start dart {d} is not on the outer face")
        return d  # type: ignore[return-value]
    if not g.coords:
        raise InvalidStartError("graph has no coordinates; name a boundary dart")
    best = None
    for d in walk:
        x, y = g.coords[d[0]]
        key = (y, -x)
        if best is None or key < best[0]:
            best = (key, d)
    return best[1]


def _straight_run(g: PlanarGraph, d0: Tuple[int, int]) -> List[Tuple[int, int]]:
    """Maximal run of outer-walk darts from d0 with a constant direction."""
    if not g.coords:
        return [d0]
    walk = list(g.outer_walk())
    i = walk.index(d0)
    run = [d0]

    def vec(d):
        (x1, y1), (x2, y2) = g.coords[d[0]], g.coords[d[1]]
        dx, dy = x2 - x1, y2 - y1
        n = max(abs(dx), abs(dy)) or 1.0
        return (round(dx / n, 6), round(dy / n, 6))

    v0 = vec(d0)
    for k in range(1, len(walk)):
        d = walk[(i + k) % len(walk)]
        if vec(d) != v0:
            break
        run.append(d)
    return run


def initial_strip(g: PlanarGraph, start=None, ids: Optional[_Ids] = None) -> SpaceObject:
    """Outer row of rooms along the straight outer-boundary run at the start."""
    if g.room_count() == 0:
        raise UnsupportedClassError("initial strip needs rooms")
    ids = ids or _Ids()
    d0 = resolve_start(g, start)
    skeleton = {f for f in g.inner_faces()}
    rooms: List[int] = []
    for d in _straight_run(g, d0):
        f = g.face_of(g.twin(d))
        if f in skeleton and (not rooms or rooms[-1] != f):
            if f in rooms:
                break
            rooms.append(f)
    if not rooms:
        raise InvalidStartError("no room borders the start run")
    return SpaceObject(
        ids.take(),
        "C0",
        direction=CW,
        rooms=tuple(rooms),
        meta={"segments": [list(rooms)], "start_dart": d0, "circular": False},
    )


# ----------------------------------------------------------------------
# strip derivation


def _entry_room(
    g: PlanarGraph, group: Sequence[int], prev_chain: Sequence[int]
) -> Tuple[int, int]:
    """(entry room, index of latest prev room it touches)."""
    adj_prev: Dict[int, int] = {}
    prev_index = {r: i for i, r in enumerate(prev_chain)}
    by_edge: Dict[FrozenSet[int], int] = {}
    for r in prev_chain:
        for e in g.contour_edges(r):
            by_edge[e] = max(by_edge.get(e, -1), prev_index[r])
    best = None
    for f in group:
        touch = [by_edge[e] for e in g.contour_edges(f) if e in by_edge]
        if touch:
            key = (max(touch), -f)
            if best is None or key > best[0]:
                best = (key, f)
    if best is None:
        raise DegenerateStripError("group does not touch the previous strip")
    return best[1], best[0][0][0]


def next_strips(
    g: PlanarGraph,
    prev: SpaceObject,
    mode: str,
    principle: str,
    assigned: Set[int],
    skeleton: Set[int],
    ids: _Ids,
) -> List[SpaceObject]:
    """Derive the strips (or branches) following `prev` by connection
    calculation; see build_space_tree for the recursion."""
    adj_all = _contour_adjacency(g, sorted(skeleton))
    frontier = set()
    for r in prev.rooms:
        frontier |= {h for h in adj_all[r] if h not in assigned}
    if not frontier:
        return []
    groups = _groups(adj_all, frontier)
    # order groups by earliest previous-chain room they touch
    prev_index = {r: i for i, r in enumerate(prev.rooms)}

    def group_key(comp):
        touches = [
            min(prev_index[m] for m in adj_all[f] if m in prev_index)
            for f in comp
            if any(m in prev_index for m in adj_all[f])
        ]
        return (min(touches) if touches else 0, comp[0])

    groups.sort(key=group_key)
    direction = opposite(prev.direction or CW)
    out: List[SpaceObject] = []

    def build_strip(comp: Sequence[int]) -> SpaceObject:
        members = set(comp)
        sub_adj = {f: {h for h in adj_all[f] if h in members} for f in comp}
        entry, _ = _entry_room(g, comp, prev.rooms)
        is_ring = len(comp) >= 3 and all(len(sub_adj[f]) == 2 for f in comp)
        if is_ring:
            chain = _ring_order(sub_adj, members, entry)
            route = MainRoute(tuple(chain), [], [], {})
            circular = True
        else:
            exit_room = _bfs_far(sub_adj, entry, members)
            route = main_route(g, comp, (entry, exit_room), ids)
            circular = False
        node = SpaceObject(
            ids.take(),
            "C0",
            direction=direction,
            rooms=route.main_rooms,
            meta={
                "segments": [list(route.main_rooms)],
                "circular": circular,
                "route": route,
            },
        )
        for c3 in route.c4_chains:
            node.children.append(c3)
        return node

    if len(groups) == 1 or mode == "virtual-edge":
        if len(groups) == 1:
            strip = build_strip(groups[0])
        else:
            parts = [build_strip(comp) for comp in groups]
            # one formal strip: segments stitched with virtual edges
            chain = tuple(itertools.chain.from_iterable(p.rooms for p in parts))
            strip = SpaceObject(
                ids.take(),
                "C0",
                direction=direction,
                rooms=chain,
                meta={
                    "segments": [list(p.rooms) for p in parts],
                    "circular": False,
                    "route": None,
                },
            )
            for p in parts:
                strip.children.extend(p.children)
        out.append(strip)
    else:
        for comp in groups:
            strip = build_strip(comp)
            branch = SpaceObject(
                ids.take(), "C1", direction=direction, rooms=strip.rooms
            )
            branch.children.append(strip)
            out.append(branch)
    return out


# ----------------------------------------------------------------------
# inward subgraphs and combined trees


def _region_vertices(g: PlanarGraph, rooms: Sequence[int]) -> Set[int]:
    verts: Set[int] = set()
    for f in rooms:
        verts.update(g.contour_vertices(f))
    return verts


def region_boundary_walk(
    g: PlanarGraph, rooms: Sequence[int], attach: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Clockwise walk of the outer boundary of a union of rooms.

    Boundary darts are those whose left face is outside the region while
    the twin's left face is inside; walked with the region on the right.
    """
    inside = set(rooms)
    boundary: Set[Tuple[int, int]] = set()
    for f in rooms:
        c = g.contour(f)
        for d in c or ():
            # contour darts of an inner face run ccw (region on left);
            # the reversed dart has the region on the right
            other = g.face_of(d) if False else None
            tw = g.twin(d)
            tf = g.face_of(tw)
            if tf not in inside:
                boundary.add(tw)
    if not boundary:
        raise StripcodeError("region has no boundary")
    nxt: Dict[int, List[Tuple[int, int]]] = {}
    for d in boundary:
        nxt.setdefault(d[0], []).append(d)
    start_darts = sorted(boundary)
    if attach is not None:
        anchored = sorted(d for d in boundary if d[0] == attach)
        if anchored:
            start_darts = anchored + [d for d in start_darts if d[0] != attach]
    walk = [start_darts[0]]
    used = {start_darts[0]}
    while True:
        u, v = walk[-1]
        # continue along the boundary: at v take the boundary dart that keeps
        # the region on the right, i.e. the first boundary dart clockwise
        # from (v, u) in the rotation at v
        cand = None
        cur = (v, u)
        for _ in range(len(g.rotation[v])):
            cur = g.next_dart(cur)
            if cur in boundary:
                cand = cur
                break
        if cand is None:
            raise StripcodeError("boundary walk stuck")
        if cand == walk[0]:
            break
        if cand in used:
            raise StripcodeError("boundary walk repeats a dart")
        walk.append(cand)
        used.add(cand)
    return walk


def build_inward_subgraph(
    g: PlanarGraph,
    rooms: Sequence[int],
    ids: _Ids,
    skeleton_levels,
    attach: Optional[int] = None,
    kind: str = "C4",
) -> SpaceObject:
    """C4 node: boundary-first division of a room set into ring strips."""
    node = SpaceObject(ids.take(), kind, direction=CW, rooms=tuple(sorted(rooms)))
    walk = region_boundary_walk(g, rooms, attach)
    node.meta["boundary"] = walk
    node.meta["attach"] = walk[0][0]
    members = set(rooms)
    adj = _contour_adjacency(g, sorted(members))
    bverts = {d[0] for d in walk}
    ring1 = sorted(f for f in members if set(g.contour_vertices(f)) & bverts)
    assigned: Set[int] = set()
    prev: Optional[SpaceObject] = None
    first = True
    while assigned != members:
        if first:
            comp_rooms = ring1
            first = False
        else:
            frontier = set()
            for r in prev.rooms:
                frontier |= {h for h in adj[r] if h not in assigned}
            if not frontier:
                raise DegenerateStripError("inward rings do not cover the region")
            comp_rooms = sorted(frontier)
        sub_adj = {f: {h for h in adj[f] if h in comp_rooms} for h2 in [0] for f in comp_rooms}
        entry = comp_rooms[0]
        if prev is not None:
            entry, _ = _entry_room(g, comp_rooms, prev.rooms)
        is_ring = len(comp_rooms) >= 3 and all(len(sub_adj[f]) == 2 for f in comp_rooms)
        if is_ring:
            chain = _ring_order(sub_adj, set(comp_rooms), entry)
        else:
            far = _bfs_far(sub_adj, entry, set(comp_rooms))
            chain = _shortest_chain(sub_adj, entry, far, set(comp_rooms))
            extra = [f for f in comp_rooms if f not in chain]
            # absorbed rooms with no new vertices stay on this strip (S-rooms)
            chain = chain + sorted(extra)
        strip = SpaceObject(
            ids.take(),
            "C0",
            direction=CW if prev is None else opposite(prev.direction),
            rooms=tuple(chain),
            meta={"segments": [list(chain)], "circular": is_ring},
        )
        node.children.append(strip)
        assigned.update(chain)
        prev = strip
    return node


def extract_combined_trees(
    g: PlanarGraph, room_face: int, ids: Optional[_Ids] = None, report=None
) -> List[CombinedTree]:
    """Combined trees of one room: its embedded components, each organized
    as tree vertices (C7) and room groups (C4) joined at shared vertices."""
    ids = ids or _Ids()
    report = report or embedding_levels(g)
    inside_faces = g.faces_inside(room_face) - {room_face}
    iv = g.embedded_vertices(room_face)
    if not iv:
        return []
    contour = set(g.contour_vertices(room_face))
    host_ea = report.ea[room_face]
    # connected components of the embedded content
    comp_of: Dict[int, int] = {}
    comps: List[Set[int]] = []
    for v in sorted(iv):
        if v in comp_of:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in g.rotation[u]:
                if w in iv and w not in comp:
                    comp.add(w)
                    stack.append(w)
        idx = len(comps)
        comps.append(comp)
        for u in comp:
            comp_of[u] = idx
    trees: List[CombinedTree] = []
    level_rooms = [f for f in inside_faces if report.ea.get(f) == host_ea + 1]
    adj = _contour_adjacency(g, level_rooms)
    for comp in comps:
        attach = tuple(
            sorted(a for a in contour if any(w in comp for w in g.rotation[a]))
        )
        my_rooms = [
            f for f in level_rooms if set(g.contour_vertices(f)) & (comp | set(attach))
        ]
        groups = _groups(adj, set(my_rooms))
        nodes: List[SpaceObject] = []
        territory: Set[int] = set()
        for grp in groups:
            c4 = SpaceObject(ids.take(), "C4", rooms=tuple(grp))
            inner_faces = set()
            for f in grp:
                inner_faces |= g.faces_inside(f)
            depth = max(
                (report.ea[h] for h in inner_faces if h in report.ea), default=host_ea + 1
            )
            c4.meta["eb"] = depth - (host_ea + 1)
            verts = _region_vertices(g, grp)
            for f in inner_faces:
                verts |= set(g.face_walk_vertices(f))
            c4.meta["verts"] = verts
            territory |= verts
            nodes.append(c4)
        # tree part: component vertices/edges outside every C4 territory
        tree_verts = (comp | set(attach)) - territory
        tree_edges = []
        for u in sorted(comp | set(attach)):
            for w in g.rotation[u]:
                if u < w and (u in comp or w in comp):
                    if u in territory and w in territory:
                        continue
                    if (u in comp or u in attach) and (w in comp or w in attach):
                        tree_edges.append((u, w))
        seen: Set[int] = set()
        for u in sorted(tree_verts):
            if u in seen or u in contour:
                continue
            part = {u}
            stack = [u]
            while stack:
                a = stack.pop()
                for (x, y) in tree_edges:
                    for b in ((y,) if x == a else (x,) if y == a else ()):
                        if b not in part and b not in contour and b not in territory:
                            part.add(b)
                            stack.append(b)
            seen |= part
            c7 = SpaceObject(ids.take(), "C7")
            c7.meta["verts"] = part
            nodes.append(c7)
        # extra tree vertices for shared C4/C4 corners of degree > 2
        c4_nodes = [n for n in nodes if n.kind == "C4"]
        for a, b in itertools.combinations(range(len(c4_nodes)), 2):
            shared = c4_nodes[a].meta["verts"] & c4_nodes[b].meta["verts"]
            for s in sorted(shared):
                owned = any(
                    n.kind == "C7" and s in n.meta["verts"] for n in nodes
                )
                if g.degree(s) > 2 and not owned:
                    c7 = SpaceObject(ids.take(), "C7")
                    c7.meta["verts"] = {s}
                    nodes.append(c7)
        edges = []
        for i, j in itertools.combinations(range(len(nodes)), 2):
            if nodes[i].meta["verts"] & nodes[j].meta["verts"]:
                edges.append((i, j))
        eb = max((n.meta.get("eb", 0) for n in nodes if n.kind == "C4"), default=0)
        trees.append(
            CombinedTree(
                nodes=nodes,
                tree_edges=edges,
                attachment=attach,
                ea_value=host_ea + 1,
                eb_value=eb,
            )
        )
    # order by attachment so the caller can arrange chains deterministically
    trees.sort(key=lambda t: t.attachment)
    return trees


def refine_c4_chain(g: PlanarGraph, c3: SpaceObject, ids: Optional[_Ids] = None) -> SpaceObject:
    """Expand a C3 chain by the inward rule (boundary kept non-degenerate)."""
    ids = ids or _Ids()
    return build_inward_subgraph(g, c3.rooms, ids, None, attach=c3.meta.get("attach"))


# ----------------------------------------------------------------------
# whole-graph decomposition


def _pick_interior_room(g: PlanarGraph) -> Optional[int]:
    outer_edges = {edge_key(*d) for d in g.outer_walk()}
    inner = g.inner_faces()
    boundary_rooms = {
        f for f in inner if g.contour_edges(f) & outer_edges
    }
    interior = [f for f in inner if f not in boundary_rooms]
    if not interior:
        return None
    # deepest by BFS from the boundary rooms, smallest id on ties
    adj = _contour_adjacency(g, inner)
    dist = {f: 0 for f in boundary_rooms}
    frontier = sorted(boundary_rooms)
    while frontier:
        nxt = []
        for f in frontier:
            for h in sorted(adj[f]):
                if h not in dist:
                    dist[h] = dist[f] + 1
                    nxt.append(h)
        frontier = nxt
    return max(interior, key=lambda f: (dist.get(f, 0), -f))


def outward_applicable(g: PlanarGraph) -> bool:
    try:
        return g.room_count() > 1 and _pick_interior_room(g) is not None
    except StripcodeError:
        return False


def build_space_tree(g: PlanarGraph, config: Optional[TraversalConfig] = None) -> SpaceTree:
    config = config or TraversalConfig()
    cls = classify(g)
    ids = _Ids()
    tree = SpaceTree(graph=g, root=None, config=config, kind=cls.kind, level=cls.level)  # type: ignore[arg-type]

    if cls.kind == "tree":
        root = SpaceObject(ids.take(), "C7", direction=CW)
        root.meta["verts"] = set(g.vertices)
        tree.root = root
        tree.register(root)
        return tree

    report = embedding_levels(g)
    skeleton = {f for f in g.inner_faces() if report.ea[f] == 0}

    if config.principle == "outward":
        start_room = _pick_interior_room(g)
        if start_room is None:
            raise UnsupportedClassError("outward principle needs an interior room")
        adj = _contour_adjacency(g, sorted(skeleton))
        first = SpaceObject(
            ids.take(),
            "C0",
            direction=CW,
            rooms=(start_room,),
            meta={"segments": [[start_room]], "circular": False, "outward_seed": True},
        )
        chain_strips = [first]
        assigned = {start_room}
        prev = first
        while assigned != skeleton:
            derived = next_strips(g, prev, config.mode, "outward", assigned, skeleton, ids)
            if not derived:
                raise DegenerateStripError("outward rings do not cover all rooms")
            follow = []
            for node in derived:
                for s in node.walk():
                    if s.kind == "C0":
                        assigned.update(s.rooms)
                        follow.append(s)
            prev.children.extend(derived)
            prev = follow[-1]
        tree.root = first
    else:
        first = initial_strip(g, config.start, ids)
        first.rooms = tuple(r for r in first.rooms if r in skeleton)
        first.meta["segments"] = [list(first.rooms)]
        assigned = set(first.rooms)
        prev = first
        while assigned != skeleton:
            derived = next_strips(g, prev, config.mode, "inward", assigned, skeleton, ids)
            if not derived:
                raise DegenerateStripError("strips do not cover all rooms")
            follow = []
            for node in derived:
                for s in node.walk():
                    if s.kind == "C0":
                        assigned.update(s.rooms)
                        follow.append(s)
            prev.children.extend(derived)
            prev = follow[-1]
        tree.root = first

    # attach C4 refinements under C3 nodes, combined trees under rooms
    for node in list(tree.root.walk()):
        tree.register(node)
        if node.kind == "C0":
            for r in node.rooms:
                tree.room_strip[r] = node.sid
        if node.kind == "C3" and not node.children:
            c4 = build_inward_subgraph(g, node.rooms, ids, report)
            node.children.append(c4)
            for sub in c4.walk():
                tree.register(sub)
                if sub.kind == "C0":
                    for r in sub.rooms:
                        tree.room_strip.setdefault(r, sub.sid)

    # strip depths along every chain (branches included)
    def assign_depth(node: SpaceObject, depth: int):
        if node.kind == "C0":
            tree.strip_depth[node.sid] = depth
            depth += 1
        for c in node.children:
            assign_depth(c, depth)

    assign_depth(tree.root, 0)

    # combined trees for embedded rooms
    if cls.kind == "en":
        tree.meta_combined = {}
        for f in sorted(skeleton):
            if report.eb[f] > 0 or g.embedded_vertices(f):
                tree.meta_combined[f] = extract_combined_trees(g, f, ids, report)
    else:
        tree.meta_combined = {}
    return tree
