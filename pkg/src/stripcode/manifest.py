"""JSON graph manifests.

Two accepted shapes:

* convenience form: {"vertices": [{"id", "x"?, "y"?}...],
  "rotation": {"<id>": [nbr, ...ccw...]}, "outer": [u, v]}
* dart form: {"vertices": [...], "darts": [{"id", "origin", "twin", "next"}...],
  "outer_face": <dart id>} which is lowered to the rotation form.

Writers emit the convenience form.
"""

from __future__ import annotations

import json
from typing import Dict

from .errors import FormatError
from .planar import PlanarGraph


def graph_to_manifest(g: PlanarGraph) -> dict:
    verts = []
    for v in g.vertices:
        rec: Dict[str, object] = {"id": v}
        if g.coords and v in g.coords:
            rec["x"], rec["y"] = g.coords[v]
        verts.append(rec)
    return {
        "vertices": verts,
        "rotation": {str(v): list(g.rotation[v]) for v in g.vertices},
        "outer": list(g.outer_dart),
    }


def graph_from_manifest(data: dict) -> PlanarGraph:
    if "rotation" in data:
        rotation = {int(v): tuple(nbrs) for v, nbrs in data["rotation"].items()}
        outer = tuple(data["outer"])
    elif "darts" in data:
        darts = {d["id"]: d for d in data["darts"]}
        rotation = {}
        starts = {}
        for d in data["darts"]:
            starts.setdefault(d["origin"], d["id"])
        for origin, first in starts.items():
            seq = []
            cur = first
            while True:
                seq.append(darts[darts[cur]["twin"]]["origin"])
                cur = darts[cur]["next"]
                if cur == first:
                    break
            rotation[origin] = tuple(seq)
        od = darts[data["outer_face"]]
        outer = (od["origin"], darts[od["twin"]]["origin"])
    else:
        raise FormatError("manifest needs 'rotation' or 'darts'")
    coords = {}
    for rec in data.get("vertices", []):
        if "x" in rec and "y" in rec:
            coords[int(rec["id"])] = (float(rec["x"]), float(rec["y"]))
    missing = set(rotation) - set(coords)
    return PlanarGraph(rotation, outer, coords if not missing else None)


def save_graph(g: PlanarGraph, path: str):
    with open(path, "w") as fh:
        json.dump(graph_to_manifest(g), fh, indent=1)
        fh.write("\n")


def load_graph(path: str) -> PlanarGraph:
    with open(path) as fh:
        return graph_from_manifest(json.load(fh))
