"""The genus-bounded derived complex and the decision queries built on it.

Vertices are index-0, -1 and -2 normal surfaces, merged when their bent
representatives are joined by constant-complexity pinch paths, plus the two
empty-surface vertices ``v-`` and ``v+``.  Edges come from monotone pinch
paths that descend from an index-1 or index-2 vertex to a lower-index one;
each carries its witness.  Faces are the edge triangles whose vertex indices
are 0, 1 and 2.

Every verdict that rests on a search being complete is only issued when the
provenance says all searches were exhausted; otherwise the answer is
three-valued.
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import heightcx
from .bent import BentSurface, BudgetExhausted, apply_pinch, neighbours, remove_skewered_spheres, replay
from .bent import PinchMove
from .surfaces import NormalSurface, bent_representatives, enumerate_index0, enumerate_index12, region_sides
from .triangulation import EDGE_VERTICES, Triangulation, parse_triangulation

V_MINUS, V_PLUS = "v-", "v+"
SIDES = ("negative", "positive")


class DerivedError(ValueError):
    pass


class BuildBudgetExceeded(BudgetExhausted):
    """A slice search hit its budget; ``partial`` is the flagged complex."""


# data ----------------------------------------------------------------------

@dataclass
class Vertex:
    id: str
    index: int
    genus: int
    complexity: int
    weights: tuple
    surfaces: list = field(default_factory=list)  # normal surface dicts
    representatives: list = field(default_factory=list)  # bent surface dicts

    def to_dict(self) -> dict:
        return {"id": self.id, "index": self.index, "genus": self.genus, "complexity": self.complexity,
                "weights": list(self.weights), "surfaces": self.surfaces,
                "representatives": self.representatives}

    @classmethod
    def from_dict(cls, d: dict) -> "Vertex":
        return cls(d["id"], d["index"], d["genus"], d["complexity"], tuple(d["weights"]),
                   d["surfaces"], d["representatives"])


@dataclass
class DEdge:
    id: str
    upper: str
    lower: str
    side: str
    witness: dict  # {"start": bent dict, "moves": [...], "complexities": [...]}

    @property
    def tail(self) -> str:
        return self.upper if self.side == "positive" else self.lower

    @property
    def head(self) -> str:
        return self.lower if self.side == "positive" else self.upper

    def to_dict(self) -> dict:
        return {"id": self.id, "upper": self.upper, "lower": self.lower, "side": self.side,
                "tail": self.tail, "head": self.head, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> "DEdge":
        return cls(d["id"], d["upper"], d["lower"], d["side"], d["witness"])


@dataclass
class Face:
    id: str
    vertices: tuple  # ordered by index 0, 1, 2

    def to_dict(self) -> dict:
        return {"id": self.id, "vertices": list(self.vertices)}


class DerivedComplex:
    def __init__(self, tri: Triangulation, vertices, edges, faces, provenance):
        self.tri = tri
        self.vertices = {v.id: v for v in vertices}
        self.edges = {e.id: e for e in edges}
        self.faces = {f.id: f for f in faces}
        self.provenance = provenance

    @property
    def complete(self) -> bool:
        return bool(self.provenance.get("complete"))

    def vertex_ids(self, index=None) -> list:
        return [v for v in self.vertices if index is None or self.vertices[v].index == index]

    def edges_at(self, v) -> list:
        return [e for e in self.edges.values() if v in (e.upper, e.lower)]

    def out_edges(self, v) -> list:
        return [e for e in self.edges.values() if e.tail == v]

    def height_complex(self) -> heightcx.HeightComplex:
        """The 1-skeleton as a height complex with genus labels, for path genus."""
        return heightcx.HeightComplex(
            {v.id: v.index for v in self.vertices.values()},
            [heightcx.Edge(e.id, e.tail, e.head) for e in self.edges.values()],
            genus={v.id: v.genus for v in self.vertices.values()},
        )

    def to_dict(self) -> dict:
        return {
            "triangulation": self.tri.to_dict(),
            "vertices": [self.vertices[k].to_dict() for k in _id_order(self.vertices)],
            "edges": [self.edges[k].to_dict() for k in _id_order(self.edges)],
            "faces": [self.faces[k].to_dict() for k in _id_order(self.faces)],
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DerivedComplex":
        tri = parse_triangulation(json.dumps(d["triangulation"]))
        return cls(tri, [Vertex.from_dict(v) for v in d["vertices"]],
                   [DEdge.from_dict(e) for e in d["edges"]],
                   [Face(f["id"], tuple(f["vertices"])) for f in d["faces"]], d["provenance"])


def _id_order(items) -> list:
    def key(k):
        head = k.rstrip("0123456789")
        tail = k[len(head):]
        return (head, int(tail) if tail else -1)
    return sorted(items, key=key)


# export ------------------------------------------------------------------------

def export(D: DerivedComplex, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(D.to_dict(), sort_keys=True, indent=1) + "\n"
    if fmt == "dot":
        return _dot(D)
    raise DerivedError(f"unknown format {fmt!r}")


def load_json(text: str) -> DerivedComplex:
    return DerivedComplex.from_dict(json.loads(text))


_COLOURS = {0: "lightblue", 1: "gold", 2: "salmon"}


def _dot(D: DerivedComplex) -> str:
    lines = ["digraph D2 {"]
    for k in _id_order(D.vertices):
        v = D.vertices[k]
        lines.append(f'  "{k}" [label="{k}\\ng={v.genus}", style=filled, fillcolor={_COLOURS[v.index]}];')
    for k in _id_order(D.edges):
        e = D.edges[k]
        lines.append(f'  "{e.tail}" -> "{e.head}" [label="{k}"];')
    for k in _id_order(D.faces):
        a, b, c = D.faces[k].vertices
        lines.append(f"  // face {k}: {a} {b} {c}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# slices of G(w) ------------------------------------------------------------------

@dataclass
class _Slice:
    nodes: dict  # key -> BentSurface
    complexity: dict  # key -> int
    adj: dict  # key -> list of (move, target key, side or None)
    status: str
    target: dict  # key -> key with skewered spheres removed
    trivial: dict  # key -> True when only skewered and vertex-linking spheres remain


def _explore_slice(starts, budget: int) -> _Slice:
    """All diagrams reached from ``starts`` by pinches that do not raise the complexity."""
    nodes, comp, adj, target = {}, {}, {}, {}
    queue = deque()
    for b in sorted(starts, key=BentSurface.key):
        if b.key() not in nodes:
            nodes[b.key()] = b
            comp[b.key()] = b.complexity()
            queue.append(b.key())
    status = "Exhausted"
    seen_c: dict = {}
    while queue:
        key = queue.popleft()
        cur = nodes[key]
        target[key] = remove_skewered_spheres(cur).key()
        out = []
        colouring = False
        for move, nxt in neighbours(cur):
            k = nxt.key()
            c = comp.get(k)
            if c is None:
                c = seen_c.get(k)
            if c is None:
                c = seen_c[k] = nxt.complexity()
            if c > comp[key]:
                continue
            side = None
            if move.classification == "Compression":
                if colouring is False:
                    colouring = region_sides(cur)
                if colouring is not None:
                    find, colour = colouring
                    side = colour.get(find(("c", move.cell, move.region)))
            out.append((move, k, side))
            if k not in nodes:
                if len(nodes) >= budget:
                    status = "BudgetExhausted"
                    continue
                nodes[k] = nxt
                comp[k] = c
                queue.append(k)
        adj[key] = out
    for key in nodes:
        if key not in target:
            target[key] = remove_skewered_spheres(nodes[key]).key()
            adj.setdefault(key, [])
    trivial = {k: only_vertex_links(remove_skewered_spheres(nodes[k])) for k in nodes}
    return _Slice(nodes, comp, adj, status, target, trivial)


# building -----------------------------------------------------------------------

DEFAULT_BUDGETS = {"enumeration": 2_000_000, "slice": 200_000, "paths": 200_000}


def build_d2(tri: Triangulation, genus_bound: int, weight_cap: int, budgets: Optional[dict] = None,
             allow_partial: bool = False, threads: int = 1) -> DerivedComplex:
    """The subcomplex of the derived complex spanned by surfaces of genus at most ``genus_bound``."""
    if genus_bound < 0 or weight_cap < 0:
        raise DerivedError("genus bound and weight cap must be non-negative")
    b = dict(DEFAULT_BUDGETS)
    b.update(budgets or {})
    if any(v < 1 for v in b.values()):
        raise DerivedError("budgets must be positive")
    g, W = genus_bound, weight_cap
    enum_status = "Exhausted"
    try:
        surfaces = (enumerate_index0(tri, g, W, b["enumeration"])
                    + enumerate_index12(tri, 1, g, W, b["enumeration"])
                    + enumerate_index12(tri, 2, g, W, b["enumeration"]))
    except BudgetExhausted:
        surfaces, enum_status = [], "BudgetExhausted"
    # the empty surface is v- and v+
    surfaces = [s for s in surfaces if not s.is_empty()]

    reps = {}
    by_weight: dict = {}
    unrepresented = 0
    for s in surfaces:
        rs = bent_representatives(s)
        if not rs:
            # two tubes between the same pair of disks leave an annulus in a tetrahedron
            unrepresented += 1
            continue
        reps[s] = rs
        by_weight.setdefault(s.weights, []).extend(rs)
    surfaces = [s for s in surfaces if s in reps]

    weights = sorted(by_weight)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        slices = dict(zip(weights, pool.map(lambda w: _explore_slice(by_weight[w], b["slice"]), weights)))

    groups, cross = _deduplicate(surfaces, reps, slices)
    vertices, vertex_of_key = _make_vertices(groups, reps)
    edges, truncated = _make_edges(vertices, vertex_of_key, slices, b["paths"])
    faces = _make_faces(vertices, edges)
    statuses = {",".join(map(str, w)): slices[w].status for w in weights}
    complete = (enum_status == "Exhausted" and not truncated
                and all(s == "Exhausted" for s in statuses.values()))
    provenance = {
        "genus_bound": g,
        "weight_cap": W,
        "budgets": b,
        "enumeration": enum_status,
        "slices": statuses,
        "cross_index_merges": cross,
        "unrepresented_surfaces": unrepresented,
        "truncated_descents": truncated,
        "complete": complete,
    }
    D = DerivedComplex(tri, vertices, edges, faces, provenance)
    if not complete and not allow_partial:
        raise BuildBudgetExceeded("a search budget was exhausted; the complex is partial", partial=D,
                                  stats={"slices": statuses, "enumeration": enum_status})
    return D


def _deduplicate(surfaces, reps, slices):
    """Group surfaces whose representatives are joined by constant-complexity pinch paths."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for sl in slices.values():
        for key, out in sl.adj.items():
            for move, k, _ in out:
                # a budget-limited slice may point at nodes it never expanded
                if k in sl.complexity and sl.complexity[k] == sl.complexity[key]:
                    union(key, k)
    by_component: dict = {}
    for s in surfaces:
        for r in reps[s]:
            by_component.setdefault((s.index, find(r.key())), set()).add(s)
    sparent = {s: s for s in surfaces}

    def sfind(s):
        while sparent[s] is not s:
            s = sparent[s]
        return s

    for members in by_component.values():
        members = sorted(members, key=NormalSurface.sort_key)
        for other in members[1:]:
            ra, rb = sfind(members[0]), sfind(other)
            if ra is not rb:
                sparent[rb] = ra
    cross = 0
    seen_index: dict = {}
    for s in surfaces:
        for r in reps[s]:
            seen_index.setdefault(find(r.key()), set()).add(s.index)
    cross = sum(1 for idx in seen_index.values() if len(idx) > 1)
    groups: dict = {}
    for s in surfaces:
        groups.setdefault(sfind(s), []).append(s)
    return list(groups.values()), cross


def _make_vertices(groups, reps):
    rows = []
    for members in groups:
        members = sorted(members, key=NormalSurface.sort_key)
        keys = sorted({r.key() for s in members for r in reps[s]})
        head = members[0]
        rows.append((head.index, head.genus, head.complexity, keys[0], members, keys))
    rows.sort(key=lambda r: r[:4])
    vertices = [Vertex(V_MINUS, 0, 0, 0, (), []), Vertex(V_PLUS, 0, 0, 0, (), [])]
    vertex_of_key: dict = {}
    for i, (index, genus, comp, _, members, keys) in enumerate(rows):
        vid = f"V{i}"
        reps_d = []
        seen = set()
        for s in members:
            for r in reps[s]:
                if r.key() not in seen:
                    seen.add(r.key())
                    reps_d.append((r.key(), r.to_dict()))
        reps_d.sort()
        vertices.append(Vertex(vid, index, genus, comp, members[0].weights,
                               [{"coords": [list(x) for x in s.coords],
                                 "exceptional": [x.to_dict() for x in s.exceptional]} for s in members],
                               [d for _, d in reps_d]))
        for k in keys:
            vertex_of_key.setdefault(k, []).append((index, vid))
    return vertices, vertex_of_key


def only_vertex_links(b: BentSurface) -> bool:
    """Whether every component of ``b`` is a vertex-linking sphere.

    Such spheres bound balls meeting the 1-skeleton in a cone on points, so a
    tree disk compresses each of them away.
    """
    if not any(b.weights):
        return True
    topo = b.topology()
    loops, _ = b.tet_loops()
    fr = b.frames
    tri = b.tri
    corners: dict = {}
    for lid, recs in loops.items():
        if len(recs) != 3:
            return False
        edges = {fr.tet_point(ci, vi, arc[k])[0] for ci, vi, arc in recs for k in (0, 1)}
        common = set.intersection(*(set(EDGE_VERTICES[e]) for e in edges))
        if len(edges) != 3 or len(common) != 1:
            return False
        corners.setdefault(topo.disk_component[lid], []).append(tri.vertex_of[(lid[0], common.pop())])
    for comp, (chi, pts, nb, genus, sphere) in enumerate(topo.components):
        vs = corners.get(comp, [])
        if not sphere or len(set(vs)) != 1 or len(vs) != len(tri.vertices[vs[0]]):
            return False
    return True


def _make_edges(vertices, vertex_of_key, slices, path_budget):
    by_id = {v.id: v for v in vertices}
    found: dict = {}
    truncated = 0
    for v in vertices:
        if v.index == 0:
            continue
        sl = slices[tuple(v.weights)]
        starts = sorted(json.dumps([r["weights"], r["arcs"]], separators=(",", ":"))
                        for r in v.representatives)
        hits, cut = _descend(v, starts, sl, vertex_of_key, path_budget, mixed=v.index == 2)
        truncated += cut
        for (lower, side), witness in hits.items():
            found[(v.id, lower, side)] = witness
    edges = []
    for i, ((upper, lower, side), w) in enumerate(sorted(found.items(), key=lambda kv: (
            _vid_key(kv[0][0]), _vid_key(kv[0][1]), kv[0][2]))):
        edges.append(DEdge(f"e{i}", upper, lower, side, w))
    return edges, truncated


def _vid_key(v: str):
    return (0, v) if v in (V_MINUS, V_PLUS) else (1, int(v[1:]))


def _descend(v: Vertex, starts, sl: _Slice, vertex_of_key, path_budget, mixed: bool = False):
    """Breadth-first monotone walk from the representatives of ``v``.

    States are (diagram, side, mixed).  The first compression fixes the side.
    A compression on the other side is refused unless ``mixed`` is set; a
    state that used both sides never reaches v- or v+.  Returns the first
    witness per (lower vertex, side) and whether the walk was cut short.
    """
    out = {}
    parent = {}
    queue = deque()
    for k in starts:
        if k in sl.nodes:
            parent[(k, None, False)] = None
            queue.append((k, None, False))
    while queue:
        if len(parent) > path_budget:
            return out, True
        state = queue.popleft()
        key, side, both = state
        if side is not None:
            if sl.trivial[key]:
                hits = [] if both else [V_PLUS if side == "positive" else V_MINUS]
            else:
                hits = [vid for idx, vid in vertex_of_key.get(sl.target[key], []) if idx < v.index]
            for vid in hits:
                if (vid, side) not in out:
                    out[(vid, side)] = _witness(sl, parent, state)
        for move, k, mside in sl.adj[key]:
            if k not in sl.adj:
                continue
            if move.classification == "Compression" and mside is None:
                continue
            nboth = both
            if mside is not None and side is not None and mside != side:
                if not mixed:
                    continue
                nboth = True
            nstate = (k, side if side is not None else mside, nboth)
            if nstate not in parent:
                parent[nstate] = (state, move)
                queue.append(nstate)
    return out, False


def _witness(sl: _Slice, parent, state) -> dict:
    moves = []
    keys = [state[0]]
    while parent[state] is not None:
        state, move = parent[state]
        moves.append(move)
        keys.append(state[0])
    moves.reverse()
    keys.reverse()
    return {"start": sl.nodes[keys[0]].to_dict(), "moves": [m.to_dict() for m in moves],
            "complexities": [sl.complexity[k] for k in keys]}


def _make_faces(vertices, edges):
    index = {v.id: v.index for v in vertices}
    nbrs: dict = {}
    for e in edges:
        nbrs.setdefault(e.upper, set()).add(e.lower)
        nbrs.setdefault(e.lower, set()).add(e.upper)
    faces = []
    for c in sorted((v.id for v in vertices if v.index == 2), key=_vid_key):
        for b in sorted((x for x in nbrs.get(c, ()) if index[x] == 1), key=_vid_key):
            for a in sorted((x for x in nbrs.get(b, ()) if index[x] == 0 and x in nbrs.get(c, ())), key=_vid_key):
                faces.append(Face(f"f{len(faces)}", (a, b, c)))
    return faces


# checks ---------------------------------------------------------------------------

def replay_edge(D: DerivedComplex, e: DEdge) -> tuple[bool, list[int]]:
    """Replay a witness; True when complexity never rises and the endpoint is the lower vertex."""
    start = BentSurface.from_dict(D.tri, e.witness["start"])
    upper = D.vertices[e.upper]
    if start.to_dict() not in upper.representatives:
        return False, []
    path = replay(start, [PinchMove.from_dict(m) for m in e.witness["moves"]])
    comps = [s.complexity() for s in path]
    if any(b > a for a, b in zip(comps, comps[1:])):
        return False, comps
    end = remove_skewered_spheres(path[-1])
    if e.lower in (V_MINUS, V_PLUS):
        return only_vertex_links(end), comps
    return end.to_dict() in D.vertices[e.lower].representatives, comps


# queries ----------------------------------------------------------------------------

@dataclass
class Verdict:
    status: str
    witness: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "detail": self.detail}


def _vertex(D: DerivedComplex, v: str) -> Vertex:
    if v not in D.vertices:
        raise DerivedError(f"unknown vertex {v}")
    return D.vertices[v]


def query_incompressible(D: DerivedComplex, v: str) -> Verdict:
    """Search for a genus drop through index-0/-1 vertices with non-increasing genus."""
    start = _vertex(D, v)
    if start.index != 0:
        raise DerivedError("incompressibility is asked of index-0 vertices")
    parent = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if D.vertices[u].genus < start.genus:
            return Verdict("Compressible", _edge_chain(parent, u), {"reached": u})
        for e in sorted(D.edges_at(u), key=lambda e: _vid_key_edge(e.id)):
            w = e.lower if e.upper == u else e.upper
            if w in parent or D.vertices[w].index > 1 or D.vertices[w].genus > D.vertices[u].genus:
                continue
            parent[w] = (u, e.id)
            queue.append(w)
    if D.complete:
        return Verdict("Incompressible", [], {"reachable": len(parent)})
    return Verdict("Inconclusive", [], {"reachable": len(parent)})


def _vid_key_edge(eid: str) -> int:
    return int(eid[1:])


def _edge_chain(parent, u) -> list:
    out = []
    while parent[u] is not None:
        u, eid = parent[u]
        out.append(eid)
    return list(reversed(out))


def query_isotopic_incompressible(D: DerivedComplex, u: str, v: str) -> Verdict:
    """Constant-genus connection through index-0/-1 vertices."""
    a, b = _vertex(D, u), _vertex(D, v)
    if a.index != 0 or b.index != 0:
        raise DerivedError("isotopy is asked of index-0 vertices")
    if u == v:
        return Verdict("Isotopic", [])
    if a.genus != b.genus:
        return Verdict("NotIsotopic", [], {"reason": "genus differs"})
    for x in (u, v):
        status = query_incompressible(D, x).status
        if status == "Compressible":
            raise DerivedError(f"vertex {x} is compressible")
        if status == "Inconclusive":
            return Verdict("Inconclusive", [], {"reason": f"{x} not certified incompressible"})
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            return Verdict("Isotopic", _edge_chain(parent, x))
        for e in sorted(D.edges_at(x), key=lambda e: _vid_key_edge(e.id)):
            y = e.lower if e.upper == x else e.upper
            if y in parent or D.vertices[y].index > 1 or D.vertices[y].genus != a.genus:
                continue
            parent[y] = (x, e.id)
            queue.append(y)
    return Verdict("NotIsotopic" if D.complete else "Inconclusive", [])


def path_genus(D: DerivedComplex, edge_ids, H=None) -> Fraction:
    H = H or D.height_complex()
    return heightcx.path_genus(H.path(V_MINUS, list(edge_ids)))


def _check_path(D: DerivedComplex, edge_ids) -> None:
    v = V_MINUS
    for eid in edge_ids:
        if eid not in D.edges or D.edges[eid].tail != v:
            raise DerivedError("not an oriented path from v- to v+")
        v = D.edges[eid].head
    if v != V_PLUS:
        raise DerivedError("path does not end at v+")


def enumerate_splitting_paths(D: DerivedComplex, genus_bound, max_paths: int = 100_000) -> list[tuple]:
    """Simple oriented paths from v- to v+ through index-0/-1 vertices with path genus at most ``genus_bound``."""
    H = D.height_complex()
    out_edges: dict = {}
    for e in sorted(D.edges.values(), key=lambda e: _vid_key_edge(e.id)):
        out_edges.setdefault(e.tail, []).append(e)
    found = []

    def dfs(v, visited, path):
        if len(found) >= max_paths:
            return
        if v == V_PLUS:
            found.append(tuple(path))
            return
        for e in out_edges.get(v, []):
            if e.head not in visited and D.vertices[e.head].index <= 1:
                visited.add(e.head)
                path.append(e.id)
                dfs(e.head, visited, path)
                path.pop()
                visited.discard(e.head)

    dfs(V_MINUS, {V_MINUS}, [])
    scored = [(path_genus(D, p, H), p) for p in found]
    scored = [(g, p) for g, p in scored if g <= genus_bound]
    scored.sort(key=lambda gp: (gp[0], len(gp[1]), [_vid_key_edge(e) for e in gp[1]]))
    return [p for _, p in scored]


# face slides ------------------------------------------------------------------------

def _face_edges(D: DerivedComplex):
    """For every face, the edges joining its vertex pairs."""
    out = {}
    for f in D.faces.values():
        vs = set(f.vertices)
        out[f.id] = [e for e in D.edges.values() if {e.upper, e.lower} <= vs]
    return out


def face_slides(D: DerivedComplex, path: tuple, cache=None):
    """Oriented paths obtained by sliding ``path`` across one face."""
    fe = cache if cache is not None else _face_edges(D)
    out = []
    for fid in sorted(fe, key=lambda x: int(x[1:])):
        edges = fe[fid]
        by_ends: dict = {}
        for e in edges:
            by_ends.setdefault((e.tail, e.head), []).append(e.id)
        for i, eid in enumerate(path):
            e = D.edges[eid]
            if eid in {x.id for x in edges}:
                # one edge to two
                for (t, h), firsts in sorted(by_ends.items()):
                    if t != e.tail or h == e.head:
                        continue
                    for second in by_ends.get((h, e.head), []):
                        for first in firsts:
                            out.append(((fid, i, (eid,), (first, second)),
                                        path[:i] + (first, second) + path[i + 1:]))
                if i + 1 < len(path) and path[i + 1] in {x.id for x in edges}:
                    nxt = D.edges[path[i + 1]]
                    for third in by_ends.get((e.tail, nxt.head), []):
                        out.append(((fid, i, (eid, path[i + 1]), (third,)),
                                    path[:i] + (third,) + path[i + 2:]))
    return out


def _simple(D: DerivedComplex, path) -> bool:
    vs = [V_MINUS] + [D.edges[e].head for e in path]
    return len(set(vs)) == len(vs)


def _slide_dict(s) -> dict:
    fid, pos, removed, inserted = s
    return {"face": fid, "position": pos, "removed": list(removed), "inserted": list(inserted)}


def _slide_search(D, start, ceiling, budget, goal):
    H = D.height_complex()
    cache = _face_edges(D)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        if goal(p, path_genus(D, p, H)):
            chain = []
            q = p
            while parent[q] is not None:
                q, s = parent[q]
                chain.append(_slide_dict(s))
            return "found", p, list(reversed(chain)), len(parent)
        for s, q in face_slides(D, p, cache):
            if q in parent or not _simple(D, q):
                continue
            if path_genus(D, q, H) > ceiling:
                continue
            if len(parent) >= budget:
                return "budget", None, [], len(parent)
            parent[q] = (p, s)
            queue.append(q)
    return "exhausted", None, [], len(parent)


def query_stabilized(D: DerivedComplex, path, budget: int = 10_000) -> Verdict:
    """Face slides with genus never above the start's, looking for a genus drop.

    States are simple oriented paths, so the state space is finite.
    """
    path = tuple(path)
    _check_path(D, path)
    g0 = path_genus(D, path)
    status, end, chain, seen = _slide_search(D, path, g0, budget, lambda p, g: g < g0)
    detail = {"states": seen, "exhausted": status == "exhausted", "genus": str(g0)}
    if status == "found":
        detail["end"] = list(end)
        detail["end_genus"] = str(path_genus(D, end))
        return Verdict("Stabilized", chain, detail)
    if status == "exhausted" and D.complete:
        return Verdict("Irreducible", [], detail)
    return Verdict("NotFoundWithinBudget", [], detail)


def stable_genus_bound(D: DerivedComplex, p1, p2, gmax, budget: int = 10_000) -> Verdict:
    """Least ceiling ``h`` up to ``gmax`` at which face slides connect the two paths."""
    p1, p2 = tuple(p1), tuple(p2)
    _check_path(D, p1)
    _check_path(D, p2)
    lo = max(path_genus(D, p1), path_genus(D, p2))
    h = lo
    while h <= gmax:
        status, _, chain, seen = _slide_search(D, p1, h, budget, lambda p, g: p == p2)
        if status == "found":
            return Verdict("Bound", chain, {"h": str(h)})
        h += Fraction(1, 2)
    return Verdict("NotFoundWithinBudget", [], {"gmax": str(gmax)})
