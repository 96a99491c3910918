"""Bent surfaces as arc diagrams on the 2-skeleton, pinch moves and the graph G(w).

A bent surface is stored as its edge-weight vector plus, for every triangle
of the 2-skeleton, a non-crossing matching of the points on the triangle's
boundary.  Points around a triangle are numbered cyclically: along the side
from corner 0 to corner 1, then corner 1 to corner 2, then corner 2 back to
corner 0 (corners are the face's vertices in increasing order).  The pieces
inside each tetrahedron are the disks bounded by the loops the arcs trace on
its boundary, so the diagram determines the surface.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .triangulation import EDGE_INDEX, EDGE_VERTICES, FACE_VERTICES, Triangulation


class BentError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    """A search stopped at its budget.  ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None, stats=None):
        super().__init__(message)
        self.partial = partial
        self.stats = stats or {}


# frames -------------------------------------------------------------------

class _CellFrame:
    """Side layout of one triangle and its two views from adjacent tetrahedra."""

    def __init__(self, tri: Triangulation, cell):
        c0, c1, c2 = cell.corners
        # (tet-edge, forward?) for the cyclic sides c0->c1, c1->c2, c2->c0
        self.sides = ((EDGE_INDEX[(c0, c1)], True), (EDGE_INDEX[(c1, c2)], True), (EDGE_INDEX[(c0, c2)], False))
        self.orbits = tuple(tri.edge_of[(cell.tet, e)] for e, _ in self.sides)
        # each view: (tet, face, tet-edge per side, reversed-along-tet-edge per side)
        views = [(cell.tet, cell.face, tuple(e for e, _ in self.sides), (False, False, False))]
        if cell.partner is not None:
            u, g, p = cell.partner
            edges, rev = [], []
            for e, _ in self.sides:
                a, b = EDGE_VERTICES[e]
                edges.append(EDGE_INDEX[(p[a], p[b])])
                rev.append(p[a] > p[b])
            views.append((u, g, tuple(edges), tuple(rev)))
        self.views = tuple(views)
        # orbit position of index i along cell.tet's edge: flip if the edge runs against the orbit
        self.flip = tuple(tri.edge_flip[(cell.tet, e)] for e, _ in self.sides)
        self.boundary = cell.partner is None


class Frames:
    """Per-weight-vector lookup tables, shared by all diagrams with those weights."""

    def __init__(self, tri: Triangulation, weights: tuple[int, ...]):
        self.tri = tri
        self.weights = weights
        self.cells = [_CellFrame(tri, c) for c in tri.triangles]
        self.side_len = [tuple(weights[o] for o in cf.orbits) for cf in self.cells]
        self.size = [sum(s) for s in self.side_len]
        # slot(cell, position) -> (side, index along cell.tet edge)
        self.slots = []
        for ci, cf in enumerate(self.cells):
            lens = self.side_len[ci]
            table = []
            for s in range(3):
                for k in range(lens[s]):
                    i = k if cf.sides[s][1] else lens[s] - 1 - k
                    table.append((s, i))
            self.slots.append(tuple(table))
        # per tetrahedron: which (cell, view) sits on each face
        self.tet_faces = [[None] * 4 for _ in range(tri.tets)]
        for ci, cf in enumerate(self.cells):
            for vi, (t, f, _, _) in enumerate(cf.views):
                self.tet_faces[t][f] = (ci, vi)

    def tet_point(self, ci: int, vi: int, pos: int) -> tuple[int, int]:
        """The point at cyclic position ``pos`` of cell ``ci`` as (tet edge, index) in view ``vi``."""
        cf = self.cells[ci]
        s, i = self.slots[ci][pos]
        _, _, edges, rev = cf.views[vi]
        if rev[s]:
            i = self.side_len[ci][s] - 1 - i
        return edges[s], i

    def global_point(self, ci: int, pos: int) -> tuple[int, int]:
        cf = self.cells[ci]
        s, i = self.slots[ci][pos]
        if cf.flip[s]:
            i = self.side_len[ci][s] - 1 - i
        return cf.orbits[s], i

    def side_of(self, ci: int, pos: int) -> int:
        return self.slots[ci][pos][0]


_FRAME_CACHE: dict = {}


def frames_for(tri: Triangulation, weights) -> Frames:
    key = (id(tri), tuple(weights))
    fr = _FRAME_CACHE.get(key)
    if fr is None or fr.tri is not tri:
        if len(_FRAME_CACHE) > 4096:
            _FRAME_CACHE.clear()
        fr = Frames(tri, tuple(weights))
        _FRAME_CACHE[key] = fr
    return fr


# topology summary -----------------------------------------------------------

@dataclass(frozen=True)
class Topology:
    chi: int
    points: int
    arcs: int
    disks: int
    components: tuple  # per component: (chi, points, boundary loops, genus, is_sphere)
    disk_component: dict = field(compare=False, repr=False, default_factory=dict)
    loops: dict = field(compare=False, repr=False, default_factory=dict)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def spheres(self) -> int:
        """Sphere components disjoint from the 1-skeleton (the ones the complexity counts)."""
        return sum(1 for c in self.components if c[4] and c[1] == 0)

    @property
    def all_spheres(self) -> int:
        return sum(1 for c in self.components if c[4])

    @property
    def genus(self) -> int:
        return sum(c[3] for c in self.components)

    def complexity(self, tubes: int = 0) -> int:
        return complexity_formula(self.n_components, self.chi, self.points, self.spheres)


def complexity_formula(components: int, chi: int, points: int, spheres: int) -> int:
    """components - chi(S minus T1) + spheres, with chi(S minus T1) = chi - points.

    ``spheres`` counts sphere components missing the 1-skeleton: those are the
    components whose addition leaves the value unchanged, and with that count
    every compression along an essential loop of S minus T1 lowers the value.
    """
    return components - (chi - points) + spheres


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.p[rb] = ra


# bent surfaces ----------------------------------------------------------------

class BentSurface:
    """An arc diagram.  ``arcs[c]`` is a sorted tuple of position pairs ``(p, q)``, ``p < q``."""

    __slots__ = ("tri", "weights", "arcs", "_topo", "_key", "_loops", "_clean")

    def __init__(self, tri: Triangulation, weights, arcs):
        self.tri = tri
        self.weights = tuple(int(w) for w in weights)
        self.arcs = tuple(tuple(sorted(tuple(sorted(a)) for a in cell)) for cell in arcs)
        self._topo = None
        self._key = None
        self._loops = None
        self._clean = None

    # validity -------------------------------------------------------------
    def check(self) -> None:
        fr = self.frames
        if len(self.weights) != self.tri.n_edges or any(w < 0 for w in self.weights):
            raise BentError("weight vector does not match the edge orbits")
        if len(self.arcs) != self.tri.n_triangles:
            raise BentError("one arc list per triangle is required")
        for ci, cell in enumerate(self.arcs):
            used = sorted(x for a in cell for x in a)
            if used != list(range(fr.size[ci])):
                raise BentError(f"triangle {ci}: every boundary point must be used by exactly one arc")
            for i, a in enumerate(cell):
                for b in cell[i + 1:]:
                    if _cross(a, b):
                        raise BentError(f"triangle {ci}: arcs {a} and {b} cross")

    @property
    def frames(self) -> Frames:
        return frames_for(self.tri, self.weights)

    def key(self) -> str:
        """Canonical serialization.

        Points sit in a fixed order along each edge, so the only relabelling
        consistent with that order is the identity and the sorted arc lists
        already form the normal form.
        """
        if self._key is None:
            self._key = json.dumps([list(self.weights), [[list(a) for a in c] for c in self.arcs]],
                                   separators=(",", ":"))
        return self._key

    canonical = key

    def __eq__(self, other) -> bool:
        return isinstance(other, BentSurface) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __lt__(self, other) -> bool:
        return self.key() < other.key()

    def __repr__(self) -> str:
        return f"BentSurface({self.key()})"

    def arc_kind(self, ci: int, arc) -> str:
        fr = self.frames
        return "bent" if fr.side_of(ci, arc[0]) == fr.side_of(ci, arc[1]) else "straight"

    def is_normal(self) -> bool:
        return all(self.arc_kind(ci, a) == "straight" for ci, c in enumerate(self.arcs) for a in c)

    # loops in tetrahedra ----------------------------------------------------
    def tet_loops(self) -> dict:
        """``{(tet, loop#): [(cell, view, arc), ...]}`` and an arc-to-loop lookup."""
        if self._loops is not None:
            return self._loops
        fr = self.frames
        tri = self.tri
        loops = {}
        owner = {}
        for t in range(tri.tets):
            adj: dict = {}
            for f in range(4):
                ci, vi = fr.tet_faces[t][f]
                for arc in self.arcs[ci]:
                    p = fr.tet_point(ci, vi, arc[0])
                    q = fr.tet_point(ci, vi, arc[1])
                    rec = (ci, vi, arc)
                    adj.setdefault(p, []).append((q, rec))
                    adj.setdefault(q, []).append((p, rec))
            seen_arcs = set()
            count = 0
            for start in sorted(adj):
                first = next((r for _, r in adj[start] if r not in seen_arcs), None)
                if first is None:
                    continue
                loop = []
                node = start
                rec = first
                while rec is not None and rec not in seen_arcs:
                    seen_arcs.add(rec)
                    loop.append(rec)
                    nxt = next(n for n, r in adj[node] if r == rec)
                    node = nxt
                    rec = next((r for _, r in adj[node] if r not in seen_arcs), None)
                lid = (t, count)
                count += 1
                loops[lid] = loop
                for r in loop:
                    owner[r] = lid
        self._loops = (loops, owner)
        return self._loops

    # topology ---------------------------------------------------------------
    def topology(self, tube_pairs: Iterable = ()) -> Topology:
        """Cell counts and components.  ``tube_pairs`` joins pairs of disks by tubes."""
        tube_pairs = tuple(tube_pairs)
        if self._topo is not None and not tube_pairs:
            return self._topo
        fr = self.frames
        loops, owner = self.tet_loops()
        uf = _UF()
        for lid in loops:
            uf.find(("d", lid))
        for ci, cell in enumerate(self.arcs):
            views = fr.cells[ci].views
            for arc in cell:
                ids = [owner[(ci, vi, arc)] for vi in range(len(views))]
                for lid in ids[1:]:
                    uf.union(("d", ids[0]), ("d", lid))
        for a, b in tube_pairs:
            uf.union(("d", a), ("d", b))
        comp_of = {lid: uf.find(("d", lid)) for lid in loops}
        stats: dict = {}
        for lid, root in comp_of.items():
            stats.setdefault(root, [0, set(), 0, 0, []])  # V set later, E, F, tubes, boundary arcs
            stats[root][2] += 1
        for a, b in tube_pairs:
            stats[comp_of[a]][3] += 1
        n_arcs = 0
        for ci, cell in enumerate(self.arcs):
            cf = fr.cells[ci]
            for arc in cell:
                n_arcs += 1
                root = comp_of[owner[(ci, 0, arc)]]
                st = stats[root]
                st[0] += 1
                st[1].add(fr.global_point(ci, arc[0]))
                st[1].add(fr.global_point(ci, arc[1]))
                if cf.boundary:
                    st[4].append((fr.global_point(ci, arc[0]), fr.global_point(ci, arc[1])))
        comps = []
        disk_component = {}
        order = sorted(stats, key=lambda r: min(lid for lid, rr in comp_of.items() if rr == r))
        for i, root in enumerate(order):
            e, pts, f, tubes, bnd = stats[root]
            chi = len(pts) - e + f - 2 * tubes
            b = _count_cycles(bnd)
            genus2 = 2 - chi - b
            genus = genus2 // 2 if genus2 >= 0 else 0
            comps.append((chi, len(pts), b, genus, b == 0 and chi == 2))
            for lid, rr in comp_of.items():
                if rr == root:
                    disk_component[lid] = i
        total_points = sum(self.weights)
        chi = total_points - n_arcs + len(loops) - 2 * len(tube_pairs)
        topo = Topology(chi, total_points, n_arcs, len(loops), tuple(comps), disk_component, loops)
        if not tube_pairs:
            self._topo = topo
        return topo

    def complexity(self) -> int:
        """Complexity of the surface this diagram represents (skewered spheres removed)."""
        return remove_skewered_spheres(self).raw_complexity()

    def raw_complexity(self) -> int:
        return self.topology().complexity()

    # regions ------------------------------------------------------------------
    def cell_regions(self, ci: int) -> list[int]:
        """Region label of each boundary segment of a triangle (segment i runs from point i to i+1)."""
        n = self.frames.size[ci]
        if n == 0:
            return []
        match = {}
        for p, q in self.arcs[ci]:
            match[p], match[q] = q, p
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            j = match[(i + 1) % n]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
        return [find(i) for i in range(n)]

    # pinches ----------------------------------------------------------------
    def pinch_sites(self) -> list["PinchMove"]:
        """All pairs of distinct arcs on a common region of an interior triangle."""
        out = []
        fr = self.frames
        for ci, cell in enumerate(self.arcs):
            if fr.cells[ci].boundary or len(cell) < 2:
                continue
            reg = self.cell_regions(ci)
            n = fr.size[ci]
            border: dict = {}
            for arc in cell:
                p, q = arc
                for side in (reg[(p - 1) % n], reg[p]):
                    border.setdefault(side, []).append(arc)
            for r in sorted(border):
                arcs = sorted(set(border[r]))
                for i in range(len(arcs)):
                    for j in range(i + 1, len(arcs)):
                        out.append(self._make_move(ci, arcs[i], arcs[j], r))
        return out

    def _make_move(self, ci, a, b, region) -> "PinchMove":
        loops, owner = self.tet_loops()
        kinds = []
        for vi in range(len(self.frames.cells[ci].views)):
            kinds.append(owner[(ci, vi, a)] == owner[(ci, vi, b)])
        if all(kinds):
            cls = "Compression"
            views = self.frames.cells[ci].views
            if len(views) == 2 and views[0][0] == views[1][0]:
                # both sides in one tetrahedron: the second band may rejoin what the first split
                t = views[0][0]
                after = apply_pinch(self, PinchMove(ci, a, b, region, cls)).tet_loops()[0]
                if sum(lid[0] == t for lid in after) != sum(lid[0] == t for lid in loops) + 2:
                    cls = "Isotopy"
        elif not any(kinds):
            cls = "Tubing"
        else:
            cls = "Isotopy"
        return PinchMove(ci, a, b, region, cls)

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "arcs": [[list(a) for a in c] for c in self.arcs]}

    @classmethod
    def from_dict(cls, tri: Triangulation, doc: dict) -> "BentSurface":
        b = cls(tri, doc["weights"], [[tuple(a) for a in c] for c in doc["arcs"]])
        b.check()
        return b


def _cross(a, b) -> bool:
    p, q = a
    r, s = b
    if len({p, q, r, s}) < 4:
        return True
    return (p < r < q) != (p < s < q)


def _count_cycles(edges) -> int:
    if not edges:
        return 0
    uf = _UF()
    for a, b in edges:
        uf.union(a, b)
    return len({uf.find(a) for a, _ in edges})


@dataclass(frozen=True)
class PinchMove:
    cell: int
    arc_a: tuple
    arc_b: tuple
    region: int
    classification: str  # Isotopy | Compression | Tubing

    def to_dict(self) -> dict:
        return {"triangle": self.cell, "arcs": [list(self.arc_a), list(self.arc_b)],
                "region": self.region, "classification": self.classification}

    @classmethod
    def from_dict(cls, doc: dict) -> "PinchMove":
        a, b = (tuple(x) for x in doc["arcs"])
        return cls(doc["triangle"], a, b, doc["region"], doc["classification"])


def classify_pinch(b: BentSurface, cell: int, arc_a, arc_b) -> PinchMove:
    arc_a, arc_b = tuple(sorted(arc_a)), tuple(sorted(arc_b))
    if arc_a == arc_b:
        raise BentError("a pinch needs two distinct arcs")
    if arc_a not in b.arcs[cell] or arc_b not in b.arcs[cell]:
        raise BentError("both arcs must belong to the triangle")
    if b.frames.cells[cell].boundary:
        raise BentError("pinches are taken in interior triangles only")
    reg = b.cell_regions(cell)
    n = b.frames.size[cell]
    sides_a = {reg[(arc_a[0] - 1) % n], reg[arc_a[0]]}
    sides_b = {reg[(arc_b[0] - 1) % n], reg[arc_b[0]]}
    common = sides_a & sides_b
    if not common:
        raise BentError("the arcs do not share a complementary region")
    return b._make_move(cell, arc_a, arc_b, min(common))


def apply_pinch(b: BentSurface, move: PinchMove) -> BentSurface:
    """Zero surgery on the two arcs across their common region."""
    ci = move.cell
    n = b.frames.size[ci]
    reg = b.cell_regions(ci)

    def entry_exit(arc):
        p, q = arc
        if reg[(p - 1) % n] == move.region:
            return p, q
        if reg[(q - 1) % n] == move.region:
            return q, p
        raise BentError("arc does not border the pinch region")

    ea, xa = entry_exit(move.arc_a)
    eb, xb = entry_exit(move.arc_b)
    new_cell = [a for a in b.arcs[ci] if a not in (move.arc_a, move.arc_b)]
    new_cell += [tuple(sorted((xb, ea))), tuple(sorted((xa, eb)))]
    arcs = list(b.arcs)
    arcs[ci] = tuple(new_cell)
    return BentSurface(b.tri, b.weights, arcs)


# skewered spheres ------------------------------------------------------------

def _find_skewered(b: BentSurface):
    """A component made of bent arcs joining the same two points of one edge, or None."""
    topo = b.topology()
    fr = b.frames
    loops, owner = b.tet_loops()
    by_comp: dict = {}
    for lid, comp in topo.disk_component.items():
        by_comp.setdefault(comp, []).append(lid)
    for comp, (chi, npts, nb, genus, sphere) in enumerate(topo.components):
        if not sphere or npts != 2:
            continue
        pts = set()
        bent_only = True
        for lid in by_comp[comp]:
            for ci, vi, arc in loops[lid]:
                pts.add(fr.global_point(ci, arc[0]))
                pts.add(fr.global_point(ci, arc[1]))
                if b.arc_kind(ci, arc) != "bent":
                    bent_only = False
        if bent_only and len(pts) == 2 and len({e for e, _ in pts}) == 1:
            return sorted(pts)
    return None


def remove_skewered_spheres(b: BentSurface) -> BentSurface:
    """Delete skewered-sphere components until none remain."""
    if b._clean is not None:
        return b._clean
    cur = b
    while True:
        found = _find_skewered(cur)
        if found is None:
            break
        cur = _delete_points(cur, found)
    b._clean = cur
    return cur


def _delete_points(b: BentSurface, pts) -> BentSurface:
    (edge, i), (_, j) = pts
    fr = b.frames
    weights = list(b.weights)
    weights[edge] -= 2
    new_fr = frames_for(b.tri, weights)
    arcs = []
    for ci, cell in enumerate(b.arcs):
        out = []
        for arc in cell:
            g0, g1 = fr.global_point(ci, arc[0]), fr.global_point(ci, arc[1])
            if g0[0] == edge and g0[1] in (i, j):
                continue
            out.append(tuple(_shift_pos(fr, new_fr, ci, p, edge, i, j) for p in arc))
        arcs.append(out)
    return BentSurface(b.tri, weights, arcs)


def _shift_pos(fr: Frames, new_fr: Frames, ci: int, pos: int, edge: int, i: int, j: int) -> int:
    s, idx = fr.slots[ci][pos]
    cf = fr.cells[ci]
    orb_idx = fr.side_len[ci][s] - 1 - idx if cf.flip[s] else idx
    if cf.orbits[s] == edge:
        orb_idx -= (orb_idx > i) + (orb_idx > j)
    new_len = new_fr.side_len[ci][s]
    new_idx = new_len - 1 - orb_idx if cf.flip[s] else orb_idx
    return _position(new_fr, ci, s, new_idx)


def _position(fr: Frames, ci: int, side: int, idx: int) -> int:
    lens = fr.side_len[ci]
    forward = fr.cells[ci].sides[side][1]
    k = idx if forward else lens[side] - 1 - idx
    return sum(lens[:side]) + k


def add_skewered_sphere(b: BentSurface, edge: int, at: int) -> BentSurface:
    """Insert a small sphere around the segment of ``edge`` just before point ``at``.

    Used to build test cases; the new points take orbit positions ``at`` and
    ``at + 1``.
    """
    fr = b.frames
    weights = list(b.weights)
    if not 0 <= at <= weights[edge]:
        raise BentError("insertion position out of range")
    weights[edge] += 2
    new_fr = frames_for(b.tri, weights)
    arcs = []
    for ci, cell in enumerate(b.arcs):
        cf = fr.cells[ci]
        out = []
        for arc in cell:
            new_arc = []
            for pos in arc:
                s, idx = fr.slots[ci][pos]
                orb = fr.side_len[ci][s] - 1 - idx if cf.flip[s] else idx
                if cf.orbits[s] == edge and orb >= at:
                    orb += 2
                nl = new_fr.side_len[ci][s]
                new_arc.append(_position(new_fr, ci, s, nl - 1 - orb if cf.flip[s] else orb))
            out.append(tuple(new_arc))
        for s in range(3):
            if cf.orbits[s] != edge:
                continue
            nl = new_fr.side_len[ci][s]
            p0 = _position(new_fr, ci, s, nl - 1 - at if cf.flip[s] else at)
            p1 = _position(new_fr, ci, s, nl - 1 - (at + 1) if cf.flip[s] else at + 1)
            out.append(tuple(sorted((p0, p1))))
        arcs.append(out)
    return BentSurface(b.tri, weights, arcs)


# G(w) search --------------------------------------------------------------------

@dataclass
class SearchResult:
    found: dict  # target key -> list of PinchMove
    status: str  # "Exhausted" | "BudgetExhausted" | "Complete"
    visited: int
    frontier: int
    explored: dict = field(default_factory=dict, repr=False)  # key -> (complexity, parent key, move)

    @property
    def exhausted(self) -> bool:
        return self.status == "Exhausted"


def neighbours(b: BentSurface):
    for move in b.pinch_sites():
        yield move, apply_pinch(b, move)


def search_descending(tri: Triangulation, start: BentSurface, targets, rule: str = "NonIncreasing",
                      budget: int = 10_000, match=None, stop_when_all_found: bool = True) -> SearchResult:
    """Best-first expansion of G(w) along pinches that never raise the complexity.

    ``targets`` is a collection of canonical keys.  ``match`` maps a visited
    surface to the key compared against the targets (by default the surface
    with skewered spheres removed).  Raises :class:`BudgetExhausted` with the
    partial result if the budget runs out before the restricted slice is
    exhausted and targets remain unfound.
    """
    if rule not in ("NonIncreasing", "Constant"):
        raise ValueError("rule must be NonIncreasing or Constant")
    if budget < 1:
        raise ValueError("budget must be positive")
    targets = set(targets)
    if match is None:
        def match(s):
            return remove_skewered_spheres(s).key()
    c0 = start.complexity()
    found: dict = {}
    explored = {start.key(): (c0, None, None)}
    surfaces = {start.key(): start}
    heap = [(c0, start.key())]
    visited = 0

    def path_to(key):
        moves = []
        while explored[key][1] is not None:
            _, parent, move = explored[key]
            moves.append(move)
            key = parent
        return list(reversed(moves))

    while heap:
        c, key = heapq.heappop(heap)
        cur = surfaces.pop(key)
        visited += 1
        m = match(cur)
        if m in targets and m not in found:
            found[m] = path_to(key)
            if stop_when_all_found and len(found) == len(targets):
                return SearchResult(found, "Complete", visited, len(heap), explored)
        if visited >= budget:
            res = SearchResult(found, "BudgetExhausted", visited, len(heap), explored)
            raise BudgetExhausted(f"budget of {budget} vertices exhausted", res,
                                  {"visited": visited, "frontier": len(heap)})
        for move, nxt in neighbours(cur):
            k = nxt.key()
            if k in explored:
                continue
            cn = nxt.complexity()
            if cn > c or (rule == "Constant" and cn != c0):
                continue
            explored[k] = (cn, key, move)
            surfaces[k] = nxt
            heapq.heappush(heap, (cn, k))
    return SearchResult(found, "Exhausted", visited, 0, explored)


def replay(start: BentSurface, moves) -> list[BentSurface]:
    """Apply a witness path move by move, re-classifying each move on the current surface."""
    out = [start]
    cur = start
    for mv in moves:
        mv = classify_pinch(cur, mv.cell, mv.arc_a, mv.arc_b)
        cur = apply_pinch(cur, mv)
        out.append(cur)
    return out


def explored_dot(result: SearchResult) -> str:
    lines = ["digraph G {"]
    keys = sorted(result.explored)
    ids = {k: i for i, k in enumerate(keys)}
    for k in keys:
        c = result.explored[k][0]
        lines.append(f'  n{ids[k]} [label="c={c}"];')
    for k in keys:
        _, parent, move = result.explored[k]
        if parent is not None:
            lines.append(f'  n{ids[parent]} -> n{ids[k]} [label="{move.classification}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _noncrossing_matchings(n: int) -> tuple:
    """All non-crossing perfect matchings of 0..n-1 (used to sample diagrams in tests)."""
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n, 2):
        for inner in _noncrossing_matchings(k - 1):
            for outer in _noncrossing_matchings(n - k - 1):
                m = ((0, k),) + tuple((a + 1, b + 1) for a, b in inner) + tuple(
                    (a + k + 1, b + k + 1) for a, b in outer)
                out.append(m)
    return tuple(out)


def random_bent_surface(tri: Triangulation, weights, rng) -> Optional[BentSurface]:
    """A uniformly chosen diagram with the given weights, or None if some triangle has odd size."""
    fr = frames_for(tri, weights)
    arcs = []
    for ci in range(len(fr.cells)):
        n = fr.size[ci]
        if n % 2:
            return None
        options = _noncrossing_matchings(n)
        arcs.append(options[rng.randrange(len(options))])
    return BentSurface(tri, weights, arcs)
