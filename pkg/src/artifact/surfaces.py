"""Normal surfaces of index 0, 1 and 2 as coordinates plus exceptional pieces.

Coordinates per tetrahedron are seven counts: triangles around vertices
0..3, then quads 0..2, where quad ``i`` misses the two edges of partition
``i`` (partition 0 = edges 01/23, 1 = 02/13, 2 = 03/12).  Exceptional pieces
are octagons, dodecagons and tubes.  Euler characteristic, components and
complexity come from the arc diagram the surface leaves on the 2-skeleton.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

import networkx as nx

from . import pieces
from .bent import BentSurface, BudgetExhausted, _position, frames_for
from .triangulation import EDGE_INDEX, EDGE_VERTICES, FACE_VERTICES, Triangulation

TRIANGLE_WEIGHTS = tuple(
    tuple(1 if v in EDGE_VERTICES[e] else 0 for e in range(6)) for v in range(4)
)
QUAD_WEIGHTS = tuple(
    tuple(0 if e in pieces.OPPOSITE[i] else 1 for e in range(6)) for i in range(3)
)


def _exceptional_weights(kind: str, partition: int, variant: int = 0) -> tuple[int, ...]:
    """Edge weights of an octagon or dodecagon in the given partition."""
    hi = {"Octagon": 2, "Dodecagon": 3}[kind]
    others = [j for j in range(3) if j != partition]
    if kind == "Octagon":
        lo = {others[0]: 1, others[1]: 1}
    else:
        lo = {others[0]: 1 + variant, others[1]: 2 - variant}
    w = [0] * 6
    for j, (a, b) in enumerate(pieces.OPPOSITE):
        val = hi if j == partition else lo[j]
        w[a] = w[b] = val
    return tuple(w)


@lru_cache(maxsize=None)
def _counts(weights: tuple[int, ...]) -> tuple[tuple[int, int, int], ...]:
    """Arc counts per face, listed for the face's corners in increasing order."""
    cc = pieces.corner_counts(weights)
    return tuple(tuple(cc[(f, v)] for v in FACE_VERTICES[f]) for f in range(4))


class EnumerationBudgetExceeded(BudgetExhausted):
    pass


@dataclass(frozen=True, order=True)
class ExceptionalPiece:
    """``kind`` is Octagon, Dodecagon or Tube.

    Octagons and dodecagons carry a partition (and a dodecagon a mirror
    variant 0/1).  A tube carries the two disks it joins, as loop ids of the
    tetrahedron in the surface's arc diagram, and the region they cobound.
    """

    tet: int
    kind: str
    partition: int = -1
    variant: int = 0
    disks: tuple = ()
    region: int = -1

    @property
    def index(self) -> int:
        return {"Octagon": 1, "Dodecagon": 2, "Tube": 1}[self.kind]

    def weights(self) -> tuple[int, ...]:
        if self.kind == "Tube":
            return (0,) * 6
        return _exceptional_weights(self.kind, self.partition, self.variant)

    def to_dict(self) -> dict:
        d = {"tet": self.tet, "kind": self.kind}
        if self.kind == "Tube":
            d["disks"] = [list(x) for x in self.disks]
            d["region"] = self.region
        else:
            d["partition"] = self.partition
            if self.kind == "Dodecagon":
                d["variant"] = self.variant
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExceptionalPiece":
        if d["kind"] == "Tube":
            return cls(d["tet"], "Tube", disks=tuple(tuple(x) for x in d["disks"]), region=d["region"])
        return cls(d["tet"], d["kind"], d["partition"], d.get("variant", 0))


class NormalSurface:
    """Coordinates plus exceptional pieces, with derived topology."""

    def __init__(self, tri: Triangulation, coords, exceptional=()):
        self.tri = tri
        self.coords = tuple(tuple(int(x) for x in row) for row in coords)
        if len(self.coords) != tri.tets or any(len(r) != 7 or min(r) < 0 for r in self.coords):
            raise ValueError("coordinates need seven non-negative entries per tetrahedron")
        self.exceptional = tuple(sorted(exceptional))
        self._bent: Optional[BentSurface] = None
        self._topo = None

    # geometry -------------------------------------------------------------
    def tet_weights(self, t: int, tubes: bool = True) -> tuple[int, ...]:
        row = self.coords[t]
        w = [0] * 6
        for v in range(4):
            for e in range(6):
                w[e] += row[v] * TRIANGLE_WEIGHTS[v][e]
        for q in range(3):
            for e in range(6):
                w[e] += row[4 + q] * QUAD_WEIGHTS[q][e]
        for x in self.exceptional:
            if x.tet == t:
                for e, val in enumerate(x.weights()):
                    w[e] += val
        return tuple(w)

    def face_counts(self, t: int) -> tuple:
        return _counts(self.tet_weights(t))

    @property
    def weights(self) -> tuple[int, ...]:
        out = []
        for orbit in self.tri.edges:
            t, e = orbit[0]
            out.append(self.tet_weights(t)[e])
        return tuple(out)

    @property
    def index(self) -> int:
        return sum(x.index for x in self.exceptional)

    @property
    def tubes(self) -> tuple:
        return tuple(x for x in self.exceptional if x.kind == "Tube")

    def is_empty(self) -> bool:
        return not any(any(r) for r in self.coords) and not self.exceptional

    def bent(self) -> BentSurface:
        """The arc diagram on the 2-skeleton (tubes are not drawn)."""
        if self._bent is None:
            fr = frames_for(self.tri, self.weights)
            arcs = []
            for ci, cell in enumerate(self.tri.triangles):
                t, f = cell.tet, cell.face
                w = self.tet_weights(t)
                counts = _counts(w)[f]
                out = []
                for v, c in zip(FACE_VERTICES[f], counts):
                    x, y = (u for u in FACE_VERTICES[f] if u != v)
                    for j in range(c):
                        ends = []
                        for u in (x, y):
                            e = EDGE_INDEX[(v, u)]
                            a, _ = EDGE_VERTICES[e]
                            idx = j if v == a else w[e] - 1 - j
                            side = next(s for s in range(3) if fr.cells[ci].sides[s][0] == e)
                            ends.append(_position(fr, ci, side, idx))
                        out.append(tuple(sorted(ends)))
                arcs.append(out)
            self._bent = BentSurface(self.tri, self.weights, arcs)
        return self._bent

    def topology(self):
        if self._topo is None:
            pairs = [x.disks for x in self.tubes]
            self._topo = self.bent().topology(pairs)
        return self._topo

    @property
    def chi(self) -> int:
        return euler_characteristic(self)

    @property
    def genus(self) -> int:
        return self.topology().genus

    @property
    def n_components(self) -> int:
        return self.topology().n_components

    @property
    def complexity(self) -> int:
        return complexity(self)

    def meets_boundary(self) -> bool:
        return any(c[2] for c in self.topology().components)

    def strongly_separating(self) -> bool:
        return two_colouring(self) is not None

    # identity ---------------------------------------------------------------
    def key(self) -> tuple:
        return (self.coords, tuple((x.tet, x.kind, x.partition, x.variant, x.disks, x.region)
                                   for x in self.exceptional))

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalSurface) and self.tri is other.tri and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sort_key(self):
        return (self.index, sum(self.weights), self.key())

    def __repr__(self) -> str:
        ex = ",".join(f"{x.kind}@{x.tet}" for x in self.exceptional)
        return f"NormalSurface(w={list(self.weights)}, chi={self.chi}, genus={self.genus}{', ' + ex if ex else ''})"

    def to_dict(self) -> dict:
        return {
            "coords": [list(r) for r in self.coords],
            "exceptional": [x.to_dict() for x in self.exceptional],
            "chi": self.chi,
            "genus": self.genus,
            "complexity": self.complexity,
            "weights": list(self.weights),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, tri: Triangulation, d: dict) -> "NormalSurface":
        return cls(tri, d["coords"], [ExceptionalPiece.from_dict(x) for x in d["exceptional"]])


# invariants ---------------------------------------------------------------------

def euler_characteristic(s: NormalSurface) -> int:
    """Points on edges - arcs in triangles + disks, minus two per tube."""
    return s.topology().chi


def complexity(s: NormalSurface) -> int:
    topo = s.topology()
    return topo.complexity()


def genus_of_components(s: NormalSurface) -> list[int]:
    return [c[3] for c in s.topology().components]


def matching_system(tri: Triangulation) -> list[list[int]]:
    """Rows over the 7 * tets coordinates; one per (interior triangle, arc type)."""
    rows = []
    for cell in tri.interior_triangles():
        t, f = cell.tet, cell.face
        u, g, p = cell.partner
        for v in FACE_VERTICES[f]:
            row = [0] * (7 * tri.tets)
            for col, val in _arc_column(f, v):
                row[7 * t + col] += val
            for col, val in _arc_column(g, p[v]):
                row[7 * u + col] -= val
            rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _arc_column(f: int, v: int) -> tuple:
    """How each of the seven coordinates contributes arcs around corner ``v`` of face ``f``."""
    out = []
    for col in range(7):
        w = TRIANGLE_WEIGHTS[col] if col < 4 else QUAD_WEIGHTS[col - 4]
        cnt = _counts(w)[f][FACE_VERTICES[f].index(v)]
        if cnt:
            out.append((col, cnt))
    return tuple(out)


def satisfies_matching(s: NormalSurface) -> bool:
    """Exact check across every glued face, exceptional pieces included."""
    for cell in s.tri.interior_triangles():
        t, f = cell.tet, cell.face
        u, g, p = cell.partner
        ct, cu = s.face_counts(t)[f], s.face_counts(u)[g]
        for i, v in enumerate(FACE_VERTICES[f]):
            if ct[i] != cu[FACE_VERTICES[g].index(p[v])]:
                return False
    return True


def embedded(s: NormalSurface) -> bool:
    for t, row in enumerate(s.coords):
        if sum(1 for q in row[4:] if q) > 1:
            return False
        if any(x.tet == t and x.kind != "Tube" for x in s.exceptional) and any(row[4:]):
            # check the exceptional boundary against the quad it would have to miss
            for x in s.exceptional:
                if x.tet == t and x.kind != "Tube":
                    for q in range(3):
                        if row[4 + q] and not pieces.loops_disjoint(x.weights(), QUAD_WEIGHTS[q]):
                            return False
    return True


# regions and strong separation ----------------------------------------------------

def _segment_cover(fr, ci: int, k: int):
    """Edge segments (side, index along the cyclic direction) covered by boundary segment ``k``."""
    items = _cell_items(tuple(fr.side_len[ci]))
    points = [i for i, it in enumerate(items) if it[0] == "p"]
    start, end = points[k], points[(k + 1) % len(points)]
    out = []
    i = start
    while True:
        kind, s, j = items[i]
        out.append((s, j + 1) if kind == "p" else ((s + 1) % 3, 0))
        i = (i + 1) % len(items)
        if i == end:
            return out


@lru_cache(maxsize=None)
def _cell_items(lens: tuple) -> tuple:
    items = []
    for s in range(3):
        items.extend(("p", s, j) for j in range(lens[s]))
        items.append(("c", s, -1))
    return tuple(items)


def region_structure(b: BentSurface, local: bool = False):
    """Union-find of complementary regions.

    With ``local`` the regions are those of each tetrahedron separately (keyed
    by view); otherwise those of the whole manifold.  Returns ``(find, disk_sides)``
    where ``disk_sides[loop id]`` is the pair of region roots on either side.
    """
    from .bent import _UF

    fr = b.frames
    uf = _UF()
    for ci in range(len(fr.cells)):
        cf = fr.cells[ci]
        n = fr.size[ci]
        regs = b.cell_regions(ci) if n else []
        covers = []
        if n == 0:
            covers.append((0, [(s, 0) for s in range(3)]))
        else:
            for k in range(n):
                covers.append((regs[k], _segment_cover(fr, ci, k)))
        for vi, (t, f, edges, rev) in enumerate(cf.views):
            for r, segs in covers:
                node = ("c", ci, vi, r) if local else ("c", ci, r)
                uf.find(node)
                for s, cyc in segs:
                    L = fr.side_len[ci][s]
                    along = cyc if cf.sides[s][1] else L - cyc
                    if rev[s]:
                        along = L - along
                    uf.union(node, ("s", t, edges[s], along))
    loops, owner = b.tet_loops()
    sides = {}
    for lid, recs in loops.items():
        ci, vi, arc = recs[0]
        n = fr.size[ci]
        regs = b.cell_regions(ci)
        p = arc[0]
        r1, r2 = regs[(p - 1) % n], regs[p]
        if local:
            sides[lid] = (uf.find(("c", ci, vi, r1)), uf.find(("c", ci, vi, r2)))
        else:
            sides[lid] = (uf.find(("c", ci, r1)), uf.find(("c", ci, r2)))
    return uf, sides


def adjacent_disk_pairs(b: BentSurface, t: int) -> list[tuple]:
    """Pairs of disks in tetrahedron ``t`` that cobound a complementary region, with that region."""
    _, sides = region_structure(b, local=True)
    disks = sorted(lid for lid in sides if lid[0] == t)
    out = []
    for a, c in combinations(disks, 2):
        for r in sorted(set(sides[a]) & set(sides[c]), key=repr):
            out.append((a, c, _stable_label(r)))
    return out


def _stable_label(root) -> int:
    h = 0
    for ch in repr(root):
        h = (h * 131 + ord(ch)) % 1_000_000_007
    return h


def two_colouring(s: NormalSurface) -> Optional[dict]:
    """A 2-colouring of the complementary regions with the two sides of every piece opposite."""
    _, sides = region_structure(s.bent())
    g = nx.MultiGraph()
    for r1, r2 in sides.values():
        g.add_edge(r1, r2)
    for x in s.tubes:
        a, c = x.disks
        shared = set(sides[a]) & set(sides[c])
        if not shared:
            continue
        # the tube joins the regions on the far sides of its two disks
        near = min(shared, key=repr)
        fa = sides[a][1] if sides[a][0] == near else sides[a][0]
        fc = sides[c][1] if sides[c][0] == near else sides[c][0]
        if fa != fc and fa in g and fc in g:
            g = nx.contracted_nodes(g, fa, fc, self_loops=True)
    if any(u == v for u, v in g.edges()):
        return None
    simple = nx.Graph(g)
    if not nx.is_bipartite(simple):
        return None
    colour = {}
    for comp in nx.connected_components(simple):
        colour.update(nx.bipartite.color(simple.subgraph(comp)))
    return colour


# enumeration ------------------------------------------------------------------------

@dataclass
class _Candidate:
    coords: tuple
    weights: tuple
    counts: tuple


def _tet_candidates(W: int, extra: tuple = ()) -> list[_Candidate]:
    base = [0] * 6
    for x in extra:
        for e, val in enumerate(x.weights()):
            base[e] += val
    out = []
    quads = [None] + [(q, n) for q in range(3) for n in range(1, W + 1)]
    for tris in product(range(W + 1), repeat=4):
        tw = list(base)
        for v in range(4):
            if tris[v]:
                for e in range(6):
                    tw[e] += tris[v] * TRIANGLE_WEIGHTS[v][e]
        if max(tw) > W:
            continue
        for quad in quads:
            w = list(tw)
            coords = list(tris) + [0, 0, 0]
            if quad is not None:
                q, n = quad
                if extra and any(not pieces.loops_disjoint(x.weights(), QUAD_WEIGHTS[q]) for x in extra):
                    continue
                for e in range(6):
                    w[e] += n * QUAD_WEIGHTS[q][e]
                coords[4 + q] = n
            if max(w) > W:
                continue
            out.append(_Candidate(tuple(coords), tuple(w), _counts(tuple(w))))
    return out


def _solve(tri: Triangulation, W: int, extras: dict, budget: int) -> list[tuple]:
    """Depth-first search over tetrahedra; returns coordinate tuples."""
    cands = []
    for t in range(tri.tets):
        cs = _tet_candidates(W, tuple(extras.get(t, ())))
        # self-glued faces constrain a candidate on its own
        keep = []
        for c in cs:
            ok = True
            for f in range(4):
                g = tri.gluings[t][f]
                if g is not None and g[0] == t:
                    _, p = g
                    f2 = p[f]
                    for i, v in enumerate(FACE_VERTICES[f]):
                        if c.counts[f][i] != c.counts[f2][FACE_VERTICES[f2].index(p[v])]:
                            ok = False
            if ok:
                keep.append(c)
        cands.append(keep)
    # signature buckets: (tet, face) -> counts -> candidates
    buckets = []
    for t in range(tri.tets):
        per_face = []
        for f in range(4):
            d: dict = {}
            for c in cands[t]:
                d.setdefault(c.counts[f], []).append(c)
            per_face.append(d)
        buckets.append(per_face)
    results = []
    chosen: list = [None] * tri.tets
    visited = 0

    def required(t):
        reqs = []
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None:
                continue
            u, p = g
            if u >= t:
                continue
            cu = chosen[u].counts[p[f]]
            want = tuple(cu[FACE_VERTICES[p[f]].index(p[v])] for v in FACE_VERTICES[f])
            reqs.append((f, want))
        return reqs

    def rec(t):
        nonlocal visited
        if t == tri.tets:
            results.append(tuple(c.coords for c in chosen))
            return
        reqs = required(t)
        if reqs:
            f0, want0 = reqs[0]
            pool = buckets[t][f0].get(want0, [])
        else:
            pool = cands[t]
        for c in pool:
            if any(c.counts[f] != want for f, want in reqs[1:]):
                continue
            visited += 1
            if visited > budget:
                raise EnumerationBudgetExceeded(f"enumeration budget of {budget} partial solutions exceeded")
            chosen[t] = c
            rec(t + 1)
        chosen[t] = None

    rec(0)
    return results


def _edge_weights_ok(s: NormalSurface, W: int) -> bool:
    return all(w <= W for w in s.weights)


def enumerate_index0(tri: Triangulation, genus_bound: int, weight_cap: int,
                     budget: int = 2_000_000) -> list[NormalSurface]:
    """All embedded index-0 surfaces with edge weights at most ``weight_cap`` and genus at most ``genus_bound``."""
    if genus_bound < 0 or weight_cap < 0:
        raise ValueError("genus bound and weight cap must be non-negative")
    out = set()
    for coords in _solve(tri, weight_cap, {}, budget):
        s = NormalSurface(tri, coords)
        if s.genus <= genus_bound:
            out.add(s)
    return sorted(out, key=NormalSurface.sort_key)


def _with_extra(tri, W, g, extra_list, budget, allow_double=False):
    extras: dict = {}
    for x in extra_list:
        extras.setdefault(x.tet, []).append(x)
    out = []
    for coords in _solve(tri, W, extras, budget):
        s = NormalSurface(tri, coords, extra_list)
        if embedded(s) and s.genus <= g:
            out.append(s)
    return out


def _disk_kind(s: NormalSurface, lid) -> str:
    """Whether a disk of the diagram is an exceptional (octagon/dodecagon) disk."""
    loops, _ = s.bent().tet_loops()
    n = len(loops[lid])
    return {8: "Octagon", 12: "Dodecagon"}.get(n, "index0") if n > 4 else "index0"


def _tubed(s: NormalSurface, g: int, want_index: int, allow_exceptional_disk: bool) -> list[NormalSurface]:
    """Surfaces obtained from ``s`` by adding tubes to reach ``want_index``."""
    need = want_index - s.index
    if need <= 0:
        return []
    b = s.bent()
    options = []
    for t in range(s.tri.tets):
        for a, c, region in adjacent_disk_pairs(b, t):
            ka, kc = _disk_kind(s, a), _disk_kind(s, c)
            if (ka != "index0" or kc != "index0") and not allow_exceptional_disk:
                continue
            if "Dodecagon" in (ka, kc):
                continue
            options.append(ExceptionalPiece(t, "Tube", disks=(a, c), region=region))
    out = []
    for combo in combinations(options, need):
        pairs = [frozenset(x.disks) for x in combo]
        if len(set(pairs)) < len(pairs):
            continue
        if need == 2:
            # at most three disks per connected tubed piece
            disks = [d for x in combo for d in x.disks]
            if len(set(disks)) < 3:
                continue
        new = NormalSurface(s.tri, s.coords, s.exceptional + combo)
        if new.genus <= g:
            out.append(new)
    return out


def enumerate_index12(tri: Triangulation, target_index: int, genus_bound: int, weight_cap: int,
                      budget: int = 2_000_000, allow_double_octagon: bool = False) -> list[NormalSurface]:
    """Surfaces whose exceptional pieces have total index 1 or 2."""
    if target_index not in (1, 2):
        raise ValueError("target_index must be 1 or 2")
    g, W = genus_bound, weight_cap
    found = set()
    octs = [ExceptionalPiece(t, "Octagon", i) for t in range(tri.tets) for i in range(3)]
    dodecs = [ExceptionalPiece(t, "Dodecagon", i, v) for t in range(tri.tets) for i in range(3) for v in (0, 1)]
    base0 = enumerate_index0(tri, g, W, budget)
    oct_surfaces = []
    for x in octs:
        oct_surfaces += _with_extra(tri, W, g + 1, [x], budget)
    if target_index == 1:
        found.update(s for s in oct_surfaces if s.genus <= g)
        for s in base0:
            found.update(_tubed(s, g, 1, False))
    else:
        for x in dodecs:
            found.update(_with_extra(tri, W, g, [x], budget))
        for x, y in combinations(octs, 2):
            if x.tet == y.tet and not allow_double_octagon:
                continue
            found.update(_with_extra(tri, W, g, [x, y], budget))
        if allow_double_octagon:
            for x in octs:
                found.update(_with_extra(tri, W, g, [x, x], budget))
        for s in oct_surfaces:
            found.update(_tubed(s, g, 2, True))
        for s in base0:
            found.update(_tubed(s, g, 2, False))
    return sorted((s for s in found if s.index == target_index), key=NormalSurface.sort_key)


def enumerate_surfaces(tri, index: int, genus_bound: int, weight_cap: int, budget: int = 2_000_000):
    if index == 0:
        return enumerate_index0(tri, genus_bound, weight_cap, budget)
    return enumerate_index12(tri, index, genus_bound, weight_cap, budget)


def tube_surface(s: NormalSurface, t: int, pair_index: int = 0) -> NormalSurface:
    """Add one tube in tetrahedron ``t`` between the ``pair_index``-th adjacent pair of disks."""
    pairs = adjacent_disk_pairs(s.bent(), t)
    a, c, region = pairs[pair_index]
    return NormalSurface(s.tri, s.coords, s.exceptional + (ExceptionalPiece(t, "Tube", disks=(a, c), region=region),))


# bent representatives ---------------------------------------------------------------

def _region_nodes(uf, t: int, root) -> frozenset:
    """Edge-segment nodes of tetrahedron ``t`` that lie in a local region."""
    return frozenset(n for n in list(uf.p) if n[0] == "s" and n[1] == t and uf.find(n) == root)


def _tube_pinches(b: BentSurface, t: int, disk_arcs, region_nodes):
    """Tubing pinches in faces of ``t`` joining the two disks through the tube's region.

    ``disk_arcs`` gives, for each of the two disks, some arcs (as (cell, view,
    arc)) known to lie on it; ``region_nodes`` are segment nodes of the region.
    """
    loops, owner = b.tet_loops()
    uf, _ = region_structure(b, local=True)
    da = {owner[r] for r in disk_arcs[0] if r in owner}
    dc = {owner[r] for r in disk_arcs[1] if r in owner}
    if len(da) != 1 or len(dc) != 1 or da == dc:
        return []
    la, lc = da.pop(), dc.pop()
    fr = b.frames
    out = []
    for f in range(4):
        ci, vi = fr.tet_faces[t][f]
        if fr.cells[ci].boundary:
            continue
        n = fr.size[ci]
        reg = b.cell_regions(ci)
        on_a = [arc for c, v, arc in loops[la] if c == ci and v == vi]
        on_c = [arc for c, v, arc in loops[lc] if c == ci and v == vi]
        for x in on_a:
            for y in on_c:
                common = {reg[(x[0] - 1) % n], reg[x[0]]} & {reg[(y[0] - 1) % n], reg[y[0]]}
                for r in sorted(common):
                    root = uf.find(("c", ci, vi, r))
                    if not any(uf.find(node) == root for node in region_nodes):
                        continue
                    mv = b._make_move(ci, min(x, y), max(x, y), r)
                    if mv.classification == "Tubing":
                        out.append(mv)
    return out


def bent_representatives(s: NormalSurface) -> list[BentSurface]:
    """Diagrams of ``s`` with every tube pushed into a triangle, one per choice of triangles.

    A surface without tubes has its own diagram as the single representative.
    """
    from .bent import apply_pinch

    base = s.bent()
    if not s.tubes:
        return [base]
    loops, _ = base.tet_loops()
    uf, sides = region_structure(base, local=True)
    jobs = []
    for x in s.tubes:
        a, c = x.disks
        roots = [r for r in set(sides[a]) & set(sides[c]) if _stable_label(r) == x.region]
        if not roots:
            raise ValueError("tube region not found in the diagram")
        jobs.append((x.tet, (loops[a], loops[c]), _region_nodes(uf, x.tet, roots[0])))
    current = [(base, ())]
    for t, disk_arcs, nodes in jobs:
        nxt = []
        for b, used in current:
            # arcs replaced by earlier pinches no longer identify their disks
            arcs = tuple([r for r in d if (r[0], r[2]) not in used] for d in disk_arcs)
            for mv in _tube_pinches(b, t, arcs, nodes):
                nb = apply_pinch(b, mv)
                touched = used + ((mv.cell, mv.arc_a), (mv.cell, mv.arc_b))
                nxt.append((nb, touched))
        current = nxt
    reps = {b.key(): b for b, _ in current}
    return [reps[k] for k in sorted(reps)]


def region_sides(b: BentSurface):
    """Label each complementary region of ``b`` negative or positive.

    Regions are two-coloured across the pieces of the surface; the region
    containing vertex 0 of the triangulation is negative.  Returns
    ``(find, colour)`` with ``colour[root]`` in ``{"negative", "positive"}``,
    or ``None`` when the regions admit no consistent colouring.
    """
    uf, sides = region_structure(b)
    g = nx.Graph()
    for r1, r2 in sides.values():
        if r1 == r2:
            return None
        g.add_edge(r1, r2)
    if not nx.is_bipartite(g):
        return None
    tri = b.tri
    ref = None
    for t in range(tri.tets):
        for e in range(6):
            a = EDGE_VERTICES[e][0]
            if tri.vertex_of[(t, a)] == 0 and ("s", t, e, 0) in uf.p:
                ref = uf.find(("s", t, e, 0))
                break
        if ref is not None:
            break
    colour = {}
    for comp in nx.connected_components(g):
        sub = nx.bipartite.color(g.subgraph(comp))
        flip = ref in comp and sub[ref] == 1
        for r, c in sub.items():
            colour[r] = "negative" if (c ^ flip) == 0 else "positive"
    return uf.find, colour


def compression_side(b: BentSurface, move) -> Optional[str]:
    """The side of ``b`` on which a pinch arc runs, or None without a colouring."""
    res = region_sides(b)
    if res is None:
        return None
    find, colour = res
    return colour.get(find(("c", move.cell, move.region)))
