"""Straight loops on the boundary of a tetrahedron and the disks they bound.

A straight loop is described by its edge weights: ``weights[e]`` is the
number of times it crosses edge ``e`` (edges ordered 01, 02, 03, 12, 13, 23).
Points on edge ``ab`` are numbered from the ``a`` end.  In face ``f`` the
``j``-th arc around corner ``v`` (counting outwards from ``v``) joins point
``j`` from ``v`` on both edges of ``f`` at ``v``.

Two routes compute the index of the bounded disk.  :func:`classify_piece` is
the closed form read off the weights.  :func:`piece_index_oracle` builds the
chord system of bridge-disk traces and computes the descending link directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import networkx as nx

from ._complexes import clique_complex_index, components
from .triangulation import EDGE_INDEX, EDGE_VERTICES, FACE_VERTICES

# partition i pairs edge OPPOSITE[i][0] with edge OPPOSITE[i][1]
OPPOSITE = ((0, 5), (1, 4), (2, 3))
PARTITION_OF_EDGE = {e: i for i, pair in enumerate(OPPOSITE) for e in pair}


@dataclass(frozen=True)
class PieceClass:
    kind: str  # Triangle | Quad | Octagon | Dodecagon | HighIndex
    label: int  # vertex for triangles, partition otherwise

    @property
    def index(self):
        return {"Triangle": 0, "Quad": 0, "Octagon": 1, "Dodecagon": 2}.get(self.kind, ">=3")

    def __str__(self) -> str:
        return f"{self.kind}({self.label})"


@dataclass(frozen=True)
class StraightLoopPattern:
    weights: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]  # cyclic sequence of (face, corner vertex)
    corners: tuple[tuple[int, int], ...]  # cyclic sequence of (edge, point index)

    @property
    def n(self) -> int:
        return sum(self.weights)

    @property
    def k(self) -> int:
        """Bridge chords on each side; equals (n - 6) / 2 for loops beyond quads."""
        return (self.n - sum(1 for w in self.weights if w)) // 2

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "arcs": [list(a) for a in self.arcs],
                "corners": self.n, "k": self.k}


@dataclass(frozen=True)
class ChordSystem:
    n: int
    beta: tuple[tuple[int, int], ...]  # chords on the positive side, as corner positions
    gamma: tuple[tuple[int, int], ...]
    free_beta: tuple[int, ...] = field(default=())
    free_gamma: tuple[int, ...] = field(default=())


class LoopError(ValueError):
    pass


def corner_counts(weights) -> dict:
    """Arc counts ``{(face, vertex): count}``; raises if the weights are not a normal curve."""
    out = {}
    for f in range(4):
        verts = FACE_VERTICES[f]
        total = sum(weights[EDGE_INDEX[(a, b)]] for a in verts for b in verts if a < b)
        if total % 2:
            raise LoopError(f"face {f} meets the curve an odd number of times")
        for v in verts:
            x, y = (u for u in verts if u != v)
            c = weights[EDGE_INDEX[(v, x)]] + weights[EDGE_INDEX[(v, y)]] - weights[EDGE_INDEX[(x, y)]]
            if c < 0:
                raise LoopError(f"face {f} violates the triangle inequality")
            out[(f, v)] = c // 2
    return out


def _point(e: int, v: int, j: int, weights) -> tuple[int, int]:
    """The ``j``-th point from vertex ``v`` on edge ``e``."""
    a, _ = EDGE_VERTICES[e]
    return (e, j if v == a else weights[e] - 1 - j)


def curve_components(weights) -> list[StraightLoopPattern]:
    """Split the normal curve with these weights into its connected loops."""
    weights = tuple(int(w) for w in weights)
    if len(weights) != 6 or any(w < 0 for w in weights):
        raise LoopError("weights must be six non-negative integers")
    counts = corner_counts(weights)
    graph = nx.MultiGraph()
    for e in range(6):
        for j in range(weights[e]):
            graph.add_node((e, j))
    for (f, v), c in counts.items():
        x, y = (u for u in FACE_VERTICES[f] if u != v)
        ex, ey = EDGE_INDEX[(v, x)], EDGE_INDEX[(v, y)]
        for j in range(c):
            graph.add_edge(_point(ex, v, j, weights), _point(ey, v, j, weights), arc=(f, v))
    loops = []
    for comp in components(nx.Graph(graph)):
        loops.append(_trace(graph, comp))
    return sorted(loops, key=lambda p: (p.n, p.weights, p.corners))


def _trace(graph: nx.MultiGraph, comp) -> StraightLoopPattern:
    start = min(comp)
    order = [start]
    arcs = []
    prev_key = None
    node = start
    while True:
        options = sorted(
            ((nbr, key, data["arc"]) for _, nbr, key, data in graph.edges(node, keys=True, data=True)),
            key=repr,
        )
        nbr, key, arc = next(o for o in options if (frozenset((node, o[0])), o[1]) != prev_key)
        arcs.append(arc)
        prev_key = (frozenset((node, nbr)), key)
        if nbr == start:
            break
        order.append(nbr)
        node = nbr
    weights = [0] * 6
    for e, _ in order:
        weights[e] += 1
    return StraightLoopPattern(tuple(weights), tuple(arcs), tuple(order))


def loop_from_weights(weights) -> StraightLoopPattern:
    loops = curve_components(weights)
    if len(loops) != 1:
        raise LoopError(f"weights {tuple(weights)} describe {len(loops)} loops, not one")
    return loops[0]


# symmetry -------------------------------------------------------------------

def _act(perm, weights) -> tuple[int, ...]:
    out = [0] * 6
    for e, (a, b) in enumerate(EDGE_VERTICES):
        out[EDGE_INDEX[(perm[a], perm[b])]] = weights[e]
    return tuple(out)


def _label_of(weights) -> int:
    """Vertex of a triangle, or the partition whose edges carry the largest weight."""
    if sum(weights) == 3:
        zero_free = [v for v in range(4) if all(weights[EDGE_INDEX[(v, u)]] for u in range(4) if u != v)]
        return zero_free[0]
    pair = [weights[a] + weights[b] for a, b in OPPOSITE]
    if sum(weights) == 4:
        return pair.index(0)
    return pair.index(max(pair))


def _stabiliser(weights):
    label = _label_of(weights)
    for perm in permutations(range(4)):
        if sum(weights) == 3:
            if perm[label] == label:
                yield perm
        else:
            e0, _ = OPPOSITE[label]
            a, b = EDGE_VERTICES[e0]
            if PARTITION_OF_EDGE[EDGE_INDEX[(perm[a], perm[b])]] == label:
                yield perm


def canonical_weights(weights) -> tuple[int, ...]:
    """Least weight vector among the images under symmetries fixing the loop's label."""
    return min(_act(p, weights) for p in _stabiliser(weights))


def enumerate_straight_loops(max_corners: int) -> list[StraightLoopPattern]:
    """Connected straight loops with at most ``max_corners`` corners, one per class.

    Two loops are in the same class when a symmetry of the tetrahedron carries
    one to the other while fixing its label (the vertex a triangle surrounds,
    or the partition of the vertices into pairs that a longer loop respects).
    """
    if max_corners < 3:
        raise ValueError("max_corners must be at least 3")
    found = {}
    for weights in _weight_vectors(max_corners):
        if not _is_normal(weights):
            continue
        canon = canonical_weights(weights)
        if canon in found or canon != weights:
            continue
        loops = curve_components(weights)
        if len(loops) == 1:
            found[canon] = loops[0]
    return sorted(found.values(), key=_pattern_order)


_FACE_EDGES = tuple(
    tuple((EDGE_INDEX[(v, x)], EDGE_INDEX[(v, y)], EDGE_INDEX[(x, y)])
          for v in FACE_VERTICES[f] for x, y in [tuple(u for u in FACE_VERTICES[f] if u != v)])
    for f in range(4)
)


def _is_normal(w) -> bool:
    """Cheap version of :func:`corner_counts` that also rejects loops with a vertex-link part."""
    positive = [0, 0, 0, 0]
    for f in range(4):
        for (e1, e2, e3), v in zip(_FACE_EDGES[f], FACE_VERTICES[f]):
            c = w[e1] + w[e2] - w[e3]
            if c < 0 or c % 2:
                return False
            if c:
                positive[v] += 1
    # innermost arcs around a vertex met by all three faces close up into a triangle
    return sum(w) == 3 or max(positive) < 3


def _pattern_order(p: StraightLoopPattern):
    cls = classify_piece(p)
    return (p.n, cls.kind, cls.label, p.weights)


def _weight_vectors(total: int):
    def rec(prefix, left):
        if len(prefix) == 6:
            yield tuple(prefix)
            return
        for w in range(left + 1):
            yield from rec(prefix + [w], left - w)

    # even totals only; a closed curve meets the 1-skeleton an even number of
    # times except for triangles, which are handled by the parity of each face
    for vec in rec([], total):
        if sum(vec) >= 3:
            yield vec


# chords and the index oracle -------------------------------------------------

def _vertex_sides(weights) -> dict[int, int]:
    side = {0: 0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in range(4):
            if b == a:
                continue
            want = side[a] ^ (weights[EDGE_INDEX[(a, b)]] % 2)
            if b not in side:
                side[b] = want
                stack.append(b)
    return side


def chord_system(pattern: StraightLoopPattern) -> ChordSystem:
    """Traces on the disk of the bridge disks of its boundary loop.

    Each pair of consecutive points on an edge cuts off an edge segment lying
    on one side of the loop; the bridge disk over that segment meets the disk
    in a chord joining the two points.  Side 0 (the side containing vertex 0)
    gives the beta chords.
    """
    w = pattern.weights
    side = _vertex_sides(w)
    pos = {c: i for i, c in enumerate(pattern.corners)}
    beta, gamma = [], []
    for e, (a, _) in enumerate(EDGE_VERTICES):
        for j in range(w[e] - 1):
            # segment between points j and j+1 lies on the side of vertex a, flipped j+1 times
            s = side[a] ^ ((j + 1) % 2)
            chord = tuple(sorted((pos[(e, j)], pos[(e, j + 1)])))
            (beta if s == 0 else gamma).append(chord)
    used_b = {x for c in beta for x in c}
    used_g = {x for c in gamma for x in c}
    return ChordSystem(
        n=pattern.n,
        beta=tuple(sorted(beta)),
        gamma=tuple(sorted(gamma)),
        free_beta=tuple(i for i in range(pattern.n) if i not in used_b),
        free_gamma=tuple(i for i in range(pattern.n) if i not in used_g),
    )


def chords_cross(c1, c2) -> bool:
    """Whether two chords of a polygon have intersecting interiors."""
    a, b = c1
    c, d = c2
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def descending_link(system: ChordSystem) -> nx.Graph:
    """1-skeleton of the descending link; the link is its flag complex."""
    g = nx.Graph()
    nodes = [("b", i) for i in range(len(system.beta))] + [("g", j) for j in range(len(system.gamma))]
    g.add_nodes_from(nodes)
    for i in range(len(system.beta)):
        for i2 in range(i + 1, len(system.beta)):
            g.add_edge(("b", i), ("b", i2))
    for j in range(len(system.gamma)):
        for j2 in range(j + 1, len(system.gamma)):
            g.add_edge(("g", j), ("g", j2))
    for i, b in enumerate(system.beta):
        for j, c in enumerate(system.gamma):
            if not chords_cross(b, c):
                g.add_edge(("b", i), ("g", j))
    return g


def midpoint_components(system: ChordSystem) -> int:
    """Components of the set at distance one half from both side simplices."""
    cross = nx.Graph()
    for i, b in enumerate(system.beta):
        for j, c in enumerate(system.gamma):
            if not chords_cross(b, c):
                cross.add_edge(("b", i), ("g", j))
    return nx.number_connected_components(cross)


@dataclass(frozen=True)
class OracleResult:
    index: object  # 0, 1, 2, ">=3" or "unknown"
    link_vertices: int
    link_components: int
    midpoint_components: int


def piece_index_oracle(pattern: StraightLoopPattern) -> OracleResult:
    system = chord_system(pattern)
    link = descending_link(system)
    status = clique_complex_index(link)
    index = int(status) if status in ("0", "1", "2") else status
    comps = nx.number_connected_components(link) if link.number_of_nodes() else 0
    return OracleResult(index, link.number_of_nodes(), comps, midpoint_components(system))


def classify_piece(pattern: StraightLoopPattern) -> PieceClass:
    """Closed-form class from the corner count and the edge weights."""
    w = pattern.weights
    n = sum(w)
    label = _label_of(w)
    if n == 3:
        return PieceClass("Triangle", label)
    if n == 4:
        return PieceClass("Quad", label)
    if n == 8:
        return PieceClass("Octagon", label)
    if n == 12:
        return PieceClass("Dodecagon", label)
    return PieceClass("HighIndex", label)


def parse_arc_sequence(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"f:v,f:v,..."`` into a tuple of (face, corner) pairs."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        f, v = item.split(":")
        out.append((int(f), int(v)))
    return tuple(out)


def same_cyclic_sequence(a, b) -> bool:
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    for seq in (b, b[::-1]):
        for s in range(len(seq)):
            if seq[s:] + seq[:s] == a:
                return True
    return False


def loops_disjoint(w1, w2) -> bool:
    """Whether two normal loops can be made disjoint: their sum splits back into them."""
    total = tuple(x + y for x, y in zip(w1, w2))
    try:
        parts = sorted(p.weights for p in curve_components(total))
    except LoopError:
        return False
    want = sorted([tuple(w1)] if sum(w2) == 0 else [tuple(w1), tuple(w2)])
    return parts == want
