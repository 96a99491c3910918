"""Finite height complexes: descending links, index, thinning, face slides, path genus.

A 2-cell is stored by its top vertex, its two upper edges ``(e1, e2)`` and its
two lower edges ``(f1, f2)``.  ``f1`` leaves the lower end of ``e1`` and
``f2`` the lower end of ``e2``; a crushed lower edge is ``None``.  Two lower
edges give a diamond, one a triangle, none a bigon.

Paths are immutable: every operation returns a new :class:`Path`, so the
complexity tuple of a path is always that of its current edges.
"""

from __future__ import annotations

import json
import operator
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx

from ._complexes import pi1_status


class HeightComplexError(ValueError):
    pass


class NetAxiomViolation(HeightComplexError):
    pass


class TranslationAxiomViolation(HeightComplexError):
    pass


class SearchBudgetExceeded(HeightComplexError):
    pass


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    def other(self, v):
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise HeightComplexError(f"vertex {v} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Cell:
    id: str
    top: str
    upper: tuple
    lower: tuple
    x1: str = ""
    x2: str = ""
    bottom: str = ""

    @property
    def kind(self) -> str:
        crushed = sum(f is None for f in self.lower)
        return ("Diamond", "Triangle", "Bigon")[crushed]

    def to_dict(self):
        return {"id": self.id, "top": self.top, "upper": list(self.upper), "lower": list(self.lower)}


@dataclass(frozen=True)
class Cube:
    id: str
    top: str
    edges: tuple


@dataclass(frozen=True)
class Split:
    """The two parallel boundary paths of a 2-cell, both running source to sink."""

    cell: str
    source: str
    sink: str
    p: tuple
    q: tuple
    vertical: bool


class HeightComplex:
    """Vertices with complexity (and optional genus) labels, directed edges, typed 2-cells."""

    def __init__(self, vertices, edges, cells=(), cubes=(), genus=None, order=None, meta=None):
        self.complexity = {str(v): _freeze(c) for v, c in dict(vertices).items()}
        self.genus = None if genus is None else {str(v): int(g) for v, g in dict(genus).items()}
        self.edges = {}
        for e in edges:
            e = e if isinstance(e, Edge) else Edge(*e)
            if e.id in self.edges:
                raise HeightComplexError(f"duplicate edge id {e.id}")
            for v in (e.tail, e.head):
                if v not in self.complexity:
                    raise HeightComplexError(f"edge {e.id} uses unknown vertex {v}")
            self.edges[e.id] = e
        self._relation = None
        if order is None:
            self.less = operator.lt
        elif callable(order):
            self.less = order
        else:
            self._relation = frozenset((_freeze(a), _freeze(b)) for a, b in order)
            self.less = lambda a, b: (a, b) in self._relation
        self.cells = {}
        for c in cells:
            c = self._make_cell(c)
            if c.id in self.cells:
                raise HeightComplexError(f"duplicate cell id {c.id}")
            self.cells[c.id] = c
        self.cubes = {c.id: c for c in (c if isinstance(c, Cube) else Cube(c[0], c[1], tuple(c[2])) for c in cubes)}
        self.meta = dict(meta or {})
        self._below = {v: [] for v in self.complexity}
        for e in self.edges.values():
            up = self.upper_end(e.id)
            if up is not None:
                self._below[up].append(e.id)
        self._cells_at = {v: [] for v in self.complexity}
        for c in self.cells.values():
            self._cells_at.setdefault(c.top, []).append(c.id)

    def _make_cell(self, c) -> Cell:
        if isinstance(c, dict):
            cid, top, upper, lower = c["id"], c["top"], c["upper"], c.get("lower", (None, None))
        elif isinstance(c, Cell):
            cid, top, upper, lower = c.id, c.top, c.upper, c.lower
        else:
            cid, top, upper, lower = c
        upper, lower = tuple(upper), tuple(lower)
        if len(upper) != 2 or len(lower) != 2:
            raise HeightComplexError(f"cell {cid}: need two upper and two lower slots")
        for e in (*upper, *(f for f in lower if f is not None)):
            if e not in self.edges:
                raise HeightComplexError(f"cell {cid} uses unknown edge {e}")
        x1 = self.edges[upper[0]].other(top)
        x2 = self.edges[upper[1]].other(top)
        if lower[0] is not None:
            bottom = self.edges[lower[0]].other(x1)
        elif lower[1] is not None:
            bottom = self.edges[lower[1]].other(x2)
        else:
            bottom = x1
        return Cell(cid, top, upper, lower, x1, x2, bottom)

    # basic queries ---------------------------------------------------------
    def comparable(self, a, b) -> bool:
        return bool(self.less(a, b)) != bool(self.less(b, a))

    def upper_end(self, eid):
        e = self.edges[eid]
        ct, ch = self.complexity[e.tail], self.complexity[e.head]
        if self.less(ch, ct) and not self.less(ct, ch):
            return e.tail
        if self.less(ct, ch) and not self.less(ch, ct):
            return e.head
        return None

    def lower_end(self, eid):
        up = self.upper_end(eid)
        return None if up is None else self.edges[eid].other(up)

    def below(self, v) -> list:
        """Edges whose upper endpoint is ``v``."""
        return list(self._below[v])

    def cells_below(self, v) -> list:
        return [self.cells[c] for c in self._cells_at.get(v, ())]

    def points_away(self, eid, v) -> bool:
        return self.edges[eid].tail == v

    def vertex_genus(self, v) -> int:
        if self.genus is None or v not in self.genus:
            raise HeightComplexError(f"no genus label on vertex {v}")
        return self.genus[v]

    def path(self, start, edge_ids) -> "Path":
        steps, v = [], start
        for eid in edge_ids:
            e = self.edges[eid]
            if e.tail == v:
                steps.append((eid, True))
                v = e.head
            elif e.head == v:
                steps.append((eid, False))
                v = e.tail
            else:
                raise HeightComplexError(f"edge {eid} does not continue the path at {v}")
        return Path(self, start, tuple(steps))

    def oriented_path(self, edge_ids) -> "Path":
        edge_ids = list(edge_ids)
        if not edge_ids:
            raise HeightComplexError("an oriented path needs at least one edge or an explicit start")
        return self.path(self.edges[edge_ids[0]].tail, edge_ids)

    # serialisation -----------------------------------------------------------
    def to_dict(self) -> dict:
        out = {
            "vertices": [
                {"id": v, "complexity": _thaw(c), **({"genus": self.genus[v]} if self.genus and v in self.genus else {})}
                for v, c in sorted(self.complexity.items())
            ],
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in sorted(self.edges.values(), key=lambda e: e.id)],
            "cells": [c.to_dict() for c in sorted(self.cells.values(), key=lambda c: c.id)],
            "cubes": [{"id": c.id, "top": c.top, "edges": list(c.edges)} for c in sorted(self.cubes.values(), key=lambda c: c.id)],
        }
        if self._relation is not None:
            out["order"] = sorted([_thaw(a), _thaw(b)] for a, b in self._relation)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "HeightComplex":
        verts = d.get("vertices", [])
        genus = {v["id"]: v["genus"] for v in verts if "genus" in v}
        return cls(
            {v["id"]: v["complexity"] for v in verts},
            [Edge(e["id"], e["tail"], e["head"]) for e in d.get("edges", [])],
            d.get("cells", []),
            [(c["id"], c["top"], c["edges"]) for c in d.get("cubes", [])],
            genus=genus or None,
            order=d.get("order"),
        )


def load_height_complex(text: str) -> HeightComplex:
    return HeightComplex.from_dict(json.loads(text))


# paths ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    """Directed edges with flags saying whether the path runs tail to head."""

    H: HeightComplex = field(repr=False, compare=False)
    start: str
    steps: tuple

    @property
    def edge_ids(self) -> tuple:
        return tuple(e for e, _ in self.steps)

    @property
    def vertices(self) -> tuple:
        out, v = [self.start], self.start
        for eid, fwd in self.steps:
            e = self.H.edges[eid]
            v = e.head if fwd else e.tail
            out.append(v)
        return tuple(out)

    @property
    def end(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.steps)

    @property
    def is_oriented(self) -> bool:
        return all(f for _, f in self.steps)

    @property
    def is_reverse_oriented(self) -> bool:
        return all(not f for _, f in self.steps)

    def maxima(self) -> list[int]:
        """Positions ``i`` (into ``vertices``) of interior maxima."""
        vs, c, less = self.vertices, self.H.complexity, self.H.less
        return [i for i in range(1, len(vs) - 1) if less(c[vs[i - 1]], c[vs[i]]) and less(c[vs[i + 1]], c[vs[i]])]

    def minima(self) -> list[int]:
        vs, c, less = self.vertices, self.H.complexity, self.H.less
        return [i for i in range(1, len(vs) - 1) if not less(c[vs[i - 1]], c[vs[i]]) and not less(c[vs[i + 1]], c[vs[i]])]

    def complexity(self) -> tuple:
        vals = [self.H.complexity[self.vertices[i]] for i in self.maxima()]
        return tuple(_sorted_desc(vals, self.H.less))

    def key(self) -> tuple:
        return (self.start, self.steps)

    def genus(self) -> Fraction:
        return path_genus(self)

    def to_dict(self) -> dict:
        return {"start": self.start, "edges": [[e, f] for e, f in self.steps]}


def _sorted_desc(values, less):
    out = list(values)
    # insertion sort: the order may be partial, so avoid key-based sorting
    for i in range(1, len(out)):
        j = i
        while j > 0 and less(out[j - 1], out[j]):
            out[j - 1], out[j] = out[j], out[j - 1]
            j -= 1
    return out


def compare_complexity(H: HeightComplex, a: tuple, b: tuple):
    """-1, 0 or 1 lexicographically; ``None`` when an entry pair is incomparable."""
    for x, y in zip(a, b):
        if x == y:
            continue
        if H.less(x, y):
            return -1
        if H.less(y, x):
            return 1
        return None
    return (len(a) > len(b)) - (len(a) < len(b))


def path_genus(path: Path) -> Fraction:
    """Half the summed jump genera of the edges plus half the summed endpoint genera."""
    H = path.H
    vs = path.vertices
    jumps = sum(abs(H.vertex_genus(a) - H.vertex_genus(b)) for a, b in zip(vs, vs[1:]))
    return Fraction(jumps, 2) + Fraction(H.vertex_genus(vs[0]) + H.vertex_genus(vs[-1]), 2)


# descending links and index -----------------------------------------------------

def descending_link(H: HeightComplex, v) -> nx.Graph:
    """Graph on the edges below ``v``; two are joined when they are the upper edges of a 2-cell.

    The descending link is the flag complex of this graph.
    """
    if v not in H.complexity:
        raise HeightComplexError(f"unknown vertex {v}")
    g = nx.Graph()
    g.add_nodes_from(sorted(H.below(v)))
    for c in H.cells_below(v):
        a, b = c.upper
        if a != b and g.has_node(a) and g.has_node(b):
            g.add_edge(a, b)
    return g


def link_simplices(graph: nx.Graph) -> list[tuple]:
    return sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(graph))


def _collapsible(graph: nx.Graph, max_simplices: int = 20000) -> bool:
    simplices = set()
    for c in nx.enumerate_all_cliques(graph):
        simplices.add(frozenset(c))
        if len(simplices) > max_simplices:
            return False
    cofaces: dict = {s: set() for s in simplices}
    for s in simplices:
        if len(s) > 1:
            for x in s:
                cofaces[s - {x}].add(s)
    changed = True
    while changed and len(simplices) > 1:
        changed = False
        for s in sorted(simplices, key=lambda s: (-len(s), sorted(s))):
            if s in simplices and len(cofaces[s]) == 1:
                (t,) = cofaces[s]
                if len(t) != len(s) + 1 or cofaces[t]:
                    continue
                for u in (s, t):
                    simplices.discard(u)
                    for x in u:
                        face = u - {x}
                        if face in cofaces:
                            cofaces[face].discard(u)
                changed = True
    return len(simplices) == 1


def link_index(graph: nx.Graph):
    """0, 1, 2, ``"Floppy"`` or ``"Unknown"`` for the flag complex of ``graph``."""
    if graph.number_of_nodes() == 0:
        return 0
    if not nx.is_connected(graph):
        return 1
    status = pi1_status(graph)
    if status == "nontrivial":
        return 2
    if status == "trivial" and _collapsible(graph):
        return "Floppy"
    return "Unknown"


def vertex_index(H: HeightComplex, v):
    return link_index(descending_link(H, v))


# unoriented thinning ---------------------------------------------------------------

def _cell_for(H, v, a, b):
    for c in H.cells_below(v):
        if c.upper == (a, b) or c.upper == (b, a):
            return c
    return None


def _lower_route(c: Cell, first) -> list:
    """Lower edges of ``c`` from the lower end of upper edge ``first`` to the other."""
    route = [f for f in c.lower if f is not None]
    return route if c.upper[0] == first else route[::-1]


def _thinning_step(H, path: Path):
    vs = path.vertices
    best = None
    for i in path.maxima():
        v = vs[i]
        a, b = path.steps[i - 1][0], path.steps[i][0]
        if a == b:
            cand = (i, [])
        else:
            link = descending_link(H, v)
            if not nx.has_path(link, a, b):
                continue
            chain = nx.shortest_path(link, a, b)
            route = []
            for u, w in zip(chain, chain[1:]):
                route.extend(_lower_route(_cell_for(H, v, u, w), u))
            cand = (i, route)
        if best is None or H.less(H.complexity[vs[best[0]]], H.complexity[v]):
            best = cand
    if best is None:
        return None
    i, route = best
    prefix = [e for e, _ in path.steps[: i - 1]]
    suffix = [e for e, _ in path.steps[i + 1:]]
    return H.path(path.start, prefix + route + suffix)


def thin_unoriented(H: HeightComplex, path: Path, max_steps: int = 100_000) -> Path:
    """Slide maxima down until every maximum's two edges lie in different link components."""
    seen = {path.key()}
    cur = path
    for _ in range(max_steps):
        nxt = _thinning_step(H, cur)
        if nxt is None:
            return cur
        if nxt.key() in seen:
            raise NetAxiomViolation("thinning revisited a path; the complexity order is not well founded here")
        seen.add(nxt.key())
        cur = nxt
    raise NetAxiomViolation(f"thinning did not stop within {max_steps} steps")


def is_thin_unoriented(H: HeightComplex, path: Path) -> bool:
    return _thinning_step(H, path) is None


# oriented face slides ------------------------------------------------------------

def _boundary(c: Cell, H: HeightComplex):
    """Boundary cycle as (edge, from, to) starting at the top."""
    e1, e2 = c.upper
    f1, f2 = c.lower
    cyc = [(e1, c.top, c.x1)]
    if f1 is not None:
        cyc.append((f1, c.x1, c.bottom))
    if f2 is not None:
        cyc.append((f2, c.bottom, c.x2))
    cyc.append((e2, c.x2, c.top))
    return cyc


def cell_is_parallel_oriented(H: HeightComplex, c: Cell) -> bool:
    sign = {}
    for eid, a, b in _boundary(c, H):
        sign[eid] = 1 if H.edges[eid].tail == a else -1
    e1, e2 = c.upper
    f1, f2 = c.lower
    if f1 is not None and f2 is not None:
        return sign[e1] == -sign[f2] and sign[f1] == -sign[e2]
    if f1 is not None:
        return sign[e2] == -sign[f1]
    if f2 is not None:
        return sign[f2] == -sign[e1]
    return True


def cell_split(H: HeightComplex, c: Cell):
    """The :class:`Split` of a parallel-oriented cell, or ``None``."""
    if not cell_is_parallel_oriented(H, c):
        return None
    cyc = _boundary(c, H)
    n = len(cyc)
    agree = [H.edges[e].tail == a for e, a, _ in cyc]
    if all(agree) or not any(agree):
        # directed 2-cycle (a bigon with one edge each way): the route over the top against nothing
        order = [e for e, _, _ in cyc] if all(agree) else [e for e, _, _ in reversed(cyc)]
        k = next(i for i, e in enumerate(order) if H.edges[e].tail == c.bottom)
        p = tuple(order[k:] + order[:k])
        return Split(c.id, c.bottom, c.bottom, p, (), True)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            fwd = [(i + k) % n for k in range((j - i) % n)]
            back = [(i - 1 - k) % n for k in range((i - j) % n)]
            if all(agree[k] for k in fwd) and not any(agree[k] for k in back):
                src, snk = cyc[i][1], cyc[j][1]
                p = tuple(cyc[k][0] for k in fwd)
                q = tuple(cyc[k][0] for k in back)
                return Split(c.id, src, snk, p, q, c.top not in (src, snk))
    return None


def _splits(H):
    cache = H.__dict__.setdefault("_split_cache", {})
    if not cache:
        for cid in sorted(H.cells):
            s = cell_split(H, H.cells[cid])
            if s is not None:
                cache[cid] = s
    return cache


def _find(seq, sub):
    n = len(sub)
    return [i for i in range(len(seq) - n + 1) if tuple(seq[i:i + n]) == sub]


@dataclass(frozen=True)
class Slide:
    cell: str
    kind: str  # "horizontal" | "vertical"
    position: int
    removed: tuple
    inserted: tuple

    def to_dict(self):
        return {"cell": self.cell, "kind": self.kind, "position": self.position,
                "removed": list(self.removed), "inserted": list(self.inserted)}


def oriented_slides(H: HeightComplex, edges: tuple, kinds=("horizontal", "vertical")):
    """All oriented face slides available on an oriented edge sequence."""
    out = []
    for cid, s in _splits(H).items():
        kind = "vertical" if s.vertical else "horizontal"
        if kind not in kinds:
            continue
        for a, b in ((s.p, s.q), (s.q, s.p)):
            if not a:
                continue
            for i in _find(edges, a):
                out.append(Slide(cid, kind, i, a, b))
    return out


def apply_slide(edges: tuple, slide: Slide) -> tuple:
    i = slide.position
    if tuple(edges[i:i + len(slide.removed)]) != slide.removed:
        raise HeightComplexError(f"slide across {slide.cell} does not match the path")
    return tuple(edges[:i]) + slide.inserted + tuple(edges[i + len(slide.removed):])


def horizontal_class(H: HeightComplex, edges: tuple, budget: int = 10_000) -> dict:
    """Every oriented path reachable by horizontal slides, mapped to (parent, slide)."""
    edges = tuple(edges)
    parent = {edges: None}
    queue = deque([edges])
    while queue:
        cur = queue.popleft()
        for s in oriented_slides(H, cur, kinds=("horizontal",)):
            nxt = apply_slide(cur, s)
            if nxt not in parent:
                if len(parent) >= budget:
                    raise SearchBudgetExceeded(f"horizontal-slide class exceeds {budget} paths")
                parent[nxt] = (cur, s)
                queue.append(nxt)
    return parent


def _chain(parent, target):
    out = []
    while parent[target] is not None:
        prev, s = parent[target]
        out.append(s)
        target = prev
    return out[::-1]


def _reducing_vertical(H, edges, start):
    p = H.path(start, edges)
    vs = p.vertices
    maxima = set(p.maxima())
    found = []
    for s in oriented_slides(H, edges, kinds=("vertical",)):
        c = H.cells[s.cell]
        # the removed route must pass over the cell's top at a maximum of the path
        if len(s.removed) >= 2 and c.top in vs[s.position + 1: s.position + len(s.removed)]:
            mid = s.position + 1
            if vs[mid] == c.top and mid in maxima:
                found.append(s)
    return found


def path_link(H: HeightComplex, path: Path, position: int, budget: int = 10_000) -> nx.Graph:
    """Link of the maximum at ``position`` spanned by the edges next to it over the horizontal class."""
    if not path.is_oriented:
        raise HeightComplexError("path links are defined for oriented paths")
    ordinal = path.maxima().index(position)
    v = path.vertices[position]
    nodes = set()
    for edges in horizontal_class(H, path.edge_ids, budget):
        q = H.path(path.start, edges)
        pos = q.maxima()[ordinal]
        nodes.add(edges[pos - 1])
        nodes.add(edges[pos])
    return descending_link(H, v).subgraph(sorted(nodes)).copy()


def path_index(H, path, position, budget=10_000):
    return link_index(path_link(H, path, position, budget))


def thin_oriented(H: HeightComplex, path: Path, budget: int = 10_000, max_steps: int = 10_000):
    """Thin an oriented path by horizontal slides followed by complexity-reducing vertical slides.

    Returns ``(path, log)`` where ``log`` lists every slide in order.
    """
    if not path.is_oriented:
        raise HeightComplexError("thin_oriented needs an oriented path")
    start = path.start
    cur, log = path.edge_ids, []
    for _ in range(max_steps):
        parent = horizontal_class(H, cur, budget)
        move = None
        for edges in sorted(parent):
            vert = _reducing_vertical(H, edges, start)
            if vert:
                move = (edges, vert[0])
                break
        if move is None:
            break
        edges, s = move
        log.extend(_chain(parent, edges))
        log.append(s)
        cur = apply_slide(edges, s)
    else:
        raise NetAxiomViolation(f"oriented thinning did not stop within {max_steps} steps")
    return H.path(start, cur), log


# Heegaard paths and fans --------------------------------------------------------------

@dataclass
class Fan:
    slides: list
    unique: object = None  # True / False when checked, None when not checked

    def to_dict(self):
        return {"slides": [s.to_dict() for s in self.slides], "unique": self.unique}


def _raise_minimum(H, edges, start, which):
    p = H.path(start, edges)
    mins = p.minima()
    if not mins:
        return None
    i = mins[0] if which == "first" else mins[-1]
    m = p.vertices[i]
    pair = (edges[i - 1], edges[i])
    for cid, s in _splits(H).items():
        c = H.cells[cid]
        if c.kind != "Diamond" or c.bottom != m or not s.vertical:
            continue
        for a, b in ((s.p, s.q), (s.q, s.p)):
            if a == pair:
                return Slide(cid, "vertical", i - 1, a, b)
    raise TranslationAxiomViolation(f"no diamond with bottom {m} and lower edges {pair[0]}, {pair[1]}")


def heegaard_fan(H: HeightComplex, path: Path, check_unique: bool = True, budget: int = 10_000):
    """Raise interior minima across diamonds until one maximum is left.  Returns ``(path, fan)``."""
    if not path.is_oriented:
        raise HeightComplexError("associate_heegaard needs an oriented path")

    def run(which):
        cur, slides = path.edge_ids, []
        for _ in range(10 * len(cur) * len(cur) + 10):
            s = _raise_minimum(H, cur, path.start, which)
            if s is None:
                return cur, slides
            slides.append(s)
            cur = apply_slide(cur, s)
        raise TranslationAxiomViolation("raising minima did not terminate")

    result, slides = run("first")
    fan = Fan(slides)
    if check_unique:
        other, _ = run("last")
        try:
            fan.unique = other in horizontal_class(H, result, budget)
        except SearchBudgetExceeded:
            fan.unique = None
    return H.path(path.start, result), fan


def associate_heegaard(H: HeightComplex, path: Path) -> Path:
    return heegaard_fan(H, path, check_unique=False)[0]


def is_heegaard(path: Path) -> bool:
    return len(path.maxima()) <= 1 and not path.minima()


# path complex ------------------------------------------------------------------------

def _oriented_paths(H, a, b, max_length, max_paths):
    out_edges = {}
    for e in sorted(H.edges.values(), key=lambda e: e.id):
        out_edges.setdefault(e.tail, []).append(e)
    found = []
    stack = [(a, ())]
    while stack:
        v, edges = stack.pop()
        if v == b and edges:
            found.append(edges)
            if len(found) > max_paths:
                raise SearchBudgetExceeded(f"more than {max_paths} oriented paths from {a} to {b}")
        if len(edges) < max_length:
            for e in reversed(out_edges.get(v, [])):
                stack.append((e.head, edges + (e.id,)))
    return sorted(found)


def base_two_word(H: HeightComplex, path: Path) -> int:
    """Digit 1 for each increasing edge and 0 for each decreasing one, read in base two."""
    vs, c = path.vertices, H.complexity
    word = "".join("1" if H.less(c[x], c[y]) else "0" for x, y in zip(vs, vs[1:]))
    return int("1" + word, 2)


def build_path_complex(H: HeightComplex, v_minus, v_plus, max_length: int = 8, max_paths: int = 5000) -> HeightComplex:
    """2-skeleton of the complex of oriented paths from ``v_minus`` to ``v_plus``.

    Vertices are horizontal-slide classes of enumerated paths, edges are
    complexity-reducing vertical slides, and 2-cells are pairs of vertical
    slides at distinct maxima that commute.
    """
    for v in (v_minus, v_plus):
        if vertex_index(H, v) != 0:
            raise HeightComplexError(f"endpoint {v} is not index 0")
    paths = _oriented_paths(H, v_minus, v_plus, max_length, max_paths)
    pathset = set(paths)
    uf = {p: p for p in paths}

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    for p in paths:
        for s in oriented_slides(H, p, kinds=("horizontal",)):
            q = apply_slide(p, s)
            if q in pathset:
                ra, rb = find(p), find(q)
                if ra != rb:
                    uf[max(ra, rb)] = min(ra, rb)
    reps = sorted({find(p) for p in paths})
    name = {r: f"P{i}" for i, r in enumerate(reps)}
    cls = {p: name[find(p)] for p in paths}
    vertices, genus = {}, {}
    for r in reps:
        path = H.path(v_minus, r)
        vertices[name[r]] = path.complexity()
        if H.genus is not None:
            g = path_genus(path)
            genus[name[r]] = int(g) if g.denominator == 1 else None
    edges, edge_of, certificate = [], {}, []
    moves = {}
    for p in paths:
        for s in _reducing_vertical(H, p, v_minus):
            q = apply_slide(p, s)
            if q not in pathset:
                continue
            moves.setdefault(p, []).append((s, q))
            key = (cls[p], cls[q], s.cell)
            if key not in edge_of:
                eid = f"s{len(edges)}"
                edge_of[key] = eid
                edges.append(Edge(eid, cls[p], cls[q]))
            certificate.append(base_two_word(H, H.path(v_minus, q)) < base_two_word(H, H.path(v_minus, p)))
    cells, seen_cells = [], set()
    for p, ms in sorted(moves.items()):
        for (s1, q1), (s2, q2) in combinations(ms, 2):
            if s1.position == s2.position:
                continue
            # the same two slides applied in either order
            try:
                a = s2 if s2.position < s1.position else Slide(s2.cell, s2.kind, s2.position + len(s1.inserted) - len(s1.removed), s2.removed, s2.inserted)
                b = s1 if s1.position < s2.position else Slide(s1.cell, s1.kind, s1.position + len(s2.inserted) - len(s2.removed), s1.removed, s1.inserted)
                r12, r21 = apply_slide(q1, a), apply_slide(q2, b)
            except HeightComplexError:
                continue
            if r12 != r21 or r12 not in pathset:
                continue
            e1 = edge_of[(cls[p], cls[q1], s1.cell)]
            e2 = edge_of[(cls[p], cls[q2], s2.cell)]
            f1 = edge_of.get((cls[q1], cls[r12], s2.cell))
            f2 = edge_of.get((cls[q2], cls[r12], s1.cell))
            if f1 is None or f2 is None or e1 == e2:
                continue
            sig = frozenset((e1, e2, f1, f2))
            if sig in seen_cells:
                continue
            seen_cells.add(sig)
            cells.append((f"d{len(cells)}", cls[p], (e1, e2), (f1, f2)))
    meta = {
        "paths": {name[r]: list(r) for r in reps},
        "members": {n: [list(p) for p in paths if cls[p] == n] for n in name.values()},
        "certificate": all(certificate),
        "endpoints": [v_minus, v_plus],
    }
    return HeightComplex(vertices, edges, cells, genus=genus if H.genus is not None else None, meta=meta)


# axiom checks ---------------------------------------------------------------------------

@dataclass
class AxiomReport:
    findings: dict
    ell: dict = field(default_factory=dict)

    def ok(self, name=None) -> bool:
        if name is None:
            return all(not v for v in self.findings.values())
        return not self.findings.get(name)

    def to_dict(self):
        return {"findings": {k: list(v) for k, v in sorted(self.findings.items())},
                "ell": {k: v for k, v in sorted(self.ell.items())}}


def _check_morse(H, out):
    for e in sorted(H.edges):
        a, b = H.complexity[H.edges[e].tail], H.complexity[H.edges[e].head]
        if not H.comparable(a, b):
            out.append(f"edge {e}: endpoint complexities not comparable and distinct")
    for cid in sorted(H.cells):
        c = H.cells[cid]
        e1, e2 = c.upper
        if e1 == e2:
            out.append(f"cell {cid}: upper edges coincide")
            continue
        if H.upper_end(e1) != c.top or H.upper_end(e2) != c.top:
            out.append(f"cell {cid}: upper edges are not below the top")
            continue
        f1, f2 = c.lower
        if c.kind == "Bigon" and c.x1 != c.x2:
            out.append(f"cell {cid}: bigon edges do not share both endpoints")
        if f1 is not None and H.upper_end(f1) != c.x1:
            out.append(f"cell {cid}: lower edge {f1} is not below {c.x1}")
        if f2 is not None and H.upper_end(f2) != c.x2:
            out.append(f"cell {cid}: lower edge {f2} is not below {c.x2}")
        if f1 is not None and f2 is not None and H.edges[f2].other(c.x2) != c.bottom:
            out.append(f"cell {cid}: lower edges do not meet")
        if f1 is None and f2 is not None and c.x1 != c.bottom:
            out.append(f"cell {cid}: crushed edge does not join its endpoints")
        if f2 is None and f1 is not None and c.x2 != c.bottom:
            out.append(f"cell {cid}: crushed edge does not join its endpoints")
    # projections of pairwise-cofacial triples
    for v in sorted(H.complexity):
        link = descending_link(H, v)
        for tri in sorted(t for t in nx.enumerate_all_cliques(link) if len(t) == 3):
            for k in range(3):
                e3 = tri[k]
                e1, e2 = (tri[j] for j in range(3) if j != k)
                p1 = _project(H, v, e1, e3)
                p2 = _project(H, v, e2, e3)
                if p1 is None or p2 is None or p1 == p2:
                    continue
                w = H.lower_end(e3)
                if _cell_for(H, w, p1, p2) is None:
                    out.append(f"vertex {v}: projections of {e1}, {e2} across {e3} bound no cell at {w}")


def _project(H, v, e, across):
    c = _cell_for(H, v, e, across)
    if c is None:
        return None
    # the lower edge leaving the lower end of ``across``
    return c.lower[0] if c.upper[0] == across else c.lower[1]


def _check_net(H, findings, ell):
    g = nx.DiGraph()
    g.add_nodes_from(H.complexity)
    for e in H.edges.values():
        a, b = e.tail, e.head
        if H.less(H.complexity[b], H.complexity[a]):
            g.add_edge(a, b)
        if H.less(H.complexity[a], H.complexity[b]):
            g.add_edge(b, a)
    try:
        cyc = nx.find_cycle(g)
        findings.append("decreasing cycle through " + ", ".join(str(u) for u, _ in cyc))
        return
    except nx.NetworkXNoCycle:
        pass
    for v in reversed(list(nx.topological_sort(g))):
        ell[v] = max((ell[w] + 1 for w in g.successors(v)), default=0)


def _check_casson_gordon(H, out, max_length, max_paths):
    def compressible(v, positive):
        return any(H.points_away(e, v) == positive for e in H.below(v))

    verts = sorted(H.complexity)
    count = 0
    for a in verts:
        for b in verts:
            try:
                paths = _oriented_paths(H, a, b, max_length, max_paths)
            except SearchBudgetExceeded:
                out.append(f"path budget exceeded between {a} and {b}; check incomplete")
                continue
            for edges in paths:
                count += 1
                p = H.path(a, edges)
                mx, mn = p.maxima(), p.minima()
                for i in mx:
                    before = [m for m in mn if m < i]
                    after = [m for m in mn if m > i]
                    if not before or not after:
                        continue
                    vm, vp = p.vertices[before[-1]], p.vertices[after[0]]
                    for side in (True, False):
                        first, second = (vm, vp) if side else (vp, vm)
                        if compressible(first, side) and not compressible(second, side):
                            try:
                                idx = path_index(H, p, i)
                            except SearchBudgetExceeded:
                                idx = "Unknown"
                            if idx != "Floppy":
                                out.append(f"path {list(edges)}: maximum {p.vertices[i]} breaks the Casson-Gordon property")
    return count


def _check_barrier(H, out, max_paths):
    for v in sorted(H.complexity):
        for positive in (True, False):
            ends, stack, n = set(), [v], 0
            while stack:
                u = stack.pop()
                nxt = [e for e in H.below(u) if H.points_away(e, u) == positive]
                if not nxt:
                    ends.add(u)
                for e in nxt:
                    stack.append(H.edges[e].other(u))
                n += 1
                if n > max_paths:
                    out.append(f"vertex {v}: descending paths exceed budget; check incomplete")
                    break
            if len(ends) > 1:
                side = "positive" if positive else "negative"
                out.append(f"vertex {v}: {side} descending paths end at {sorted(ends)}")


def _check_translation(H, out):
    for v in sorted(H.complexity):
        above = [e for e in sorted(H.edges) if H.lower_end(e) == v]
        away = [e for e in above if H.points_away(e, v)]
        toward = [e for e in above if not H.points_away(e, v)]
        for a in away:
            for b in toward:
                hits = [c for c in H.cells.values() if c.kind == "Diamond" and c.bottom == v and set(c.lower) == {a, b}]
                if not hits:
                    out.append(f"vertex {v}: no diamond above edges {a}, {b}")


def _check_genus(H, out):
    if H.genus is None:
        return
    jump = lambda x, y: abs(H.vertex_genus(x) - H.vertex_genus(y))
    for cid in sorted(H.cells):
        c = H.cells[cid]
        f1, f2 = c.lower
        j_e1, j_e2 = jump(c.top, c.x1), jump(c.top, c.x2)
        j_f1 = jump(c.x1, c.bottom) if f1 is not None else 0
        j_f2 = jump(c.x2, c.bottom) if f2 is not None else 0
        if c.kind == "Bigon":
            continue
        if j_e1 != j_f2 or j_e2 != j_f1:
            out.append(f"cell {cid}: opposite edges have different jump genera")


def check_axioms(H: HeightComplex, *, max_path_length: int = 4, max_paths: int = 2000,
                 translation: bool = False, path_axioms: bool = True) -> AxiomReport:
    findings = {"morse": [], "net": [], "parallel_orientation": [], "genus": []}
    ell: dict = {}
    _check_morse(H, findings["morse"])
    _check_net(H, findings["net"], ell)
    for cid in sorted(H.cells):
        if not cell_is_parallel_oriented(H, H.cells[cid]):
            findings["parallel_orientation"].append(f"cell {cid} is not parallel oriented")
    _check_genus(H, findings["genus"])
    if translation:
        findings["translation"] = []
        _check_translation(H, findings["translation"])
    if path_axioms:
        findings["casson_gordon"] = []
        findings["barrier"] = []
        _check_casson_gordon(H, findings["casson_gordon"], max_path_length, max_paths)
        _check_barrier(H, findings["barrier"], max_paths)
    return AxiomReport(findings, ell)


def is_height_complex(H: HeightComplex) -> bool:
    r = check_axioms(H, path_axioms=False)
    return r.ok("morse") and r.ok("net")


# random complexes for tests ------------------------------------------------------------

def random_height_complex(rng, n_elements: int = 4, copies: float = 0.2, density: float = 0.6,
                          blockers: float = 0.3, genus_fraction: float = 0.5,
                          translation: bool = False) -> HeightComplex:
    """A random complex on the subsets of ``range(n_elements)``.

    Each edge removes one element (an element may come in two parallel
    copies).  Two removals span a diamond when a fixed random compatibility
    relation allows it and the top does not contain that pair's blocker set,
    a rule that is monotone under removal so projections always land on
    cells.  Copies of one element span bigons.  Orientation and genus jumps
    depend only on the removed copy, so diamonds are parallel oriented and
    opposite edges share jump genus.  With ``translation`` every pair of
    removals on opposite sides spans a diamond and parallel copies share a
    side, which gives the translation axiom.
    """
    n = n_elements
    labels = []
    for i in range(n):
        labels.append((i, 0))
        if rng.random() < copies:
            labels.append((i, 1))
    side = {l: rng.random() < 0.5 for l in labels}
    if translation:
        for i, c in labels:
            side[(i, c)] = side[(i, 0)]
    carries = {i: rng.random() < genus_fraction for i in range(n)}
    compat, block = {}, {}
    for a, b in combinations(labels, 2):
        compat[(a, b)] = rng.random() < density
        block[(a, b)] = frozenset(k for k in range(n) if rng.random() < blockers and k not in (a[0], b[0]))
        if translation and side[a] != side[b]:
            compat[(a, b)], block[(a, b)] = True, frozenset()

    def vid(mask):
        return "v" + format(mask, f"0{n}b")

    vertices, genus = {}, {}
    for mask in range(1 << n):
        vertices[vid(mask)] = bin(mask).count("1")
        genus[vid(mask)] = sum(1 for i in range(n) if mask >> i & 1 and carries[i])
    edges, edge_of = [], {}
    for mask in range(1 << n):
        for l in labels:
            if mask >> l[0] & 1:
                top, low = vid(mask), vid(mask & ~(1 << l[0]))
                eid = f"e{mask}_{l[0]}_{l[1]}"
                edge_of[(mask, l)] = eid
                edges.append(Edge(eid, top, low) if side[l] else Edge(eid, low, top))
    cells = []
    for mask in range(1 << n):
        members = {i for i in range(n) if mask >> i & 1}
        here = [l for l in labels if l[0] in members]
        for a, b in combinations(here, 2):
            if not compat[(a, b)] or block[(a, b)] <= members and block[(a, b)]:
                continue
            e1, e2 = edge_of[(mask, a)], edge_of[(mask, b)]
            if a[0] == b[0]:
                cells.append((f"q{len(cells)}", vid(mask), (e1, e2), (None, None)))
            else:
                f1 = edge_of[(mask & ~(1 << a[0]), b)]
                f2 = edge_of[(mask & ~(1 << b[0]), a)]
                cells.append((f"q{len(cells)}", vid(mask), (e1, e2), (f1, f2)))
    return HeightComplex(vertices, edges, cells, genus=genus)


def random_walk(H: HeightComplex, rng, length: int, start=None) -> Path:
    adj = {v: [] for v in H.complexity}
    for e in sorted(H.edges.values(), key=lambda e: e.id):
        adj[e.tail].append(e.id)
        adj[e.head].append(e.id)
    v = start if start is not None else rng.choice(sorted(H.complexity))
    first, ids = v, []
    for _ in range(length):
        if not adj[v]:
            break
        eid = rng.choice(adj[v])
        ids.append(eid)
        v = H.edges[eid].other(v)
    return H.path(first, ids)
