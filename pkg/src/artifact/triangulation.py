"""Tetrahedral triangulations: parsing, orbit computation and validation.

A triangulation is a list of tetrahedra with face gluings.  Face ``f`` of a
tetrahedron is the face opposite vertex ``f``; a gluing of ``(t, f)`` is a
target tetrahedron and a permutation of ``{0, 1, 2, 3}`` sending the vertices
of ``t`` to those of the target.  Edges are indexed 0..5 as the vertex pairs
01, 02, 03, 12, 13, 23.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

EDGE_VERTICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: i for i, pair in enumerate(EDGE_VERTICES)}
EDGE_INDEX.update({(b, a): i for (a, b), i in list(EDGE_INDEX.items())})

# face f contains the three vertices other than f
FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))

Perm = tuple[int, int, int, int]
Gluing = Optional[tuple[int, Perm]]


class TriangulationError(ValueError):
    """Raised for documents that cannot describe a triangulation."""


class NonOrientableError(TriangulationError):
    pass


def parse_perm(text: str) -> Perm:
    if not isinstance(text, str) or len(text) != 4 or any(c not in "0123" for c in text):
        raise TriangulationError(f"permutation {text!r} is not a 4-character string over 0123")
    perm = tuple(int(c) for c in text)
    if sorted(perm) != [0, 1, 2, 3]:
        raise TriangulationError(f"permutation {text!r} is not a bijection of {{0,1,2,3}}")
    return perm  # type: ignore[return-value]


def perm_str(p: Perm) -> str:
    return "".join(str(i) for i in p)


def perm_inverse(p: Perm) -> Perm:
    inv = [0, 0, 0, 0]
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)  # type: ignore[return-value]


def perm_sign(p: Perm) -> int:
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


ALL_PERMS: tuple[Perm, ...] = tuple(permutations(range(4)))  # type: ignore[assignment]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        groups: dict = {}
        for x in sorted(self.parent):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class TriangleCell:
    """A 2-cell of the 2-skeleton: one face, or a glued pair of faces.

    ``sides[i]`` is the edge orbit along the side opposite corner ``i`` of
    the first incidence ``(tet, face)``; ``corners`` are the tetrahedron
    vertices of that face in increasing order.
    """

    id: int
    tet: int
    face: int
    partner: Optional[tuple[int, int, Perm]]
    corners: tuple[int, int, int]

    @property
    def boundary(self) -> bool:
        return self.partner is None


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    vertex_links: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "vertex_links": list(self.vertex_links)}


class Triangulation:
    """An indexed triangulation.  Immutable after construction."""

    def __init__(self, tets: int, gluings, *, strict: bool = True):
        if not isinstance(tets, int) or isinstance(tets, bool) or tets < 1:
            raise TriangulationError("tetrahedron count must be a positive integer")
        if len(gluings) != tets:
            raise TriangulationError(f"expected {tets} gluing rows, got {len(gluings)}")
        self.tets = tets
        self.gluings: tuple[tuple[Gluing, ...], ...] = tuple(tuple(row) for row in gluings)
        self.problems: list[str] = []
        self._check_involution()
        self._compute_edges()
        self._compute_vertices()
        self._compute_triangles()
        self.orientation = self._orient()
        if strict:
            if self.problems:
                raise TriangulationError("; ".join(self.problems))
            if self.orientation is None:
                raise NonOrientableError("triangulation is not orientable")

    # construction -------------------------------------------------------

    def _check_involution(self) -> None:
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise TriangulationError(f"tetrahedron {t} must list four faces")
            for f, g in enumerate(row):
                if g is None:
                    continue
                u, p = g
                if not 0 <= u < self.tets:
                    raise TriangulationError(f"gluing of ({t},{f}) targets missing tetrahedron {u}")
                back = self.gluings[u][p[f]] if len(self.gluings[u]) == 4 else None
                if back is None or back[0] != t or tuple(back[1]) != perm_inverse(p):
                    self.problems.append(f"gluing of ({t},{f}) is not involutive")
                elif (u, p[f]) == (t, f):
                    self.problems.append(f"face ({t},{f}) is glued to itself")

    def _neighbours(self, t: int, f: int):
        g = self.gluings[t][f]
        return None if g is None else g

    def _compute_edges(self) -> None:
        # union-find over (tet, edge) carrying the orientation relative to the root
        items = [(t, e) for t in range(self.tets) for e in range(6)]
        uf = _UnionFind(items)
        links = []
        for t in range(self.tets):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                u, p = g
                for e, (a, b) in enumerate(EDGE_VERTICES):
                    if f in (a, b):
                        continue
                    pa, pb = p[a], p[b]
                    links.append(((t, e), (u, EDGE_INDEX[(pa, pb)]), pa > pb))
                    uf.union((t, e), (u, EDGE_INDEX[(pa, pb)]))
        classes = uf.classes()
        self.edge_of = {}
        for i, cls in enumerate(classes):
            for item in cls:
                self.edge_of[item] = i
        # orientation labels by BFS; a conflict is an edge identified with itself reversed
        adj: dict = {x: [] for x in items}
        for x, y, flip in links:
            adj[x].append((y, flip))
            adj[y].append((x, flip))
        self.edge_flip = {}
        self.inconsistent_edges = set()
        for cls in classes:
            root = cls[0]
            self.edge_flip[root] = False
            stack = [root]
            while stack:
                x = stack.pop()
                for y, flip in adj[x]:
                    want = self.edge_flip[x] ^ flip
                    if y not in self.edge_flip:
                        self.edge_flip[y] = want
                        stack.append(y)
                    elif self.edge_flip[y] != want:
                        self.inconsistent_edges.add(self.edge_of[x])
        self.edges = [self._edge_cycle(cls) for cls in classes]

    def _edge_cycle(self, cls):
        """Order the incidences of an edge orbit by walking around the edge."""
        members = set(cls)
        if len(cls) == 1:
            return list(cls)

        def step(t, a, b, via):
            # leave tetrahedron t through face `via` (which contains edge ab)
            g = self.gluings[t][via]
            if g is None:
                return None
            u, p = g
            ua, ub = p[a], p[b]
            entered = p[via]
            other = 6 - ua - ub - entered
            return u, ua, ub, other

        # find a boundary start if there is one
        start = None
        for t, e in cls:
            a, b = EDGE_VERTICES[e]
            c, d = (v for v in range(4) if v not in (a, b))
            if self.gluings[t][c] is None or self.gluings[t][d] is None:
                exit_face = d if self.gluings[t][c] is None else c
                start = (t, a, b, exit_face)
                break
        if start is None:
            t, e = cls[0]
            a, b = EDGE_VERTICES[e]
            c, d = (v for v in range(4) if v not in (a, b))
            start = (t, a, b, d)
        order = []
        seen = set()
        t, a, b, via = start
        while (t, EDGE_INDEX[(a, b)]) not in seen:
            seen.add((t, EDGE_INDEX[(a, b)]))
            order.append((t, EDGE_INDEX[(a, b)]))
            nxt = step(t, a, b, via)
            if nxt is None:
                break
            t, a, b, via = nxt
        # degenerate identifications can revisit an incidence early; fall back to sorted
        if set(order) != members:
            return sorted(cls)
        return order

    def _compute_vertices(self) -> None:
        items = [(t, v) for t in range(self.tets) for v in range(4)]
        uf = _UnionFind(items)
        for t in range(self.tets):
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                u, p = g
                for v in FACE_VERTICES[f]:
                    uf.union((t, v), (u, p[v]))
        self.vertices = uf.classes()
        self.vertex_of = {}
        for i, cls in enumerate(self.vertices):
            for item in cls:
                self.vertex_of[item] = i

    def _compute_triangles(self) -> None:
        self.triangles: list[TriangleCell] = []
        self.triangle_of: dict = {}
        for t in range(self.tets):
            for f in range(4):
                if (t, f) in self.triangle_of:
                    continue
                g = self.gluings[t][f]
                partner = None
                if g is not None:
                    u, p = g
                    partner = (u, p[f], p)
                cell = TriangleCell(len(self.triangles), t, f, partner, FACE_VERTICES[f])
                self.triangles.append(cell)
                self.triangle_of[(t, f)] = cell.id
                if partner is not None:
                    self.triangle_of[(partner[0], partner[1])] = cell.id

    def _orient(self):
        sign = [0] * self.tets
        for start in range(self.tets):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for f in range(4):
                    g = self.gluings[t][f]
                    if g is None:
                        continue
                    u, p = g
                    want = -sign[t] * perm_sign(p)
                    if sign[u] == 0:
                        sign[u] = want
                        stack.append(u)
                    elif sign[u] != want:
                        return None
        return tuple(sign)

    # queries --------------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def is_closed(self) -> bool:
        return all(g is not None for row in self.gluings for g in row)

    def interior_triangles(self) -> list[TriangleCell]:
        return [c for c in self.triangles if not c.boundary]

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles - self.tets

    def edge_degree(self, e: int) -> int:
        return len(self.edges[e])

    def boundary_edges(self) -> set[int]:
        out = set()
        for cell in self.triangles:
            if cell.boundary:
                for a, b in _face_edges(cell.face):
                    out.add(self.edge_of[(cell.tet, EDGE_INDEX[(a, b)])])
        return out

    def to_dict(self) -> dict:
        rows = []
        for row in self.gluings:
            rows.append([None if g is None else [g[0], perm_str(g[1])] for g in row])
        return {"tets": self.tets, "gluings": rows}

    def to_json(self) -> str:
        return _dump_compact_rows(self.to_dict())

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(self.to_json())

    def __repr__(self) -> str:
        return f"Triangulation(tets={self.tets}, edges={self.n_edges}, vertices={self.n_vertices})"


def _face_edges(f: int):
    a, b, c = FACE_VERTICES[f]
    return ((a, b), (a, c), (b, c))


def _dump_compact_rows(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse_triangulation(text: str, *, strict: bool = True) -> Triangulation:
    """Parse the JSON gluing format.

    With ``strict=False`` involution and orientability problems are recorded
    on the result instead of raised, so that :func:`validate` can report them.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise TriangulationError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"tets", "gluings"}:
        raise TriangulationError("malformed document: expected keys 'tets' and 'gluings'")
    tets, rows = doc["tets"], doc["gluings"]
    if not isinstance(tets, int) or isinstance(tets, bool) or not isinstance(rows, list):
        raise TriangulationError("malformed document: bad 'tets' or 'gluings'")
    if len(rows) != tets:
        raise TriangulationError(f"malformed document: {tets} tetrahedra but {len(rows)} rows")
    gluings = []
    for t, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise TriangulationError(f"malformed document: row {t} must have four entries")
        parsed = []
        for g in row:
            if g is None:
                parsed.append(None)
                continue
            if not isinstance(g, list) or len(g) != 2 or not isinstance(g[0], int):
                raise TriangulationError(f"malformed document: bad gluing {g!r}")
            parsed.append((g[0], parse_perm(g[1])))
        gluings.append(parsed)
    return Triangulation(tets, gluings, strict=strict)


def validate(tri: Triangulation) -> ValidationReport:
    report = ValidationReport()
    report.checks["gluing involution"] = not tri.problems
    report.checks["edge orbits consistent"] = not tri.inconsistent_edges
    report.checks["orientable"] = tri.orientation is not None
    links = [_vertex_link_type(tri, v) for v in range(tri.n_vertices)]
    report.vertex_links = links
    report.checks["vertex links are spheres or disks"] = all(k in ("sphere", "disk") for k in links)
    return report


def _vertex_link_type(tri: Triangulation, v: int) -> str:
    """Classify the link of a vertex orbit from its corner triangles."""
    corners = tri.vertices[v]
    # link vertices: edge-orbit ends at v; link edges: face corners at v
    ends = set()
    arcs = set()
    boundary_arcs = 0
    for t, x in corners:
        for e, (a, b) in enumerate(EDGE_VERTICES):
            if x in (a, b):
                ends.add(_edge_end(tri, t, e, x))
        for f in range(4):
            if f == x:
                continue
            cell = tri.triangle_of[(t, f)]
            arcs.add((cell, _corner_key(tri, t, f, x)))
            if tri.gluings[t][f] is None:
                boundary_arcs += 1
    chi = len(ends) - len(arcs) + len(corners)
    uf = _UnionFind(corners)
    for t, x in corners:
        for f in range(4):
            g = tri.gluings[t][f]
            if f != x and g is not None:
                uf.union((t, x), (g[0], g[1][x]))
    connected = len(uf.classes()) == 1
    if not connected:
        return "disconnected"
    if boundary_arcs == 0:
        return "sphere" if chi == 2 else f"closed chi={chi}"
    return "disk" if chi == 1 else f"bounded chi={chi}"


def _edge_end(tri: Triangulation, t: int, e: int, x: int):
    """Identify the end of edge orbit ``e`` of tet ``t`` at vertex ``x``."""
    orbit = tri.edge_of[(t, e)]
    a, b = EDGE_VERTICES[e]
    at_start = (x == a) != tri.edge_flip[(t, e)]
    if orbit in tri.inconsistent_edges:
        return (orbit, None)
    return (orbit, at_start)


def _corner_key(tri: Triangulation, t: int, f: int, x: int):
    cell = tri.triangles[tri.triangle_of[(t, f)]]
    if (cell.tet, cell.face) == (t, f):
        return x
    # seen from the partner side: map the corner back through the gluing
    return perm_inverse(cell.partner[2])[x]


def vertex_link_surface(tri: Triangulation, vertex: int):
    """The normal surface with one triangle at every corner of a vertex orbit."""
    from .surfaces import NormalSurface

    if not isinstance(vertex, int) or not 0 <= vertex < tri.n_vertices:
        raise TriangulationError(f"unknown vertex orbit {vertex!r}")
    coords = [[0] * 7 for _ in range(tri.tets)]
    for t, x in tri.vertices[vertex]:
        coords[t][x] = 1
    return NormalSurface(tri, coords)


def double_tetrahedron() -> Triangulation:
    """Two tetrahedra glued along all four faces by the identity (a 3-sphere)."""
    ident = (0, 1, 2, 3)
    return Triangulation(2, [[(1, ident)] * 4, [(0, ident)] * 4])


def single_tetrahedron() -> Triangulation:
    return Triangulation(1, [[None] * 4])


def first_homology(tri: Triangulation) -> tuple[int, tuple[int, ...]]:
    """Integral H1 as (free rank, torsion coefficients > 1) from the simplicial chain complex."""
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    n_e, n_v = tri.n_edges, tri.n_vertices
    d1 = [[0] * n_e for _ in range(n_v)]
    for orbit, members in enumerate(tri.edges):
        t, e = members[0]
        a, b = EDGE_VERTICES[e]
        if tri.edge_flip[(t, e)]:
            a, b = b, a
        d1[tri.vertex_of[(t, b)]][orbit] += 1
        d1[tri.vertex_of[(t, a)]][orbit] -= 1
    d2 = []
    for cell in tri.triangles:
        col = [0] * n_e
        c0, c1, c2 = cell.corners
        for (x, y), sign in (((c0, c1), 1), ((c1, c2), 1), ((c0, c2), -1)):
            e = EDGE_INDEX[(x, y)]
            col[tri.edge_of[(cell.tet, e)]] += -sign if tri.edge_flip[(cell.tet, e)] else sign
        d2.append(col)
    rank_d1 = sympy.Matrix(d1).rank() if n_e else 0
    kernel = n_e - rank_d1
    if not d2:
        return kernel, ()
    snf = smith_normal_form(sympy.Matrix(d2).T, domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    return kernel - len(diag), tuple(sorted(d for d in diag if d > 1))
