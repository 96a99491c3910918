"""Small simplicial-complex helpers shared by the piece oracle and the height complex.

Fundamental groups are decided by a bounded procedure: build the edge-path
presentation relative to a spanning forest, simplify it with Tietze moves,
and fall back to the abelianisation.  The answer is ``"trivial"``,
``"nontrivial"`` or ``"unknown"``; nothing is guessed.
"""

from __future__ import annotations


import networkx as nx
import sympy


def flag_triangles(graph: nx.Graph) -> list[tuple]:
    """All 3-cliques of ``graph``, each as a sorted tuple."""
    out = []
    for u, v in graph.edges():
        for w in set(graph[u]) & set(graph[v]):
            tri = tuple(sorted((u, v, w), key=repr))
            out.append(tri)
    return sorted(set(out), key=repr)


def components(graph: nx.Graph) -> list[set]:
    return sorted((set(c) for c in nx.connected_components(graph)), key=lambda c: sorted(map(repr, c)))


def pi1_status(graph: nx.Graph, triangles=None, *, max_rounds: int = 10_000) -> str:
    """Decide whether a connected 2-complex has trivial fundamental group.

    ``graph`` is the 1-skeleton; ``triangles`` lists the 2-cells as vertex
    triples (defaults to the flag completion).
    """
    if graph.number_of_nodes() == 0:
        return "trivial"
    if not nx.is_connected(graph):
        raise ValueError("pi1_status expects a connected complex")
    if triangles is None:
        triangles = flag_triangles(graph)
    tree = nx.minimum_spanning_tree(graph)
    key = {}
    gens = []
    for u, v in sorted(graph.edges(), key=repr):
        if tree.has_edge(u, v):
            continue
        key[(u, v)] = len(gens) + 1
        key[(v, u)] = -(len(gens) + 1)
        gens.append((u, v))
    if not gens:
        return "trivial"

    def letter(u, v):
        return key.get((u, v), 0)

    relations = []
    for a, b, c in triangles:
        word = [x for x in (letter(a, b), letter(b, c), letter(c, a)) if x]
        word = _reduce(word)
        if word:
            relations.append(word)
    alive = set(range(1, len(gens) + 1))
    for _ in range(max_rounds):
        relations = [r for r in (_cyclic_reduce(r) for r in relations) if r]
        progress = False
        for rel in relations:
            if len(rel) == 1:
                _substitute(relations, abs(rel[0]), [])
                alive.discard(abs(rel[0]))
                progress = True
                break
            if len(rel) == 2 and abs(rel[0]) != abs(rel[1]):
                # x y = 1  gives  y = x^-1 ; eliminate y
                x, y = rel
                repl = [-x] if y > 0 else [x]
                _substitute(relations, abs(y), repl)
                alive.discard(abs(y))
                progress = True
                break
        if not progress:
            break
    if not alive:
        return "trivial"
    # abelianisation: any free rank or torsion certifies a non-trivial group
    gen_list = sorted(alive)
    idx = {g: i for i, g in enumerate(gen_list)}
    rows = []
    for rel in relations:
        row = [0] * len(gen_list)
        for x in rel:
            row[idx[abs(x)]] += 1 if x > 0 else -1
        rows.append(row)
    if not rows:
        return "nontrivial"
    mat = sympy.Matrix(rows)
    if mat.rank() < len(gen_list):
        return "nontrivial"
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(mat, domain=sympy.ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    if any(d not in (0, 1) for d in diag):
        return "nontrivial"
    return "unknown"


def _reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(word: list[int]) -> list[int]:
    word = _reduce(word)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def _substitute(relations: list[list[int]], gen: int, repl: list[int]) -> None:
    inv = [-x for x in reversed(repl)]
    for i, rel in enumerate(relations):
        new = []
        for x in rel:
            if x == gen:
                new.extend(repl)
            elif x == -gen:
                new.extend(inv)
            else:
                new.append(x)
        relations[i] = _reduce(new)


def clique_complex_index(graph: nx.Graph) -> str:
    """Index of a vertex whose descending link is the flag complex of ``graph``.

    Returns ``"0"``, ``"1"``, ``"2"``, ``">=3"`` or ``"unknown"``.
    """
    if graph.number_of_nodes() == 0:
        return "0"
    if not nx.is_connected(graph):
        return "1"
    status = pi1_status(graph)
    if status == "nontrivial":
        return "2"
    if status == "trivial":
        return ">=3"
    return "unknown"

