import json
import random

import pytest

from artifact.heightcx import (
    Edge, HeightComplex, HeightComplexError, SearchBudgetExceeded, apply_slide, build_path_complex, cell_split,
    check_axioms, compare_complexity, heegaard_fan, horizontal_class, is_heegaard, load_height_complex,
    oriented_slides, path_genus, random_height_complex, random_walk, thin_oriented, thin_unoriented,
    vertex_index,
)

from strips import random_strip


@pytest.fixture
def two_humps():
    # two triangles side by side: L -> T1 -> M -> T2 -> R with shortcuts c and f
    V = {"L": 0, "R": 0, "M": 1, "T1": 3, "T2": 2}
    E = [Edge("a", "L", "T1"), Edge("b", "T1", "M"), Edge("c", "L", "M"),
         Edge("d", "M", "T2"), Edge("e", "T2", "R"), Edge("f", "M", "R")]
    C = [("q1", "T1", ("a", "b"), (None, "c")), ("q2", "T2", ("d", "e"), (None, "f"))]
    return HeightComplex(V, E, C, genus={"L": 0, "R": 0, "M": 1, "T1": 1, "T2": 2})


def test_triangle_splits(two_humps):
    s = cell_split(two_humps, two_humps.cells["q1"])
    assert (s.source, s.sink, s.p, s.q, s.vertical) == ("L", "M", ("c",), ("a", "b"), True)


def test_oriented_thinning(two_humps):
    p = two_humps.path("L", ["a", "b", "d", "e"])
    assert p.complexity() == (3, 2)
    thin, log = thin_oriented(two_humps, p)
    assert thin.edge_ids == ("c", "f")
    assert [s.cell for s in log] == ["q1", "q2"]


def test_path_complex_of_two_humps(two_humps):
    P = build_path_complex(two_humps, "L", "R")
    assert P.complexity == {"P0": (3, 2), "P1": (3,), "P2": (2,), "P3": (1,)}
    assert len(P.edges) == 4 and [c.kind for c in P.cells.values()] == ["Diamond"]
    report = check_axioms(P, path_axioms=False)
    assert report.ok("morse") and report.ok("net")


def test_morse_violation_reported(two_humps):
    report = check_axioms(two_humps, translation=False)
    assert report.findings["morse"] == ["cell q2: lower edge f is not below R"]


def test_path_genus_formula(two_humps):
    p = two_humps.path("L", ["a", "b", "d", "e"])
    # jumps 1 + 0 + 1 + 2, endpoints 0 and 0
    assert path_genus(p) == 2


def test_compare_complexity(two_humps):
    assert compare_complexity(two_humps, (3, 2), (3,)) == 1
    assert compare_complexity(two_humps, (2,), (3,)) == -1
    assert compare_complexity(two_humps, (3,), (3,)) == 0


def test_json_roundtrip(two_humps):
    again = load_height_complex(json.dumps(two_humps.to_dict()))
    assert again.to_dict() == two_humps.to_dict()


def test_unknown_vertex_rejected():
    with pytest.raises(HeightComplexError):
        HeightComplex({"a": 0}, [Edge("x", "a", "b")])


def test_bigon_split_runs_from_bottom():
    H = HeightComplex({"a": 1, "t": 2}, [Edge("e0", "a", "t"), Edge("e1", "t", "a")],
                      [("c0", "t", ("e0", "e1"), (None, None))], genus={"a": 3, "t": 4})
    s = cell_split(H, H.cells["c0"])
    assert (s.source, s.p, s.q) == ("a", ("e0", "e1"), ())
    (slide,) = oriented_slides(H, ("e0", "e1"))
    assert apply_slide(("e0", "e1"), slide) == ()


def test_thin_unoriented_maxima_have_index_one():
    rng = random.Random(1)
    for _ in range(100):
        H = random_height_complex(rng, n_elements=rng.randint(2, 5))
        assert check_axioms(H, path_axioms=False).ok()
        p = random_walk(H, rng, rng.randint(2, 10))
        q = thin_unoriented(H, p)
        assert compare_complexity(H, q.complexity(), p.complexity()) in (-1, 0)
        assert all(vertex_index(H, q.vertices[i]) == 1 for i in q.maxima())


def test_heegaard_fan_keeps_genus():
    rng = random.Random(3)
    checked = 0
    for _ in range(100):
        H = random_height_complex(rng, n_elements=rng.randint(2, 5), translation=True)
        v = rng.choice(sorted(H.complexity))
        ids = []
        for _ in range(rng.randint(1, 6)):
            out = [e for e in sorted(H.edges) if H.edges[e].tail == v]
            if not out:
                break
            e = rng.choice(out)
            ids.append(e)
            v = H.edges[e].head
        if not ids:
            continue
        p = H.oriented_path(ids)
        h, fan = heegaard_fan(H, p)
        assert h.genus() == p.genus()
        assert is_heegaard(h) or not h.minima()
        checked += 1
    assert checked > 50


def test_strip_slide_laws():
    rng = random.Random(5)
    for _ in range(100):
        H, start, edges = random_strip(rng, rng.randint(1, 4))
        before = H.path(start, edges).genus()
        for s in oriented_slides(H, edges):
            after = H.path(start, apply_slide(edges, s)).genus()
            c = H.cells[s.cell]
            if c.kind == "Bigon" and s.kind == "vertical":
                jumps = {abs(H.vertex_genus(H.edges[e].tail) - H.vertex_genus(H.edges[e].head)) for e in c.upper}
                assert abs(after - before) == (1 if jumps == {1} else 0)
            else:
                assert after == before


def test_horizontal_class_budget():
    # diamond oriented from its top to its bottom: both sides are parallel paths
    V = {"t": 2, "x": 1, "y": 1, "b": 0}
    E = [Edge("e1", "t", "x"), Edge("e2", "t", "y"), Edge("f1", "x", "b"), Edge("f2", "y", "b")]
    H = HeightComplex(V, E, [("d", "t", ("e1", "e2"), ("f1", "f2"))])
    assert set(horizontal_class(H, ("e1", "f1"))) == {("e1", "f1"), ("e2", "f2")}
    with pytest.raises(SearchBudgetExceeded):
        horizontal_class(H, ("e1", "f1"), budget=1)
