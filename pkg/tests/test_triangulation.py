import pytest

from artifact.triangulation import (
    Triangulation, TriangulationError, first_homology, parse_perm, parse_triangulation, perm_inverse,
    perm_sign, single_tetrahedron, validate,
)


def test_perm_helpers():
    p = parse_perm("1230")
    assert p == (1, 2, 3, 0)
    assert perm_inverse(p) == (3, 0, 1, 2)
    assert perm_sign(p) == -1
    assert perm_sign((1, 0, 3, 2)) == 1


def test_double_counts(double):
    assert (double.n_vertices, double.n_edges) == (4, 6)
    assert double.euler_characteristic() == 0
    assert validate(double).ok


@pytest.mark.parametrize("name,verts,edges", [("two_vertex_s3", 2, 3), ("one_vertex_s3", 1, 2)])
def test_one_tetrahedron_s3(request, name, verts, edges):
    tri = request.getfixturevalue(name)
    assert (tri.n_vertices, tri.n_edges) == (verts, edges)
    assert validate(tri).ok
    assert first_homology(tri) == (0, ())


def test_single_tetrahedron_has_boundary():
    tri = single_tetrahedron()
    assert tri.euler_characteristic() == 1
    assert first_homology(tri) == (0, ())


def test_homology_census_one_tetrahedron():
    # closed orientable one-tetrahedron triangulations: S³ twice, L(4,1), L(5,2)
    from itertools import permutations
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    found = set()
    for pr in pairings:
        for p1 in permutations(range(4)):
            for p2 in permutations(range(4)):
                rows = [None] * 4
                if any(p[f] != g for (f, g), p in zip(pr, (p1, p2))):
                    continue
                for (f, g), p in zip(pr, (p1, p2)):
                    rows[f], rows[g] = (0, p), (0, perm_inverse(p))
                try:
                    tri = Triangulation(1, [rows])
                except TriangulationError:
                    continue
                if validate(tri).ok:
                    found.add((first_homology(tri), tri.n_vertices, tri.n_edges))
    assert {h for h, _, _ in found} == {(0, ()), (0, (4,)), (0, (5,))}
    assert {(v, e) for h, v, e in found if h == (0, ())} == {(2, 3), (1, 2)}


def test_parse_roundtrip(double):
    again = parse_triangulation(double.to_json())
    assert again == double


def test_edge_degrees_sum_to_six_per_tet(double, one_vertex_s3):
    for tri, tets in ((double, 2), (one_vertex_s3, 1)):
        assert sum(tri.edge_degree(e) for e in range(tri.n_edges)) == 6 * tets


def test_parse_rejects_garbage():
    with pytest.raises(TriangulationError):
        parse_triangulation("{not json")
