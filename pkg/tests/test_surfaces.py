from collections import Counter

import pytest

from artifact.surfaces import (
    NormalSurface, bent_representatives, complexity, enumerate_surfaces, matching_system, satisfies_matching,
)
from artifact.triangulation import vertex_link_surface


@pytest.fixture(scope="module")
def by_index(double):
    return {i: enumerate_surfaces(double, i, 1, 3) for i in (0, 1, 2)}


def test_matching_system_size(double):
    # four interior triangles, three normal arc types each
    assert len(matching_system(double)) == 12


def test_vertex_links(double):
    for v in range(4):
        s = vertex_link_surface(double, v)
        assert (s.chi, s.genus, s.complexity) == (2, 0, 2)
        assert sum(s.weights) == 3
        assert satisfies_matching(s)


def test_enumeration_counts(by_index):
    assert [len(by_index[i]) for i in (0, 1, 2)] == [148, 770, 2336]


def test_enumeration_genus_profile(by_index):
    assert set(Counter(s.genus for s in by_index[0])) == {0}
    assert set(Counter(s.genus for s in by_index[1])) == {0}
    # two tubes joining the same pair of spheres give tori
    assert Counter(s.genus for s in by_index[2]) == Counter({0: 1951, 1: 385})


def test_index_matches_exceptional_pieces(by_index):
    for i, found in by_index.items():
        for s in found:
            assert s.index == i
            assert sum(x.index for x in s.exceptional) == i


def test_every_surface_satisfies_matching(by_index):
    assert all(satisfies_matching(s) for found in by_index.values() for s in found)


def test_other_triangulations(two_vertex_s3, one_vertex_s3):
    assert [len(enumerate_surfaces(two_vertex_s3, i, 1, 3)) for i in (0, 1, 2)] == [8, 17, 18]
    assert [len(enumerate_surfaces(one_vertex_s3, i, 1, 3)) for i in (0, 1, 2)] == [3, 6, 0]


def test_dict_roundtrip(double, by_index):
    for s in by_index[1][:20]:
        assert NormalSurface.from_dict(double, s.to_dict()) == s


def test_representatives_keep_complexity(by_index):
    for s in by_index[1][:40]:
        for b in bent_representatives(s):
            assert b.complexity() == s.complexity


def test_index0_surface_has_one_representative(by_index):
    for s in by_index[0][:20]:
        assert bent_representatives(s) == [s.bent()]
        assert complexity(s) == s.complexity
