from collections import Counter
from fractions import Fraction

import pytest

from artifact import derived
from artifact.derived import (
    BuildBudgetExceeded, DerivedError, V_MINUS, V_PLUS, build_d2, enumerate_splitting_paths, export, load_json,
    path_genus, query_incompressible, query_isotopic_incompressible, query_stabilized, replay_edge,
    stable_genus_bound,
)


def test_small_build_shape(small_d2):
    D = small_d2
    assert D.complete
    assert Counter(v.index for v in D.vertices.values()) == Counter({1: 61, 0: 45, 2: 20})
    assert (len(D.edges), len(D.faces)) == (330, 180)
    assert {V_MINUS, V_PLUS} <= set(D.vertices)


def test_faces_have_one_vertex_per_index(small_d2):
    for f in small_d2.faces.values():
        assert sorted(small_d2.vertices[v].index for v in f.vertices) == [0, 1, 2]


def test_edges_drop_index(small_d2):
    for e in small_d2.edges.values():
        assert small_d2.vertices[e.upper].index > small_d2.vertices[e.lower].index
        assert e.side in ("positive", "negative")
        assert (e.tail, e.head) == ((e.upper, e.lower) if e.side == "positive" else (e.lower, e.upper))


def test_witnesses_replay(small_d2):
    for e in small_d2.edges.values():
        ok, comps = replay_edge(small_d2, e)
        assert ok
        assert comps == sorted(comps, reverse=True)


def test_json_roundtrip_is_byte_identical(small_d2):
    text = export(small_d2, "json")
    assert export(load_json(text), "json") == text


def test_dot_export(small_d2):
    dot = export(small_d2, "dot")
    assert dot.startswith("digraph D2 {") and dot.rstrip().endswith("}")


def test_unknown_format(small_d2):
    with pytest.raises(DerivedError):
        export(small_d2, "yaml")


def test_height_complex_view(small_d2):
    H = small_d2.height_complex()
    assert len(H.complexity) == len(small_d2.vertices)
    assert len(H.edges) == len(small_d2.edges)


def test_splitting_paths_on_double(small_d2):
    paths = enumerate_splitting_paths(small_d2, 0)
    assert len(paths) == 37
    for p in paths:
        assert small_d2.edges[p[0]].tail == V_MINUS
        assert small_d2.edges[p[-1]].head == V_PLUS
        assert path_genus(small_d2, p) == 0


def test_spheres_are_incompressible(small_d2):
    for v in small_d2.vertex_ids(0):
        assert query_incompressible(small_d2, v).status == "Incompressible"


def test_query_rejects_wrong_index(small_d2):
    v = small_d2.vertex_ids(1)[0]
    with pytest.raises(DerivedError):
        query_incompressible(small_d2, v)
    with pytest.raises(DerivedError):
        query_incompressible(small_d2, "nope")


def test_isotopy_is_reflexive(small_d2):
    v = small_d2.vertex_ids(0)[0]
    assert query_isotopic_incompressible(small_d2, v, v).status == "Isotopic"


def test_budget_exhaustion_keeps_partial(double):
    with pytest.raises(BuildBudgetExceeded) as info:
        build_d2(double, 0, 2, {"slice": 5})
    D = info.value.partial
    assert not D.complete
    assert D.provenance["complete"] is False
    assert "BudgetExhausted" in D.provenance["slices"].values()
    D2 = build_d2(double, 0, 2, {"slice": 5}, allow_partial=True)
    assert export(D2, "json") == export(D, "json")


def test_negative_bounds_rejected(double):
    with pytest.raises(DerivedError):
        build_d2(double, -1, 2)


def test_threads_do_not_change_result(double, small_d2):
    assert export(build_d2(double, 0, 2, threads=3), "json") == export(small_d2, "json")


@pytest.mark.slow
def test_tori_in_s3_compress(s3_d2):
    genus_one = [v for v in s3_d2.vertex_ids(0) if s3_d2.vertices[v].genus == 1]
    assert len(genus_one) == 2
    for v in genus_one:
        verdict = query_incompressible(s3_d2, v)
        assert verdict.status == "Compressible"
        assert verdict.witness


@pytest.mark.slow
def test_s3_paths(s3_d2):
    paths = enumerate_splitting_paths(s3_d2, 1)
    assert Counter(path_genus(s3_d2, p) for p in paths) == Counter({Fraction(1): 4, Fraction(0): 2})
    for p in paths:
        status = query_stabilized(s3_d2, p).status
        assert status == ("Stabilized" if path_genus(s3_d2, p) == 1 else "Irreducible")


@pytest.mark.slow
def test_stable_genus_bound_of_genus_one_paths(s3_d2):
    g1 = [p for p in enumerate_splitting_paths(s3_d2, 1) if path_genus(s3_d2, p) == 1]
    verdict = stable_genus_bound(s3_d2, g1[0], g1[1], 2, 10_000)
    assert verdict.status == "Bound"
    assert Fraction(verdict.detail["h"]) == 1
