import random

import pytest

from artifact.bent import (
    BentError, BentSurface, PinchMove, add_skewered_sphere, apply_pinch, random_bent_surface,
    remove_skewered_spheres, replay, search_descending,
)
from artifact.surfaces import bent_representatives, enumerate_surfaces


def _random_surfaces(tri, seed, count, cap=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        b = random_bent_surface(tri, [rng.randrange(cap) for _ in range(tri.n_edges)], rng)
        if b is not None:
            out.append(b)
    return out


def test_random_surfaces_are_valid(double):
    for b in _random_surfaces(double, 1, 30):
        b.check()


def test_pinch_laws_on_two_vertex_s3(two_vertex_s3):
    seen = set()
    for b in _random_surfaces(two_vertex_s3, 2, 60):
        for mv in b.pinch_sites():
            d = apply_pinch(b, mv).complexity() - b.complexity()
            seen.add(mv.classification)
            if mv.classification == "Compression":
                assert d < 0
            elif mv.classification == "Isotopy":
                assert d == 0
    assert seen == {"Compression", "Isotopy", "Tubing"}


def test_double_has_no_isotopy_pinches(double):
    # both views of every triangle are mirror images
    for b in _random_surfaces(double, 3, 40):
        assert all(mv.classification != "Isotopy" for mv in b.pinch_sites())


def test_skewered_sphere_roundtrip(double):
    for b in _random_surfaces(double, 4, 20):
        for edge in range(double.n_edges):
            fat = add_skewered_sphere(b, edge, 0)
            fat.check()
            assert fat.weights[edge] == b.weights[edge] + 2
            assert fat.complexity() == b.complexity()
            assert fat.raw_complexity() == b.raw_complexity() + 1
            thin = remove_skewered_spheres(fat)
            assert sum(fat.weights) - sum(thin.weights) >= 2


def test_bad_insertion_position(double):
    b = _random_surfaces(double, 5, 1)[0]
    with pytest.raises(BentError):
        add_skewered_sphere(b, 0, b.weights[0] + 1)


def test_key_and_dict_roundtrip(double):
    for b in _random_surfaces(double, 6, 10):
        again = BentSurface.from_dict(double, b.to_dict())
        assert again == b and again.key() == b.key()
        for mv in b.pinch_sites()[:3]:
            assert PinchMove.from_dict(mv.to_dict()) == mv


def test_descending_search_replays(double):
    s = enumerate_surfaces(double, 1, 0, 2)[0]
    start = bent_representatives(s)[0]
    res = search_descending(double, start, set(), budget=2000, stop_when_all_found=False)
    assert res.status in ("Exhausted", "BudgetExhausted")
    for key, (c, parent, move) in list(res.explored.items())[:50]:
        assert c <= start.complexity()


def test_replay_is_monotone(double):
    b = _random_surfaces(double, 8, 1)[0]
    moves, cur = [], b
    for _ in range(4):
        comps = [mv for mv in cur.pinch_sites() if mv.classification == "Compression"]
        if not comps:
            break
        moves.append(comps[0])
        cur = apply_pinch(cur, comps[0])
    chain = replay(b, moves)
    cs = [x.complexity() for x in chain]
    assert cs == sorted(cs, reverse=True)
    assert chain[-1] == cur
