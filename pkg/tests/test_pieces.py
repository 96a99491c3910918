from collections import Counter

import pytest

from artifact.pieces import (
    LoopError, canonical_weights, chords_cross, classify_piece, corner_counts, enumerate_straight_loops,
    loop_from_weights, loops_disjoint, parse_arc_sequence, piece_index_oracle, same_cyclic_sequence,
)


@pytest.fixture(scope="module")
def loops():
    return enumerate_straight_loops(24)


def test_class_table(loops):
    table = Counter((classify_piece(p).kind, classify_piece(p).index) for p in loops)
    assert table == Counter({("Triangle", 0): 4, ("Quad", 0): 3, ("Octagon", 1): 3,
                             ("Dodecagon", 2): 3, ("HighIndex", ">=3"): 12})


def test_no_low_index_beyond_twelve_corners(loops):
    assert all(classify_piece(p).index == ">=3" for p in loops if p.n > 12)


def test_oracle_matches_closed_form(loops):
    for p in loops:
        assert piece_index_oracle(p).index == classify_piece(p).index


def test_dodecagon_from_weights():
    pattern = loop_from_weights((3, 1, 2, 2, 1, 3))
    assert pattern.n == 12
    assert classify_piece(pattern).kind == "Dodecagon"


def test_octagon_from_weights():
    pattern = loop_from_weights((2, 1, 1, 1, 1, 2))
    assert pattern.n == 8
    assert classify_piece(pattern).index == 1


def test_odd_face_rejected():
    with pytest.raises(LoopError):
        loop_from_weights((1, 1, 1, 1, 1, 1))


def test_triangle_inequality_example_rejected():
    with pytest.raises(LoopError):
        corner_counts((3, 1, 1, 2, 2, 3))


def test_canonical_weights_is_stabiliser_invariant(loops):
    from artifact.pieces import _act, _stabiliser
    for p in loops:
        c = canonical_weights(p.weights)
        assert canonical_weights(c) == c
        for g in _stabiliser(p.weights):
            assert canonical_weights(_act(g, p.weights)) == c


def test_arc_sequence_rotation():
    a = parse_arc_sequence("0:1,1:2,2:0")
    assert same_cyclic_sequence(a, a[1:] + a[:1])


def test_chords_cross_symmetric():
    assert chords_cross((0, 2), (1, 3)) and chords_cross((1, 3), (0, 2))
    assert not chords_cross((0, 1), (2, 3))


def test_parallel_quads_disjoint():
    assert loops_disjoint((0, 1, 1, 1, 1, 0), (0, 1, 1, 1, 1, 0))
