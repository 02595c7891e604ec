import json

import pytest

from rootgame.game import GameError, initial_position, split
from rootgame.geometry import WeightDatum, is_transverse, transverse_replacing_first, weight_datum
from rootgame.grassmann import GrassmannProblem, big_region_id, build_game


def _names(weights):
    return [f"{i},{j}" for i, j in sorted(weights)]


def test_example_datum():
    prob = GrassmannProblem(("1010101",), "1001011", "0100111", 3)
    datum = weight_datum(build_game(prob), big_region_id(prob))
    assert len(datum.weightsV) == 19
    assert _names(datum.weightsU[0]) == ["1,4", "2,4", "2,5", "3,4", "3,5", "3,6"]
    assert len(datum.weightsU[1]) == 13
    assert _names(datum.weightsU_not2) == ["1,8", "1,9", "2,8", "2,9", "3,9", "3,10"]
    assert datum.weightsU[2] == frozenset()
    assert transverse_replacing_first(datum)
    assert not is_transverse(datum)
    json.loads(datum.dumps())


def test_solved_and_unsolved_regions():
    pos = initial_position([(2, 1, 3), (2, 3, 1), (1, 2, 3)])
    assert is_transverse(weight_datum(pos, (1, 2)))
    empty = initial_position([(2, 1, 3), (1, 2, 3), (1, 2, 3)])
    assert not is_transverse(weight_datum(empty, (1, 2)))


def test_empty_datum_and_unknown_region():
    datum = WeightDatum(frozenset(), (frozenset(),) * 3)
    assert is_transverse(datum)
    pos = initial_position([(2, 1, 3)] * 3)
    with pytest.raises(GameError):
        weight_datum(pos, (2, 3))


def test_invariant_under_other_labels():
    perms = [(2, 1, 3), (2, 3, 1), (1, 2, 3), (3, 2, 1)]
    pos = initial_position(perms)
    other = pos.relabel({4: 5}, 5)
    assert weight_datum(pos, (1, 2)) == weight_datum(other, (1, 2))


def test_bad_datum():
    with pytest.raises(ValueError):
        WeightDatum(frozenset(), (frozenset({(1, 2)}), frozenset(), frozenset()))
    with pytest.raises(ValueError):
        weight_datum(initial_position([(2, 1)]), (1, 2), (1, 2))


def test_disjointness_tracks_overlaps():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (3, 2, 1)])
    pos = split(pos, (1, 2), {(1, 3)})
    d = weight_datum(pos, (1, 2))
    overlaps = any(pos.count_at(sq) > 1 for sq in pos.region((1, 2)))
    u1, u2, u3 = d.weightsU
    assert bool(u1 & u2 or u1 & u3 or u2 & u3) == overlaps
