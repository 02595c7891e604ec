import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootgame.game import (GameError, GamePosition, Move, Split, WinMode, all_splits,
                           apply_action, apply_move, board_squares, dominated_by,
                           format_permutation, ideal_traces, initial_position, is_ideal,
                           is_ideal_trace, is_won, isolate_square, legal_moves,
                           maximal_split_actions, move_displacements, parse_permutation,
                           perm_length, split, splittable_subsets, up_closure)


def test_initial_position_tokens_are_inversions():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (3, 2, 1)])
    assert pos.labels_at((1, 2)) == {1, 3}
    assert pos.labels_at((1, 3)) == {3}
    assert pos.labels_at((2, 3)) == {2, 3}
    assert pos.token_count() == sum(perm_length(p) for p in [(2, 1, 3), (1, 3, 2), (3, 2, 1)])
    assert len(pos.regions) == 1


def test_initial_position_rejects_bad_input():
    with pytest.raises(GameError):
        initial_position([(1, 1, 2)])
    with pytest.raises(GameError):
        initial_position([(1, 2, 3), (2, 1)])
    with pytest.raises(GameError):
        initial_position([])


def test_parse_and_format_permutations():
    assert parse_permutation("3426175") == (3, 4, 2, 6, 1, 7, 5)
    assert parse_permutation("2,1,3") == (2, 1, 3)
    long = tuple(range(10, 0, -1))
    assert parse_permutation(format_permutation(long)) == long
    assert "," in format_permutation(long)
    with pytest.raises(GameError):
        parse_permutation("1123")
    with pytest.raises(GameError):
        parse_permutation("12a")


def test_ideals_are_up_right_closed():
    assert dominated_by((2, 3), (1, 4))
    assert not dominated_by((2, 3), (3, 4))
    n = 4
    assert up_closure({(2, 3)}, n) == {(1, 3), (1, 4), (2, 3), (2, 4)}
    assert is_ideal({(1, 4)}, n)
    assert not is_ideal({(2, 4)}, n)


def test_ideal_traces_enumerate_upsets():
    region = frozenset(board_squares(3))
    traces = set(ideal_traces(region))
    # the poset on three squares: (1,3) above both (1,2) and (2,3)
    assert traces == {frozenset(), frozenset({(1, 3)}), frozenset({(1, 3), (1, 2)}),
                      frozenset({(1, 3), (2, 3)}), region}
    for t in traces:
        assert is_ideal_trace(t, region)


def test_move_semantics():
    # the 1-token in S_23 moves to S_13 under the (1,2) move
    pos = initial_position([(1, 3, 2), (2, 1, 3), (2, 3, 1)])
    rid = pos.region_ids()[0]
    assert move_displacements(pos, Move(rid, 1, 1, 2)) == [((2, 3), (1, 3))]
    new = apply_move(pos, Move(rid, 1, 1, 2))
    assert new.labels_at((1, 3)) == {1, 3}
    assert new.labels_at((2, 3)) == {3}
    assert new.potential() > pos.potential()


def test_move_blocked_by_same_label_and_no_op():
    pos = initial_position([(3, 2, 1)])
    rid = pos.region_ids()[0]
    for i, j in [(1, 2), (2, 3), (1, 3)]:
        assert move_displacements(pos, Move(rid, 1, i, j)) == []
    assert apply_move(pos, Move(rid, 1, 1, 2)) is pos
    with pytest.raises(GameError):
        move_displacements(pos, Move(rid, 2, 1, 2))
    with pytest.raises(GameError):
        move_displacements(pos, Move(rid, 1, 2, 2))


def test_moves_respect_regions():
    pos = initial_position([(1, 3, 2), (2, 1, 3), (2, 3, 1)])
    pos = split(pos, (1, 2), {(1, 3)})
    assert move_displacements(pos, Move((1, 2), 1, 1, 2)) == []


def test_split_validation():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (3, 2, 1)])
    with pytest.raises(GameError):
        split(pos, (1, 2), {(2, 3)})  # not closed upward
    with pytest.raises(GameError):
        split(pos, (1, 2), set())
    with pytest.raises(GameError):
        split(pos, (1, 2), board_squares(3))
    with pytest.raises(GameError):
        split(pos, (2, 3), {(2, 3)})  # no such region
    new = split(pos, (1, 2), {(1, 3)})
    assert sorted(new.region_ids()) == [(1, 2), (1, 3)]


def test_splittable_subsets_use_token_count():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (2, 3, 1)])
    good = splittable_subsets(pos, (1, 2))
    assert frozenset({(1, 3)}) in good
    for sub in good:
        assert pos.token_count(sub) == len(sub)
    assert set(good) <= set(all_splits(pos, (1, 2)))


def test_maximal_split_and_isolate():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (2, 3, 1)])
    final, actions = maximal_split_actions(pos)
    assert all(len(r) == 1 for r in final.regions)
    replay = pos
    for a in actions:
        replay = apply_action(replay, a)
    assert replay == final
    pos = initial_position([(3, 2, 1)] * 2)
    iso, acts = isolate_square(pos, (2, 3))
    assert frozenset({(2, 3)}) in iso.regions
    assert all(isinstance(a, Split) for a in acts)


def test_winning_conditions():
    won = initial_position([(2, 1, 3), (1, 3, 2), (2, 3, 1)])
    assert not is_won(won)
    solved = initial_position([(2, 1, 3), (2, 3, 1)])
    assert is_won(solved)
    sparse = initial_position([(2, 1, 3), (1, 2, 3)])
    assert not is_won(sparse, WinMode.EXACT)
    assert is_won(sparse, WinMode.AT_MOST_ONE)


def test_json_round_trip_and_key():
    pos = initial_position([(2, 4, 1, 3), (3, 1, 4, 2), (1, 3, 2, 4)])
    pos = split(pos, (1, 2), {(1, 4), (2, 4), (1, 3)})
    again = GamePosition.from_json(json.loads(json.dumps(pos.to_json())))
    assert again == pos
    assert again.key() == pos.key()


def test_relabel_moves_labels_and_keeps_counts():
    pos = initial_position([(2, 1, 3), (1, 3, 2)])
    re = pos.relabel({1: 3}, 3)
    assert re.label_counts() == [0, 1, 1]
    assert [re.count_at(sq) for sq in board_squares(3)] == [pos.count_at(sq) for sq in board_squares(3)]
    assert re.labels_at((1, 2)) == {3}


perm_strategy = st.integers(3, 5).flatmap(
    lambda n: st.lists(st.permutations(list(range(1, n + 1))), min_size=1, max_size=4))


@settings(max_examples=60, deadline=None)
@given(perm_strategy, st.randoms(use_true_random=False))
def test_moves_increase_potential(perms, rnd):
    pos = initial_position([tuple(p) for p in perms])
    bound = pos.max_potential()
    for _ in range(30):
        moves = legal_moves(pos)
        if not moves:
            break
        new = apply_move(pos, rnd.choice(moves))
        assert new.potential() > pos.potential()
        assert new.potential() <= bound
        assert new.label_counts() == pos.label_counts()
        pos = new


@settings(max_examples=40, deadline=None)
@given(perm_strategy)
def test_ideal_traces_are_closed(perms):
    pos = initial_position([tuple(p) for p in perms])
    region = pos.regions[0]
    for sub in ideal_traces(region):
        for sq in sub:
            assert all(t in sub for t in region if dominated_by(sq, t))
