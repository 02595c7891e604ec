import pytest

from rootgame.game import Move, Split, WinMode, initial_position, split
from rootgame.schubert import flag_intersection
from rootgame.solver import (CertificateError, Relabel, Solver, action_from_json, default_budget,
                             replay, solve, verify_certificate)
from rootgame.sweeps import compatible_triples


def test_already_won_and_trivially_lost():
    assert solve(initial_position([(2, 1, 3), (2, 3, 1), (1, 2, 3)])).certificate == []
    assert solve(initial_position([(2, 1, 3)] * 3)).status == "unwinnable"


def test_exhaustive_s3_matches_oracle():
    for perms in compatible_triples(3):
        verdict = solve(initial_position(perms))
        assert verdict.winnable == (flag_intersection(perms) > 0)
        if verdict.winnable:
            assert verify_certificate(initial_position(perms), verdict.certificate)


def test_certificate_json_round_trip():
    perms = ((1, 2, 4, 3), (1, 2, 4, 3), (4, 2, 1, 3))
    pos = initial_position(perms)
    verdict = solve(pos)
    assert verdict.winnable
    actions = [action_from_json(a.to_json()) for a in verdict.certificate]
    assert actions == verdict.certificate
    assert any(isinstance(a, Move) for a in actions)
    assert verify_certificate(pos, actions)
    assert verdict.to_json()["status"] == "winnable"


def test_bad_certificate_reports_index():
    pos = initial_position([(2, 1, 3), (1, 3, 2), (2, 3, 1)])
    with pytest.raises(CertificateError) as info:
        replay(pos, [Split((1, 2), frozenset({(1, 3)})), Move((1, 2), 9, 1, 2)])
    assert info.value.index == 1


def test_relabel_needs_singletons():
    pos = initial_position([(2, 1, 3), (2, 3, 1)])
    with pytest.raises(CertificateError):
        replay(pos, [Relabel(1, 2)])
    alone = split(split(pos, (1, 2), {(1, 3)}), (1, 2), {(2, 3)})
    after = replay(alone, [Relabel(1, 2)])
    assert after.label_counts()[0] == 0


def test_budget_gives_unknown(monkeypatch):
    perms = ((2, 4, 6, 1, 3, 5, 7, 8, 9, 10), (5, 6, 8, 1, 2, 3, 4, 7, 9, 10),
             (4, 3, 1, 10, 9, 8, 7, 6, 5, 2))
    verdict = solve(initial_position(perms), budget=3)
    assert verdict.status == "unknown" and verdict.winnable is None
    monkeypatch.setenv("ROOTGAME_BUDGET", "42")
    assert default_budget() == 42


def test_threads_give_the_same_verdicts():
    for perms in compatible_triples(4)[:60]:
        pos = initial_position(perms)
        pos = split(pos, (1, 2), {(1, 4)}) if pos.token_count({(1, 4)}) == 1 else pos
        assert solve(pos, threads=3).status == solve(pos).status


def test_at_most_one_mode():
    # one class alone: the product is nonzero, so the sparse game is won
    pos = initial_position([(2, 1, 3), (1, 3, 2)])
    verdict = solve(pos, WinMode.AT_MOST_ONE)
    assert verdict.winnable
    assert verify_certificate(pos, verdict.certificate, WinMode.AT_MOST_ONE)
    # x1^2 x1 = 0 in H*(Fl(2))
    assert not solve(initial_position([(2, 1), (2, 1)]), WinMode.AT_MOST_ONE).winnable


def test_memo_is_used():
    solver = Solver(WinMode.EXACT, 10**6)
    solver.solve(initial_position([(1, 3, 2, 4), (2, 1, 4, 3), (1, 4, 2, 3)]))
    assert solver.nodes > 0
