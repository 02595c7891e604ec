"""Exhaustive search for winning plays of the root game.

Regions never interact once split, so the search works on one region at a
time and memoizes per-region subgames.  In exact mode every node is split
maximally before moves are tried; in at-most-one mode splits are ordinary
search actions because no criterion tells which ones are harmless.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .game import (GameError, GamePosition, Move, Split, Square, WinMode,
                   apply_action, board_squares, is_won,
                   square_index)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class CertificateError(GameError):
    def __init__(self, index: int, message: str):
        super().__init__(f"action {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class Relabel:
    """Bookkeeping step: every ``source`` token becomes a ``target`` token.

    Only permitted when each affected token sits alone in a one-square region,
    where it cannot influence any later move.
    """

    source: int
    target: int

    def to_json(self) -> dict:
        return {"type": "relabel", "from": self.source, "to": self.target}


@dataclass
class Verdict:
    status: str  # "winnable", "unwinnable" or "unknown"
    certificate: list | None = None
    nodes: int = 0
    memo_hits: int = 0

    @property
    def winnable(self) -> bool | None:
        if self.status == "unknown":
            return None
        return self.status == "winnable"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "certificate": None if self.certificate is None
            else [a.to_json() for a in self.certificate],
            "nodes": self.nodes,
            "memo_hits": self.memo_hits,
        }


def canonicalize(pos: GamePosition) -> bytes:
    return pos.key()


# ---------------------------------------------------------------------------
# per-region structure, cached on the square set

@dataclass(frozen=True)
class _Layout:
    squares: tuple[Square, ...]
    moves: tuple  # ((i, j), ((src, dst), ...)) with local indices
    ne_cones: tuple[int, ...]  # bitmask of squares weakly up-right of each square
    sw_cones: tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def _layout(squares: tuple[Square, ...]) -> _Layout:
    idx = {sq: t for t, sq in enumerate(squares)}
    n = max(j for _, j in squares)
    moves = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            pairs = []
            for h in range(j + 1, n + 1):
                if (j, h) in idx and (i, h) in idx:
                    pairs.append((idx[(j, h)], idx[(i, h)]))
            for h in range(1, i):
                if (h, i) in idx and (h, j) in idx:
                    pairs.append((idx[(h, i)], idx[(h, j)]))
            if pairs:
                moves.append(((i, j), tuple(pairs)))
    ne, sw = [], []
    for a, b in squares:
        ne.append(sum(1 << t for t, (c, d) in enumerate(squares) if c <= a and d >= b))
        sw.append(sum(1 << t for t, (c, d) in enumerate(squares) if c >= a and d <= b))
    return _Layout(tuple(squares), tuple(moves), tuple(ne), tuple(sw))


@lru_cache(maxsize=1 << 12)
def _upsets(squares: tuple[Square, ...]) -> tuple[int, ...]:
    """Nonempty proper ideal traces of the region, as local bitmasks, smallest first."""
    from .game import ideal_traces
    idx = {sq: t for t, sq in enumerate(squares)}
    full = (1 << len(squares)) - 1
    out = []
    for sub in ideal_traces(squares):
        mask = sum(1 << idx[sq] for sq in sub)
        if mask and mask != full:
            out.append(mask)
    out.sort(key=lambda m: (m.bit_count(), m))
    return tuple(out)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# search

class Solver:
    def __init__(self, mode: WinMode = WinMode.EXACT, budget: int | None = None,
                 threads: int = 1, max_splits: int | None = None):
        self.mode = mode
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.threads = threads
        self.max_splits = max_splits
        self.memo: dict = {}
        self.nodes = 0
        self.memo_hits = 0

    # -- helpers

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")

    def _pruned(self, lay: _Layout, counts: Sequence[int]) -> bool:
        """True when some cone makes the region hopeless."""
        for t in range(len(counts)):
            cone = lay.ne_cones[t]
            if sum(counts[u] for u in _bits(cone)) > cone.bit_count():
                return True
            if self.mode is WinMode.EXACT:
                cone = lay.sw_cones[t]
                if sum(counts[u] for u in _bits(cone)) < cone.bit_count():
                    return True
        return False

    def _first_qualifying(self, squares, counts) -> int | None:
        for up in _upsets(squares):
            if sum(counts[u] for u in _bits(up)) == up.bit_count():
                return up
        return None

    def _max_split(self, squares, masks):
        """Maximal splitting of one region: (parts, actions)."""
        todo = [(squares, masks)]
        parts, actions = [], []
        while todo:
            sq, mk = todo.pop()
            counts = [m.bit_count() for m in mk]
            if not any(counts):
                parts.append((sq, mk))
                continue
            up = self._first_qualifying(sq, counts)
            if up is None:
                parts.append((sq, mk))
                continue
            inside = [t for t in range(len(sq)) if up >> t & 1]
            outside = [t for t in range(len(sq)) if not up >> t & 1]
            actions.append(Split(sq[0], frozenset(sq[t] for t in inside)))
            todo.append((tuple(sq[t] for t in outside), tuple(mk[t] for t in outside)))
            todo.append((tuple(sq[t] for t in inside), tuple(mk[t] for t in inside)))
        parts.sort()
        return parts, actions

    def _ordered_moves(self, lay: _Layout, masks, m):
        present = 0
        for mk in masks:
            present |= mk
        single_before = sum(1 for mk in masks if mk.bit_count() == 1)
        options = []
        for (i, j), pairs in lay.moves:
            for k in range(m):
                bit = 1 << k
                if not present & bit:
                    continue
                moved = [(s, d) for s, d in pairs if masks[s] & bit and not masks[d] & bit]
                if not moved:
                    continue
                new = list(masks)
                for s, d in moved:
                    new[s] &= ~bit
                    new[d] |= bit
                new = tuple(new)
                gain = sum(1 for mk in new if mk.bit_count() == 1) - single_before
                options.append((-gain if gain > 0 else 0, k, i, j, new))
        options.sort(key=lambda o: o[:4])
        return [(Move(lay.squares[0], k + 1, i, j), new) for _, k, i, j, new in options]

    # -- exact mode

    def _exact(self, squares, masks, m, presplit=False):
        key = (squares, masks)
        if key in self.memo:
            self.memo_hits += 1
            return self.memo[key]
        self._tick()
        counts = [mk.bit_count() for mk in masks]
        if sum(counts) != len(squares):
            result = None
        elif all(c == 1 for c in counts):
            result = []
        elif self._pruned(_layout(squares), counts):
            result = None
        else:
            result = None
            parts, actions = ([(squares, masks)], []) if presplit else self._max_split(squares, masks)
            if len(parts) > 1:
                cert = list(actions)
                for sq, mk in parts:
                    sub = self._exact(sq, mk, m, presplit=True)
                    if sub is None:
                        cert = None
                        break
                    cert.extend(sub)
                result = cert
            else:
                lay = _layout(squares)
                for mv, new in self._ordered_moves(lay, masks, m):
                    sub = self._exact(squares, new, m)
                    if sub is not None:
                        result = [mv] + sub
                        break
        self.memo[key] = result
        return result

    # -- at-most-one mode

    def _atmost(self, squares, masks, m, splits_used=0):
        key = (squares, masks)
        if key in self.memo:
            self.memo_hits += 1
            return self.memo[key]
        self._tick()
        counts = [mk.bit_count() for mk in masks]
        lay = _layout(squares)
        if all(c <= 1 for c in counts):
            result = []
        elif self._pruned(lay, counts):
            result = None
        else:
            result = None
            for mv, new in self._ordered_moves(lay, masks, m):
                sub = self._atmost(squares, new, m, splits_used)
                if sub is not None:
                    result = [mv] + sub
                    break
            if result is None and (self.max_splits is None or splits_used < self.max_splits):
                for up in _upsets(squares):
                    inside = tuple(t for t in range(len(squares)) if up >> t & 1)
                    outside = tuple(t for t in range(len(squares)) if not up >> t & 1)
                    part_a = (tuple(squares[t] for t in inside), tuple(masks[t] for t in inside))
                    part_b = (tuple(squares[t] for t in outside), tuple(masks[t] for t in outside))
                    # a part with no crowded square is already won and needs no help
                    if all(mk.bit_count() <= 1 for mk in part_a[1]) and \
                            all(mk.bit_count() <= 1 for mk in part_b[1]):
                        continue
                    sub_a = self._atmost(*part_a, m, splits_used + 1)
                    if sub_a is None:
                        continue
                    sub_b = self._atmost(*part_b, m, splits_used + 1)
                    if sub_b is None:
                        continue
                    result = [Split(squares[0], frozenset(part_a[0]))] + sub_a + sub_b
                    break
        self.memo[key] = result
        return result

    # -- entry point

    def _solve_region(self, reg, pos):
        squares = tuple(sorted(reg))
        index = square_index(pos.n)
        masks = tuple(pos.masks[index[sq]] for sq in squares)
        if self.mode is WinMode.EXACT:
            return self._exact(squares, masks, pos.m)
        return self._atmost(squares, masks, pos.m)

    def solve(self, pos: GamePosition) -> Verdict:
        try:
            if self.threads > 1 and len(pos.regions) > 1:
                with ThreadPoolExecutor(self.threads) as pool:
                    results = list(pool.map(lambda reg: self._solve_region(reg, pos), pos.regions))
            else:
                results = []
                for reg in pos.regions:
                    res = self._solve_region(reg, pos)
                    results.append(res)
                    if res is None:
                        break
        except BudgetExceeded:
            log.info("budget exceeded after %d nodes", self.nodes)
            return Verdict("unknown", None, self.nodes, self.memo_hits)
        if any(r is None for r in results):
            return Verdict("unwinnable", None, self.nodes, self.memo_hits)
        cert = [a for r in results for a in r]
        return Verdict("winnable", cert, self.nodes, self.memo_hits)


def default_budget() -> int:
    env = os.environ.get("ROOTGAME_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def solve(pos: GamePosition, mode: WinMode = WinMode.EXACT, budget: int | None = None,
          threads: int = 1) -> Verdict:
    """Decide whether ``pos`` can be won; a certificate accompanies a win."""
    solver = Solver(mode, default_budget() if budget is None else budget, threads)
    return solver.solve(pos)


# ---------------------------------------------------------------------------
# certificates

def apply_relabel(pos: GamePosition, ev: Relabel) -> GamePosition:
    m = max(pos.m, ev.source, ev.target)
    for sq, mask in zip(board_squares(pos.n), pos.masks):
        if mask >> (ev.source - 1) & 1:
            if len(pos.region_of(sq)) != 1:
                raise GameError(f"{ev.source}-token at {sq} is not in a one-square region")
    return pos.relabel({ev.source: ev.target}, m)


def replay(pos: GamePosition, actions: Sequence) -> GamePosition:
    for idx, action in enumerate(actions):
        try:
            if isinstance(action, Relabel):
                pos = apply_relabel(pos, action)
            else:
                pos = apply_action(pos, action)
        except GameError as exc:
            raise CertificateError(idx, str(exc)) from exc
    return pos


def verify_certificate(pos: GamePosition, actions: Sequence,
                       mode: WinMode = WinMode.EXACT) -> bool:
    """Replay ``actions`` from ``pos``; True iff the final position is won.

    Illegal actions raise :class:`CertificateError` carrying their index.
    """
    return is_won(replay(pos, actions), mode)


def action_from_json(data: dict):
    kind = data.get("type")
    if kind == "move":
        return Move(tuple(data["region"]), int(data["k"]), int(data["i"]), int(data["j"]))
    if kind == "split":
        return Split(tuple(data["region"]), frozenset(tuple(sq) for sq in data["A"]))
    if kind == "relabel":
        return Relabel(int(data["from"]), int(data["to"]))
    raise GameError(f"unknown action type {kind!r}")


__all__ = [
    "BudgetExceeded", "CertificateError", "Relabel", "Solver", "Verdict",
    "action_from_json", "canonicalize", "default_budget", "replay", "solve",
    "verify_certificate",
]
