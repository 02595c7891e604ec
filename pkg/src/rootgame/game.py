"""The root game: board, tokens, regions, splitting and moves.

Squares are pairs ``(i, j)`` with ``1 <= i < j <= n``.  Token sets are stored
as bitmasks over labels (bit ``k - 1`` set means a ``k``-token is present), so
at most 64 labels are supported.  Positions are immutable; every operation
returns a new position.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Square = tuple[int, int]
Region = frozenset  # frozenset[Square]

MAX_LABELS = 64


class GameError(ValueError):
    """Raised for malformed positions, moves or splits."""


class WinMode(enum.Enum):
    EXACT = "exact"
    AT_MOST_ONE = "atmost"


# ---------------------------------------------------------------------------
# permutations

def is_permutation(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(1, len(perm) + 1))


def perm_length(perm: Sequence[int]) -> int:
    """Number of inversions of a one-line permutation."""
    n = len(perm)
    return sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])


def longest_element(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def parse_permutation(text: str) -> tuple[int, ...]:
    """Parse ``"3426175"`` or ``"3,4,2,6,1,7,5"``.

    Digit-string form is only accepted for n < 10.
    """
    text = text.strip()
    if "," in text:
        perm = tuple(int(part) for part in text.split(",") if part.strip())
    else:
        if not text.isdigit():
            raise GameError(f"not a permutation: {text!r}")
        perm = tuple(int(c) for c in text)
    if not perm or not is_permutation(perm):
        raise GameError(f"not a permutation: {text!r}")
    return perm


def format_permutation(perm: Sequence[int]) -> str:
    if len(perm) < 10:
        return "".join(str(v) for v in perm)
    return ",".join(str(v) for v in perm)


# ---------------------------------------------------------------------------
# board geometry

@lru_cache(maxsize=None)
def board_squares(n: int) -> tuple[Square, ...]:
    """All squares of the board for ``n``, in row-major (lexicographic) order."""
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def square_index(n: int) -> dict[Square, int]:
    return {sq: idx for idx, sq in enumerate(board_squares(n))}


def region_id(region: Iterable[Square]) -> Square:
    return min(region)


def dominated_by(sq: Square, t: Square) -> bool:
    """True iff ``t`` lies in the ideal generated by ``sq``.

    Ideals are closed under moving up a row or right a column, the directions
    tokens travel in; a set of squares that tokens can enter but never leave.
    """
    return t[0] <= sq[0] and t[1] >= sq[1]


def up_closure(squares: Iterable[Square], n: int) -> set[Square]:
    """The smallest ideal of the board containing ``squares``."""
    seeds = list(squares)
    return {t for t in board_squares(n) if any(dominated_by(sq, t) for sq in seeds)}


def is_ideal(squares: Iterable[Square], n: int) -> bool:
    members = set(squares)
    return up_closure(members, n) == members


def is_ideal_trace(subset: Iterable[Square], region: Iterable[Square]) -> bool:
    """True iff ``subset = region ∩ I`` for some ideal ``I`` of the board."""
    sub = set(subset)
    reg = set(region)
    if not sub <= reg:
        return False
    return all(t in sub for sq in sub for t in reg if dominated_by(sq, t))


def ideal_traces(region: Iterable[Square]) -> Iterator[frozenset]:
    """Every ideal trace on ``region``, the empty set included.

    The traces of board ideals are exactly the up-sets of the induced order on
    ``region``; each is generated by an antichain of minimal elements.
    """
    squares = sorted(region)
    above = {sq: frozenset(t for t in squares if dominated_by(sq, t)) for sq in squares}
    below = {sq: frozenset(t for t in squares if dominated_by(t, sq)) for sq in squares}

    def extend(start: int, current: frozenset, blocked: frozenset) -> Iterator[frozenset]:
        yield current
        for idx in range(start, len(squares)):
            sq = squares[idx]
            if sq in blocked:
                continue
            yield from extend(idx + 1, current | above[sq], blocked | above[sq] | below[sq])

    yield from extend(0, frozenset(), frozenset())


# ---------------------------------------------------------------------------
# positions

@dataclass(frozen=True)
class Move:
    region: Square
    label: int
    i: int
    j: int

    def to_json(self) -> dict:
        return {"type": "move", "region": list(self.region), "k": self.label,
                "i": self.i, "j": self.j}


@dataclass(frozen=True)
class Split:
    region: Square
    subset: frozenset

    def to_json(self) -> dict:
        return {"type": "split", "region": list(self.region),
                "A": [list(sq) for sq in sorted(self.subset)]}


@dataclass(frozen=True)
class GamePosition:
    """Token configuration plus region partition.

    ``masks`` holds one label bitmask per square, in ``board_squares(n)``
    order.  ``regions`` is sorted by region id (least square).
    """

    n: int
    m: int
    masks: tuple[int, ...]
    regions: tuple[frozenset, ...]

    def __post_init__(self):
        if not 1 <= self.m <= MAX_LABELS:
            raise GameError(f"label count must be in 1..{MAX_LABELS}, got {self.m}")
        if len(self.masks) != len(board_squares(self.n)):
            raise GameError("token table does not match board size")
        if any(mask >> self.m for mask in self.masks):
            raise GameError("token label exceeds m")
        seen: set[Square] = set()
        for reg in self.regions:
            if not reg:
                raise GameError("empty region")
            if seen & reg:
                raise GameError("regions overlap")
            seen |= reg
        if seen != set(board_squares(self.n)):
            raise GameError("regions do not cover the board")

    # -- access

    def mask_at(self, sq: Square) -> int:
        return self.masks[square_index(self.n)[sq]]

    def labels_at(self, sq: Square) -> frozenset[int]:
        mask = self.mask_at(sq)
        return frozenset(k + 1 for k in range(self.m) if mask >> k & 1)

    def count_at(self, sq: Square) -> int:
        return self.mask_at(sq).bit_count()

    def region(self, rid: Square) -> frozenset:
        for reg in self.regions:
            if min(reg) == rid:
                return reg
        raise GameError(f"no region with id {rid}")

    def region_of(self, sq: Square) -> frozenset:
        for reg in self.regions:
            if sq in reg:
                return reg
        raise GameError(f"square {sq} not on board")

    def region_ids(self) -> list[Square]:
        return [min(reg) for reg in self.regions]

    def token_count(self, squares: Iterable[Square] | None = None) -> int:
        if squares is None:
            return sum(mask.bit_count() for mask in self.masks)
        return sum(self.count_at(sq) for sq in squares)

    def label_counts(self) -> list[int]:
        return [sum(mask >> k & 1 for mask in self.masks) for k in range(self.m)]

    def potential(self) -> int:
        """Sum over all tokens of (column - row); strictly increased by every real move."""
        return sum(mask.bit_count() * (j - i)
                   for (i, j), mask in zip(board_squares(self.n), self.masks))

    def max_potential(self) -> int:
        n = self.n
        return self.m * n * (n - 1) // 2 * (n - 1)

    # -- construction helpers

    def with_masks(self, masks: Sequence[int]) -> GamePosition:
        return GamePosition(self.n, self.m, tuple(masks), self.regions)

    def with_regions(self, regions: Iterable[Iterable[Square]]) -> GamePosition:
        return GamePosition(self.n, self.m, self.masks, _sorted_regions(regions))

    def relabel(self, mapping: dict[int, int], m: int | None = None) -> GamePosition:
        """Rename token labels; labels missing from ``mapping`` are kept."""
        m = self.m if m is None else m
        out = []
        for mask in self.masks:
            new = 0
            for k in range(self.m):
                if mask >> k & 1:
                    target = mapping.get(k + 1, k + 1)
                    if new >> (target - 1) & 1:
                        raise GameError(f"relabel would put two {target}-tokens in a square")
                    new |= 1 << (target - 1)
            out.append(new)
        return GamePosition(self.n, m, tuple(out), self.regions)

    # -- serialization

    def key(self) -> bytes:
        """Canonical byte string; equal iff positions are equal."""
        parts = [f"{self.n};{self.m};"]
        parts.append(",".join(format(mask, "x") for mask in self.masks))
        for reg in self.regions:
            parts.append("|" + ",".join(f"{i}.{j}" for i, j in sorted(reg)))
        return "".join(parts).encode()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "tokens": [
                {"i": i, "j": j, "labels": sorted(self.labels_at((i, j)))}
                for (i, j), mask in zip(board_squares(self.n), self.masks) if mask
            ],
            "regions": [[list(sq) for sq in sorted(reg)] for reg in self.regions],
        }

    @classmethod
    def from_json(cls, data: dict) -> GamePosition:
        n, m = int(data["n"]), int(data["m"])
        index = square_index(n)
        masks = [0] * len(index)
        for entry in data.get("tokens", []):
            sq = (int(entry["i"]), int(entry["j"]))
            if sq not in index:
                raise GameError(f"square {sq} not on board")
            for k in entry["labels"]:
                if not 1 <= k <= m:
                    raise GameError(f"label {k} out of range")
                masks[index[sq]] |= 1 << (k - 1)
        regions = data.get("regions") or [board_squares(n)]
        regs = [frozenset((int(a), int(b)) for a, b in reg) for reg in regions]
        return cls(n, m, tuple(masks), _sorted_regions(regs))


def _sorted_regions(regions: Iterable[Iterable[Square]]) -> tuple[frozenset, ...]:
    return tuple(sorted((frozenset(r) for r in regions), key=min))


def initial_position(perms: Sequence[Sequence[int]], n: int | None = None) -> GamePosition:
    """A ``k``-token sits in ``S_ij`` iff ``perms[k-1]`` inverts ``i < j``."""
    if not perms:
        raise GameError("need at least one permutation")
    if n is None:
        n = len(perms[0])
    for perm in perms:
        if len(perm) != n or not is_permutation(perm):
            raise GameError(f"{list(perm)} is not a permutation of 1..{n}")
    masks = []
    for i, j in board_squares(n):
        mask = 0
        for k, perm in enumerate(perms):
            if perm[i - 1] > perm[j - 1]:
                mask |= 1 << k
        masks.append(mask)
    regions = (frozenset(board_squares(n)),) if n > 1 else ()
    return GamePosition(n, len(perms), tuple(masks), regions)


# ---------------------------------------------------------------------------
# splitting

def splittable_subsets(pos: GamePosition, rid: Square) -> list[frozenset]:
    """Nonempty proper ideal traces ``A`` of the region holding exactly ``|A|`` tokens."""
    region = pos.region(rid)
    counts = {sq: pos.count_at(sq) for sq in region}
    if not any(counts.values()):
        return []
    out = []
    for sub in ideal_traces(region):
        if sub and len(sub) < len(region) and sum(counts[sq] for sq in sub) == len(sub):
            out.append(sub)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def all_splits(pos: GamePosition, rid: Square) -> list[frozenset]:
    """Every nonempty proper ideal trace of the region, without the token criterion."""
    region = pos.region(rid)
    out = [sub for sub in ideal_traces(region) if sub and len(sub) < len(region)]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def split(pos: GamePosition, rid: Square, subset: Iterable[Square]) -> GamePosition:
    region = pos.region(rid)
    sub = frozenset(subset)
    if not sub or sub == region:
        raise GameError("split set must be a nonempty proper subset of the region")
    if not is_ideal_trace(sub, region):
        raise GameError("split set is not the trace of an ideal on the region")
    regions = [reg for reg in pos.regions if reg != region]
    regions += [sub, region - sub]
    return GamePosition(pos.n, pos.m, pos.masks, _sorted_regions(regions))


def maximal_split_actions(pos: GamePosition) -> tuple[GamePosition, list[Split]]:
    """Split every region along qualifying sets until none remain.

    Returns the final position and the splits performed, in order.
    """
    actions: list[Split] = []
    pending = list(pos.region_ids())
    while pending:
        rid = pending.pop(0)
        candidates = splittable_subsets(pos, rid)
        if not candidates:
            continue
        sub = candidates[0]
        actions.append(Split(rid, sub))
        region = pos.region(rid)
        pos = split(pos, rid, sub)
        pending.extend([min(sub), min(region - sub)])
    return pos, actions


def split_maximally(pos: GamePosition) -> GamePosition:
    return maximal_split_actions(pos)[0]


def isolate_square(pos: GamePosition, sq: Square) -> tuple[GamePosition, list[Split]]:
    """Split ``sq`` off into a one-square region using at most two ideal splits."""
    actions = []
    region = pos.region_of(sq)
    if len(region) == 1:
        return pos, actions
    upper = frozenset(t for t in region if dominated_by(sq, t))
    if upper != region:
        actions.append(Split(min(region), upper))
        pos = split(pos, min(region), upper)
    rest = upper - {sq}
    if rest:
        actions.append(Split(min(upper), rest))
        pos = split(pos, min(upper), rest)
    return pos, actions


# ---------------------------------------------------------------------------
# moves

def move_displacements(pos: GamePosition, mv: Move) -> list[tuple[Square, Square]]:
    """The (source, target) squares of every token the move displaces."""
    n = pos.n
    if not 1 <= mv.label <= pos.m:
        raise GameError(f"label {mv.label} out of range 1..{pos.m}")
    if not 1 <= mv.i < mv.j <= n:
        raise GameError(f"bad pair ({mv.i}, {mv.j})")
    region = pos.region(mv.region)
    index = square_index(n)
    masks = pos.masks
    bit = 1 << (mv.label - 1)
    i, j = mv.i, mv.j
    out = []
    for h in range(j + 1, n + 1):
        src, dst = (j, h), (i, h)
        if src in region and dst in region and masks[index[src]] & bit and not masks[index[dst]] & bit:
            out.append((src, dst))
    for h in range(1, i):
        src, dst = (h, i), (h, j)
        if src in region and dst in region and masks[index[src]] & bit and not masks[index[dst]] & bit:
            out.append((src, dst))
    return out


def apply_move(pos: GamePosition, mv: Move) -> GamePosition:
    moves = move_displacements(pos, mv)
    if not moves:
        return pos
    index = square_index(pos.n)
    bit = 1 << (mv.label - 1)
    masks = list(pos.masks)
    for src, dst in moves:
        masks[index[src]] &= ~bit
        masks[index[dst]] |= bit
    return pos.with_masks(masks)


def legal_moves(pos: GamePosition) -> list[Move]:
    """Moves that displace at least one token, ordered by (region, k, i, j)."""
    out = []
    for reg in pos.regions:
        rid = min(reg)
        present = 0
        for sq in reg:
            present |= pos.mask_at(sq)
        for k in range(1, pos.m + 1):
            if not present >> (k - 1) & 1:
                continue
            for i in range(1, pos.n):
                for j in range(i + 1, pos.n + 1):
                    mv = Move(rid, k, i, j)
                    if move_displacements(pos, mv):
                        out.append(mv)
    return out


def apply_action(pos: GamePosition, action) -> GamePosition:
    if isinstance(action, Move):
        return apply_move(pos, action)
    if isinstance(action, Split):
        return split(pos, action.region, action.subset)
    raise GameError(f"unknown action {action!r}")


# ---------------------------------------------------------------------------
# winning

def is_won(pos: GamePosition, mode: WinMode = WinMode.EXACT,
           squares: Iterable[Square] | None = None) -> bool:
    """Exact: one token per square.  AT_MOST_ONE: no square holds two tokens."""
    if squares is None:
        counts = [mask.bit_count() for mask in pos.masks]
    else:
        counts = [pos.count_at(sq) for sq in squares]
    if mode is WinMode.EXACT:
        return all(c == 1 for c in counts)
    return all(c <= 1 for c in counts)


def region_won(pos: GamePosition, rid: Square, mode: WinMode = WinMode.EXACT) -> bool:
    return is_won(pos, mode, pos.region(rid))
