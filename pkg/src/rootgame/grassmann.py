"""Grassmannian Schubert problems as root games, and the constructive win.

A problem is a list of 0^(n-l)1^l-strings sigma_1..sigma_s, mu, nu together
with a padding parameter N.  Its game lives on the board for n + N.  The big
region is the upper right (n-l) x (l+N) rectangle minus the squares holding
a last-class token; every move of the winning algorithm happens there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .game import (GameError, GamePosition, Move, Split, Square, WinMode,
                   apply_move, board_squares, initial_position, is_won,
                   isolate_square, move_displacements, split)
from .pictures import (Picture, check_problem_strings, first_picture, is_picture,
                       grassmann_intersection, grassmann_product)
from .shapes import (Partition, SkewShape, check_string, complement_in_box,
                     contains, ones, one_positions, reverse, shape_of_string,
                     shift_shape, string_of_shape, zero_positions)
from .solver import Relabel


class GRGAError(RuntimeError):
    """The winning algorithm could not proceed; ``square`` names the blocker."""

    def __init__(self, message: str, square: Square | None = None):
        super().__init__(message)
        self.square = square


@dataclass(frozen=True)
class GrassmannProblem:
    sigmas: tuple[str, ...]
    mu: str
    nu: str
    N: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        if not self.sigmas:
            raise ValueError("need at least one sigma")
        if self.N < 0:
            raise ValueError("N must be nonnegative")
        check_problem_strings(self.sigmas, self.mu, self.nu)

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def l(self) -> int:
        return ones(self.mu)

    @property
    def s(self) -> int:
        return len(self.sigmas)

    @property
    def rows(self) -> int:
        return self.n - self.l

    @property
    def cols(self) -> int:
        return self.l + self.N

    def with_N(self, N: int) -> GrassmannProblem:
        return GrassmannProblem(self.sigmas, self.mu, self.nu, N)

    def to_json(self) -> dict:
        return {"sigmas": list(self.sigmas), "mu": self.mu, "nu": self.nu, "N": self.N}

    @classmethod
    def from_json(cls, data: dict) -> GrassmannProblem:
        sigmas = data["sigmas"]
        if isinstance(sigmas, str):
            sigmas = [sigmas]
        n_value = data.get("N")
        if n_value is None:
            n_value = ones(data["mu"])
        return cls(tuple(sigmas), data["mu"], data["nu"], int(n_value))

    @classmethod
    def load(cls, path: str) -> GrassmannProblem:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# encodings

def encode_pi(word: str, N: int) -> tuple[int, ...]:
    """Zero positions, then one positions, then n+1..n+N."""
    check_string(word)
    n = len(word)
    return tuple(zero_positions(word) + one_positions(word) + list(range(n + 1, n + N + 1)))


def encode_pi_prime(word: str, N: int) -> tuple[int, ...]:
    check_string(word)
    return tuple([i + N for i in zero_positions(word)] + list(range(1, N + 1))
                 + [j + N for j in one_positions(word)])


def encode_pi_doubleprime(word: str, N: int) -> tuple[int, ...]:
    check_string(word)
    n = len(word)
    return tuple(zero_positions(word)[::-1] + list(range(n + N, n, -1))
                 + one_positions(word)[::-1])


def decode_pi(perm: Sequence[int], n: int, l: int) -> str:
    """Recover the string from ``encode_pi``: the first n - l entries are the zeros."""
    zeros = set(perm[:n - l])
    return "".join("0" if pos in zeros else "1" for pos in range(1, n + 1))


def problem_permutations(prob: GrassmannProblem) -> list[tuple[int, ...]]:
    perms = [encode_pi(w, prob.N) for w in prob.sigmas]
    perms.append(encode_pi_prime(prob.mu, prob.N))
    perms.append(encode_pi_doubleprime(prob.nu, prob.N))
    return perms


# ---------------------------------------------------------------------------
# shapes

@dataclass(frozen=True)
class ProblemShapes:
    sigma_shapes: tuple[Partition, ...]
    mu_shape: Partition  # N + lambda(mu)
    outer: Partition  # complement of lambda(nu) in the (n-l) x (l+N) rectangle

    @property
    def skew(self) -> SkewShape:
        return SkewShape(self.outer, self.mu_shape)


def shapes(prob: GrassmannProblem) -> ProblemShapes:
    return ProblemShapes(
        tuple(shape_of_string(w) for w in prob.sigmas),
        shift_shape(shape_of_string(prob.mu), prob.N),
        complement_in_box(shape_of_string(prob.nu), prob.rows, prob.cols),
    )


def quick_zero(prob: GrassmannProblem) -> bool:
    """True when N + lambda(mu) does not fit inside the outer shape, forcing zero."""
    sh = shapes(prob)
    return not contains(sh.outer, sh.mu_shape)


def shape_squares(shape: Sequence[int], rows: int, first_col: int = 1) -> list[Square]:
    """Board squares of a French shape whose rows sit on board rows 1..rows."""
    offset = rows
    return [(r, offset + c) for r, length in enumerate(shape, 1)
            for c in range(first_col, length + 1)]


def skew_squares(prob: GrassmannProblem) -> list[Square]:
    sh = shapes(prob)
    return [(r, prob.rows + c) for r, c in sh.skew.boxes()]


def big_region_squares(prob: GrassmannProblem) -> frozenset:
    return frozenset(shape_squares(shapes(prob).outer, prob.rows))


# ---------------------------------------------------------------------------
# the game

def build_game_actions(prob: GrassmannProblem) -> tuple[GamePosition, list[Split]]:
    """Initial position, then every last-class square split off on its own.

    The splits are genuine ideal splits: first the block of rows <= n-l, then
    the rectangle inside it, then the last-class part of the rectangle, and
    finally each square of the three pieces that are not the big region.
    """
    pos = initial_position(problem_permutations(prob))
    n_total = pos.n
    rows = prob.rows
    last = prob.s + 2
    actions: list[Split] = []

    def do_split(rid_region: frozenset, subset: set):
        nonlocal pos
        sub = frozenset(subset) & rid_region
        if sub and sub != rid_region:
            actions.append(Split(min(rid_region), sub))
            pos = split(pos, min(rid_region), sub)

    if n_total < 2:
        return pos, actions
    board = frozenset(board_squares(n_total))
    do_split(board, {sq for sq in board if sq[0] <= rows})
    top = pos.region_of((1, n_total)) if rows >= 1 else None
    if top is not None:
        do_split(top, {sq for sq in top if sq[1] > rows})
        rect = pos.region_of((1, n_total))
        marked = {sq for sq in rect if pos.mask_at(sq) >> (last - 1) & 1}
        do_split(rect, marked)
    for sq in board_squares(n_total):
        if pos.mask_at(sq) >> (last - 1) & 1:
            pos, more = isolate_square(pos, sq)
            actions.extend(more)
    return pos, actions


def build_game(prob: GrassmannProblem) -> GamePosition:
    return build_game_actions(prob)[0]


def big_region_id(prob: GrassmannProblem) -> Square | None:
    sq = big_region_squares(prob)
    return min(sq) if sq else None


# ---------------------------------------------------------------------------
# readiness bookkeeping

@dataclass
class ReadinessState:
    """Where each unplaced token is, where it is going, and what is still empty.

    Tokens are identified by their starting square.
    """

    current: dict[Square, Square]
    destination: dict[Square, Square]
    placed: set[Square] = field(default_factory=set)
    skew: frozenset = frozenset()

    def copy(self) -> ReadinessState:
        return ReadinessState(dict(self.current), dict(self.destination),
                              set(self.placed), self.skew)

    def unplaced(self) -> list[Square]:
        return [o for o in self.current if o not in self.placed]

    def empty_squares(self) -> list[Square]:
        filled = {self.current[o] for o in self.placed}
        return sorted(self.skew - filled)

    def to_json(self) -> dict:
        table = readiness_numbers(self)
        return {
            "tokens": [{"origin": list(o), "at": list(self.current[o]),
                        "destination": list(self.destination[o]),
                        "readiness": table["tokens"].get(o), "placed": o in self.placed}
                       for o in sorted(self.current)],
            "empty": [{"square": list(sq), "readiness": r}
                      for sq, r in sorted(table["squares"].items())],
        }


def readiness_numbers(state: ReadinessState) -> dict:
    """Readiness of every unplaced token and every empty destination square."""
    inverse = {d: o for o, d in state.destination.items()}
    tokens = {o: state.current[o][0] - state.destination[o][0] for o in state.unplaced()}
    squares = {}
    for sq in state.empty_squares():
        origin = inverse[sq]
        squares[sq] = state.current[origin][0] - sq[0]
    return {
        "tokens": tokens,
        "squares": squares,
        "ready_tokens": {o for o, r in tokens.items() if r == 0},
        "ready_squares": {sq for sq, r in squares.items() if r == 0},
    }


def monotonicity_violations(state: ReadinessState) -> list[str]:
    """Check rows/columns monotonicity of readiness numbers (tokens and empty squares)."""
    table = readiness_numbers(state)
    problems = []
    token_at = {state.current[o]: r for o, r in table["tokens"].items()}
    for name, cells, row_sign, col_sign in (
            ("token", token_at, 1, -1), ("square", table["squares"], -1, 1)):
        by_row: dict[int, list] = {}
        by_col: dict[int, list] = {}
        for (i, j), r in cells.items():
            by_row.setdefault(i, []).append((j, r))
            by_col.setdefault(j, []).append((i, r))
        for i, entries in by_row.items():
            vals = [r for _, r in sorted(entries)]
            if any(row_sign * (b - a) < 0 for a, b in zip(vals, vals[1:])):
                problems.append(f"{name} readiness not monotone along row {i}: {vals}")
        for j, entries in by_col.items():
            vals = [r for _, r in sorted(entries)]
            if any(col_sign * (b - a) < 0 for a, b in zip(vals, vals[1:])):
                problems.append(f"{name} readiness not monotone down column {j}: {vals}")
    return problems


# ---------------------------------------------------------------------------
# the algorithm

@dataclass
class GRGAPanel:
    """One frame of a run: the step that produced it and the resulting state."""

    step: str
    moves: list[Move]
    position: GamePosition
    state: ReadinessState


@dataclass
class GRGARun:
    moves: list[Move]
    panels: list[GRGAPanel]
    final: GamePosition


def picture_on_board(picture: Picture, rows: int) -> dict[Square, Square]:
    return {(r, rows + c): (r2, rows + c2)
            for (r, c), (r2, c2) in zip(picture.source, picture.images)}


def grga_run(pos: GamePosition, picture: Picture, rows: int, label: int = 1,
             observe: Callable[[GRGAPanel], None] | None = None,
             check: bool = True) -> GRGARun:
    """Move every ``label`` token of the big region onto its image under ``picture``.

    ``rows`` is n - l.  Only ``label`` moves are emitted and nothing is split.
    Raises :class:`GRGAError` when a token cannot travel as required, which
    signals that N is too small.  With ``check`` the readiness monotonicity
    and the per-row ready counts are verified at every state.
    """
    if len(set(picture.images)) != len(picture.images) or not is_picture(picture.mapping()):
        raise GRGAError("not a picture")
    dest = picture_on_board(picture, rows)
    bit = 1 << (label - 1)
    origins = sorted(dest)
    for o in origins:
        if not pos.mask_at(o) & bit:
            raise GRGAError(f"no {label}-token at {o}", o)
    state = ReadinessState({o: o for o in origins}, dest, set(), frozenset(dest.values()))
    region = pos.region_of(min(dest.values())) if dest else None
    for target in dest.values():
        if target not in region:
            raise GRGAError(f"destination {target} outside the big region", target)
        if pos.mask_at(target) & bit:
            raise GRGAError(f"destination {target} already holds a {label}-token", target)
    rid = min(region) if region else None
    panels: list[GRGAPanel] = []
    moves: list[Move] = []

    def record(step, mvs):
        if check:
            bad = monotonicity_violations(state)
            if bad:
                raise GRGAError(bad[0])
        panel = GRGAPanel(step, list(mvs), pos, state.copy())
        panels.append(panel)
        if observe is not None:
            observe(panel)

    def check_left_of():
        empties = state.empty_squares()
        for o in state.unplaced():
            i, j = state.current[o]
            for sq in empties:
                if sq[0] == i and sq[1] <= j:
                    raise GRGAError(f"token at {(i, j)} is not left of empty square {sq}", sq)

    def track(mv: Move) -> list[tuple[Square, Square]]:
        nonlocal pos
        disp = move_displacements(pos, mv)
        where = {state.current[o]: o for o in origins}
        moved = []
        for src, dst in disp:
            o = where[src]
            state.current[o] = dst
            moved.append((o, dst))
        pos = apply_move(pos, mv)
        return moved

    record("start", [])
    while state.unplaced():
        check_left_of()
        table = readiness_numbers(state)
        if not table["ready_tokens"]:
            before = {o: state.current[o] for o in state.unplaced()}
            lift = [Move(rid, label, i, i + 1) for i in range(1, rows)]
            done = []
            for mv in lift:
                moved = track(mv)
                if moved:
                    done.append(mv)
                for o, _ in moved:
                    if o in state.placed:
                        raise GRGAError(f"placed token from {o} was lifted", state.current[o])
            for o, (i, j) in before.items():
                if state.current[o] != (i - 1, j):
                    raise GRGAError(f"token at {(i, j)} could not move up", (i, j))
            moves.extend(done)
            record("lift", done)
            if check:
                _check_ready_counts(state)
            continue
        target = None
        columns = sorted({sq[1] for sq in state.skew}, reverse=True)
        filled = {state.current[o] for o in state.placed}
        for col in columns:
            open_squares = sorted(sq for sq in state.skew if sq[1] == col and sq not in filled)
            if open_squares and open_squares[0] in table["ready_squares"]:
                target = open_squares[0]
                break
        if target is None:
            raise GRGAError("ready tokens but no ready square found")
        row_tokens = sorted((state.current[o][1], o) for o in table["ready_tokens"]
                            if state.current[o][0] == target[0])
        if not row_tokens:
            raise GRGAError(f"no ready token in the row of {target}", target)
        col, chosen = row_tokens[0]
        if col >= target[1]:
            raise GRGAError(f"ready token at {state.current[chosen]} is not left of {target}", target)
        mv = Move(rid, label, col, target[1])
        moved = track(mv)
        for o, dst in moved:
            if o in state.placed or dst != state.destination[o]:
                raise GRGAError(f"token from {o} moved to {dst}, not its destination", dst)
            state.placed.add(o)
        if state.current[chosen] != target:
            raise GRGAError(f"move {mv} did not carry the token into {target}", target)
        moves.append(mv)
        record("place", [mv])
    return GRGARun(moves, panels, pos)


def _check_ready_counts(state: ReadinessState) -> None:
    table = readiness_numbers(state)
    rows = {state.current[o][0] for o in table["ready_tokens"]} | {sq[0] for sq in table["ready_squares"]}
    for i in rows:
        tokens = sum(1 for o in table["ready_tokens"] if state.current[o][0] == i)
        squares = sum(1 for sq in table["ready_squares"] if sq[0] == i)
        if tokens != squares:
            raise GRGAError(f"row {i}: {tokens} ready tokens but {squares} ready squares")


def grga(pos: GamePosition, picture: Picture, rows: int, label: int = 1) -> list[Move]:
    return grga_run(pos, picture, rows, label).moves


def problem_picture(prob: GrassmannProblem, sigma_index: int = 0) -> Picture | None:
    sh = shapes(prob)
    return first_picture(sh.sigma_shapes[sigma_index], sh.skew)


# ---------------------------------------------------------------------------
# winning

@dataclass
class GrassmannWin:
    """Outcome of :func:`win_grassmannian`.

    ``status`` is "won", "zero" (intersection number vanishes) or "failed"
    (positive number, but the construction broke down, typically N < l).
    ``trace`` starts from ``build_game(prob)``; ``setup`` leads there from the
    initial position.
    """

    status: str
    number: int
    setup: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    reason: str = ""

    @property
    def won(self) -> bool:
        return self.status == "won"

    def moves(self) -> list[Move]:
        return [a for a in self.trace if isinstance(a, Move)]

    def full_trace(self) -> list:
        return self.setup + self.trace


def _win_from(prob: GrassmannProblem, pos: GamePosition, labels: list[int]) -> tuple[GamePosition, list]:
    """Events that win the problem from its set-up position ``pos``."""
    if prob.s == 1:
        picture = problem_picture(prob)
        if picture is None:
            raise GRGAError("no picture although the number is positive")
        run = grga_run(pos, picture, prob.rows, labels[0])
        return run.final, list(run.moves)
    first, rest = prob.sigmas[0], prob.sigmas[1:]
    expansion = grassmann_product([*rest, prob.mu])
    chosen = None
    for part, coeff in sorted(expansion.items(), key=lambda kv: string_of_shape(_french(kv[0], prob.rows), prob.l)):
        if coeff <= 0:
            continue
        word = string_of_shape(_french(part, prob.rows), prob.l)
        if grassmann_intersection([first], word, prob.nu) > 0:
            chosen = word
            break
    if chosen is None:
        raise GRGAError("no intermediate class with positive coefficients")
    triple = GrassmannProblem((first,), chosen, prob.nu, prob.N)
    picture = problem_picture(triple)
    if picture is None:
        raise GRGAError("no picture for the chosen intermediate class")
    run = grga_run(pos, picture, prob.rows, labels[0])
    pos = run.final
    events: list = list(run.moves)
    # move the finished tokens out of the way: skew part first, then singletons
    skew = frozenset(skew_squares(triple))
    if skew:
        region = pos.region_of(min(skew))
        if skew != region:
            events.append(Split(min(region), skew))
            pos = split(pos, min(region), skew)
        for sq in sorted(skew):
            pos, more = isolate_square(pos, sq)
            events.extend(more)
    relabel = Relabel(labels[0], labels[-1])
    from .solver import apply_relabel
    pos = apply_relabel(pos, relabel)
    events.append(relabel)
    sub = GrassmannProblem(rest, prob.mu, reverse(chosen), prob.N)
    pos, more = _win_from(sub, pos, labels[1:])
    events.extend(more)
    return pos, events


def _french(part: Partition, rows: int) -> Partition:
    padded = (0,) * (rows - len(part)) + tuple(sorted(part))
    return padded


def win_grassmannian(prob: GrassmannProblem) -> GrassmannWin:
    """Construct a winning play when the intersection number is positive."""
    number = 0 if quick_zero(prob) else grassmann_intersection(prob.sigmas, prob.mu, prob.nu)
    pos, setup = build_game_actions(prob)
    if number == 0:
        return GrassmannWin("zero", 0, setup)
    labels = list(range(1, prob.s + 3))
    try:
        final, events = _win_from(prob, pos, labels)
    except (GRGAError, GameError) as exc:
        return GrassmannWin("failed", number, setup, [], str(exc))
    if not is_won(final, WinMode.EXACT):
        return GrassmannWin("failed", number, setup, events, "final position is not won")
    return GrassmannWin("won", number, setup, events)
