"""Verification sweeps comparing the game against the independent oracles.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_checks`` runs a
selection.  The test suite and ``rootgame verify`` share these.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .game import (GamePosition, Move, Split, WinMode, all_splits, apply_action,
                   initial_position, is_won, legal_moves, perm_length, region_won)
from .geometry import is_transverse, transverse_replacing_first, weight_datum
from .grassmann import (GrassmannProblem, big_region_id, build_game, encode_pi,
                        encode_pi_doubleprime, encode_pi_prime, grga_run,
                        problem_permutations, problem_picture, quick_zero,
                        win_grassmannian)
from .pictures import (count_pictures, grassmann_intersection, grassmann_product,
                       lr_coefficient)
from .schubert import flag_intersection
from .shapes import (SkewShape, all_strings, french, partitions_in_box,
                     shape_of_string)
from .solver import solve, verify_certificate


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str = ""
    elapsed: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key} {self.title}: {self.detail} ({self.elapsed:.1f}s)"

    def to_json(self) -> dict:
        return {"key": self.key, "title": self.title, "passed": self.passed,
                "detail": self.detail, "elapsed": round(self.elapsed, 3)}


def _timed(key: str, title: str):
    def wrap(fn: Callable[..., tuple[bool, str, dict]]):
        def run(*args, **kwargs) -> CheckResult:
            start = time.perf_counter()
            ok, detail, data = fn(*args, **kwargs)
            return CheckResult(key, title, ok, detail, time.perf_counter() - start, data)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


# ---------------------------------------------------------------------------
# instance generators

def grassmann_triples(ns: Sequence[int], ls: Sequence[int]) -> Iterator[GrassmannProblem]:
    """Every s = 1 problem with N = l."""
    for n in ns:
        for l in ls:
            if not 0 < l < n:
                continue
            words = all_strings(n, l)
            for a, b, c in itertools.product(words, repeat=3):
                yield GrassmannProblem((a,), b, c, l)


def compatible_triples(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Unordered triples in S_n whose lengths add up to n(n-1)/2."""
    top = n * (n - 1) // 2
    perms = sorted(itertools.permutations(range(1, n + 1)))
    by_len: dict[int, list] = {}
    for p in perms:
        by_len.setdefault(perm_length(p), []).append(p)
    out = []
    for a_idx, a in enumerate(perms):
        la = perm_length(a)
        for b in perms[a_idx:]:
            lc = top - la - perm_length(b)
            for c in by_len.get(lc, []):
                if c >= b:
                    out.append((a, b, c))
    return out


def random_ordered(triples: Sequence, count: int, rng: random.Random) -> list:
    out = []
    for _ in range(count):
        t = list(rng.choice(triples))
        rng.shuffle(t)
        out.append(tuple(t))
    return out


def random_playout(pos: GamePosition, rng: random.Random, max_steps: int = 500,
                   split_prob: float = 0.2) -> Iterator[tuple[GamePosition, object]]:
    """Yield (position, action) pairs along a random play until no move remains."""
    for _ in range(max_steps):
        moves = legal_moves(pos)
        splits = [Split(rid, sub) for rid in pos.region_ids() for sub in all_splits(pos, rid)]
        if not moves and not splits:
            return
        if moves and (not splits or rng.random() >= split_prob):
            action = rng.choice(moves)
        else:
            action = rng.choice(splits)
        nxt = apply_action(pos, action)
        yield nxt, action
        pos = nxt
        if not moves:
            return


def random_permutations(n: int, m: int, rng: random.Random) -> list[tuple[int, ...]]:
    out = []
    for _ in range(m):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        out.append(tuple(p))
    return out


# ---------------------------------------------------------------------------
# the checks

EXAMPLE = GrassmannProblem(("1010101",), "1001011", "0100111", 3)
EXAMPLE_PERMS = ("2 4 6 1 3 5 7 8 9 10", "5 6 8 1 2 3 4 7 9 10", "4 3 1 10 9 8 7 6 5 2")


def _fmt(perm) -> str:
    return " ".join(map(str, perm))


@_timed("1", "encoding golden test")
def check_encoding():
    got = (_fmt(encode_pi(EXAMPLE.sigmas[0], 3)), _fmt(encode_pi_prime(EXAMPLE.mu, 3)),
           _fmt(encode_pi_doubleprime(EXAMPLE.nu, 3)))
    return got == EXAMPLE_PERMS, " | ".join(got), {}


def lr_triples(rows: int = 4, cols: int = 4, max_boxes: int = 8):
    """(lam, mu, nu) with nu in the box, |nu| <= max_boxes, mu inside nu, |lam| = |nu/mu|."""
    for nu in partitions_in_box(rows, cols):
        total = sum(nu)
        if total > max_boxes:
            continue
        for mu in partitions_in_box(rows, cols):
            if sum(mu) > total or any(a > b for a, b in zip(mu, nu)):
                continue
            for lam in partitions_in_box(rows, cols, total - sum(mu)):
                yield lam, mu, nu


@_timed("2", "pictures = LR tableaux")
def check_pictures_lr():
    bad, count = [], 0
    for lam, mu, nu in lr_triples():
        count += 1
        pictures = count_pictures(french(lam), SkewShape(nu, mu))
        lr = lr_coefficient(lam, mu, nu)
        if pictures != lr:
            bad.append((lam, mu, nu, pictures, lr))
    return not bad, f"{count} triples, {len(bad)} mismatches", {"bad": bad[:10]}


@_timed("3", "Grassmannian win <=> positive (n=4..6, s=1, N=l)")
def check_grassmann_exhaustive(ns=(4, 5, 6), ls=(1, 2, 3), use_solver: bool = True):
    bad, count, positive = [], 0, 0
    for prob in grassmann_triples(ns, ls):
        count += 1
        number = grassmann_intersection(prob.sigmas, prob.mu, prob.nu)
        positive += number > 0
        win = win_grassmannian(prob)
        if win.won != (number > 0):
            bad.append(("grga", prob.to_json(), win.status, number))
        if use_solver:
            verdict = solve(build_game(prob))
            if verdict.winnable != (number > 0):
                bad.append(("solver", prob.to_json(), verdict.status, number))
    return (not bad, f"{count} instances, {positive} positive, {len(bad)} disagreements",
            {"bad": bad[:10]})


def grga_structure_problems(prob: GrassmannProblem) -> list[str]:
    """Structural complaints about the GRGA run on one positive s = 1 instance."""
    out = []
    win = win_grassmannian(prob)
    if not win.won:
        return [f"not won: {win.reason}"]
    if any(isinstance(a, Split) for a in win.trace):
        out.append("split after setup")
    if any(not isinstance(a, Move) or a.label != 1 for a in win.trace):
        out.append("non label-1 action")
    pos = build_game(prob)
    # grga_run itself checks monotonicity and per-row ready counts at each state
    run = grga_run(pos, problem_picture(prob), prob.rows, 1, check=True)
    if not is_won(run.final, WinMode.EXACT):
        out.append("final position not won")
    if not verify_certificate(pos, win.trace):
        out.append("trace does not replay to a win")
    return out


@_timed("4", "GRGA structure on positive instances")
def check_grga_structure(ns=(4, 5, 6), ls=(1, 2, 3)):
    bad, count = [], 0
    for prob in grassmann_triples(ns, ls):
        if quick_zero(prob) or grassmann_intersection(prob.sigmas, prob.mu, prob.nu) == 0:
            continue
        count += 1
        try:
            problems = grga_structure_problems(prob)
        except Exception as exc:  # report, do not abort the sweep
            problems = [f"{type(exc).__name__}: {exc}"]
        if problems:
            bad.append((prob.to_json(), problems))
    return not bad, f"{count} positive instances, {len(bad)} with problems", {"bad": bad[:10]}


@_timed("5", "soundness: winnable => integral >= 1")
def check_soundness(seed: int = 5, n4: int = 1000, n5: int = 300, converse_sample: int = 10000):
    rng = random.Random(seed)
    t4, t5 = compatible_triples(4), compatible_triples(5)
    violations = []
    for n, triples, k in ((4, t4, n4), (5, t5, n5)):
        for perms in random_ordered(triples, k, rng):
            verdict = solve(initial_position(perms))
            if verdict.winnable and flag_intersection(perms) < 1:
                violations.append(perms)
    converse4 = []
    for perms in t4:
        if solve(initial_position(perms)).winnable != (flag_intersection(perms) > 0):
            converse4.append(perms)
    table: Counter = Counter()
    for perms in random_ordered(t5, converse_sample, rng):
        table[(bool(solve(initial_position(perms)).winnable), flag_intersection(perms) > 0)] += 1
    table_text = ", ".join(f"win={w}/pos={p}: {c}" for (w, p), c in sorted(table.items()))
    detail = (f"{n4}+{n5} sampled, {len(violations)} violations; S4 converse "
              f"{len(t4) - len(converse4)}/{len(t4)}; S5 sample [{table_text}]")
    return not violations and not converse4, detail, {"s5_table": dict(table)}


@_timed("6", "flag number of encoded problem = Grassmannian number")
def check_flag_vs_grassmann(max_n: int = 5, max_l: int = 2):
    bad, count = [], 0
    for n in range(2, max_n + 1):
        for l in range(1, min(max_l, n - 1) + 1):
            for N in sorted({0, l}):
                for a, b, c in itertools.product(all_strings(n, l), repeat=3):
                    prob = GrassmannProblem((a,), b, c, N)
                    count += 1
                    lhs = flag_intersection(problem_permutations(prob))
                    rhs = grassmann_intersection([a], b, c)
                    if lhs != rhs:
                        bad.append((prob.to_json(), lhs, rhs))
    return not bad, f"{count} problems, {len(bad)} mismatches", {"bad": bad[:10]}


def atmost_instances(max_n: int = 5, max_l: int = 2, max_s: int = 2) -> Iterator[GrassmannProblem]:
    """Problems of degree below the dimension, N = l."""
    for n in range(2, max_n + 1):
        for l in range(1, min(max_l, n - 1) + 1):
            words = all_strings(n, l)
            for s in range(1, max_s + 1):
                for combo in itertools.product(words, repeat=s + 2):
                    degree = sum(sum(shape_of_string(w)) for w in combo)
                    if degree < l * (n - l):
                        yield GrassmannProblem(tuple(combo[:s]), combo[s], combo[s + 1], l)


@_timed("7", "at-most-one game <=> product nonzero")
def check_atmost(max_n: int = 5):
    bad, count = [], 0
    for prob in atmost_instances(max_n):
        count += 1
        pos = build_game(prob)
        verdict = solve(pos, WinMode.AT_MOST_ONE)
        nonzero = bool(grassmann_product([*prob.sigmas, prob.mu, prob.nu]))
        if verdict.winnable != nonzero:
            bad.append((prob.to_json(), verdict.status, nonzero))
        elif verdict.winnable and not verify_certificate(pos, verdict.certificate, WinMode.AT_MOST_ONE):
            bad.append((prob.to_json(), "bad certificate", nonzero))
    return not bad, f"{count} products, {len(bad)} disagreements", {"bad": bad[:10]}


@_timed("8", "s=2 induction wins exactly the positive instances")
def check_induction(max_n: int = 5, max_l: int = 2):
    bad, count, positive = [], 0, 0
    for n in range(2, max_n + 1):
        for l in range(1, min(max_l, n - 1) + 1):
            for a1, a2, b, c in itertools.product(all_strings(n, l), repeat=4):
                prob = GrassmannProblem((a1, a2), b, c, l)
                count += 1
                number = grassmann_intersection(prob.sigmas, b, c)
                positive += number > 0
                win = win_grassmannian(prob)
                if win.won != (number > 0):
                    bad.append((prob.to_json(), win.status, number))
                elif win.won and not verify_certificate(build_game(prob), win.trace):
                    bad.append((prob.to_json(), "certificate rejected", number))
    return (not bad, f"{count} instances, {positive} positive, {len(bad)} failures",
            {"bad": bad[:10]})


def _random_grassmann(rng: random.Random, s: int = 2) -> GrassmannProblem:
    n = rng.randint(3, 5)
    l = rng.randint(1, min(2, n - 1))
    words = all_strings(n, l)
    return GrassmannProblem(tuple(rng.choice(words) for _ in range(s)),
                            rng.choice(words), rng.choice(words), l)


@_timed("9", "verdicts invariant under permuting classes")
def check_symmetry(seed: int = 9, count: int = 200):
    rng = random.Random(seed)
    t4, t5 = compatible_triples(4), compatible_triples(5)
    bad = []
    for idx in range(count):
        perms = rng.choice(t4 if idx % 2 else t5)
        verdicts = set()
        numbers = set()
        for order in itertools.permutations(perms):
            verdicts.add(solve(initial_position(order)).winnable)
            numbers.add(flag_intersection(order))
        if len(verdicts) != 1 or len(numbers) != 1:
            bad.append(("flag", perms))
        prob = _random_grassmann(rng)
        wins, nums, solver_verdicts = set(), set(), set()
        for order in itertools.permutations(prob.sigmas):
            swapped = GrassmannProblem(order, prob.mu, prob.nu, prob.N)
            wins.add(win_grassmannian(swapped).won)
            nums.add(grassmann_intersection(order, prob.mu, prob.nu))
            solver_verdicts.add(solve(build_game(swapped)).winnable)
        if len(wins) != 1 or len(nums) != 1 or len(solver_verdicts) != 1:
            bad.append(("grassmann", prob.to_json()))
    return not bad, f"{count} flag + {count} Grassmannian instances, {len(bad)} asymmetric", {"bad": bad[:10]}


def random_positions(rng: random.Random, count: int) -> list[GamePosition]:
    """Positions from random play, half of them along winning certificates."""
    out: list[GamePosition] = []
    t4 = compatible_triples(4)
    while len(out) < count:
        if len(out) % 2:
            perms = random_permutations(rng.randint(3, 5), 3, rng)
            pos = initial_position(perms)
            trail = [p for p, _ in random_playout(pos, rng, max_steps=60)]
            out.append(rng.choice(trail) if trail else pos)
        else:
            perms = rng.choice(t4)
            pos = initial_position(perms)
            verdict = solve(pos)
            if not verdict.winnable:
                continue
            cut = rng.randint(0, len(verdict.certificate))
            for action in verdict.certificate[:cut]:
                pos = apply_action(pos, action)
            out.append(pos)
    return out


@_timed("10", "transverse <=> region solved; worked example datum")
def check_geometry(seed: int = 10, count: int = 500):
    rng = random.Random(seed)
    bad, regions = [], 0
    for pos in random_positions(rng, count):
        for rid in pos.region_ids():
            regions += 1
            if is_transverse(weight_datum(pos, rid)) != region_won(pos, rid):
                bad.append(pos.to_json())
    datum = weight_datum(build_game(EXAMPLE), big_region_id(EXAMPLE))
    spans = {name: " ".join(f"{i}{j}" if j < 10 else f"{i} {j}" for i, j in sorted(ws))
             for name, ws in (("U1", datum.weightsU[0]), ("U2", datum.weightsU[1]),
                              ("U23", datum.weightsU_not2))}
    expected = {
        "U1": "14 24 25 34 35 36",
        "U2": "14 15 16 17 24 25 26 27 34 35 36 37 38",
        "U23": "18 19 28 29 39 3 10",
    }
    v_expected = {(i, j) for i in (1, 2, 3) for j in range(4, 11)} - {(1, 10), (2, 10)}
    example_ok = (spans == expected and datum.weightsV == v_expected
                  and transverse_replacing_first(datum))
    ok = not bad and example_ok
    return ok, (f"{count} positions, {regions} regions, {len(bad)} mismatches; "
                f"example datum {'matches' if example_ok else 'differs'}"), {"spans": spans}


@_timed("11", "potential strictly increases and stays bounded")
def check_potential(seed: int = 11, count: int = 1000):
    rng = random.Random(seed)
    bad, moves = [], 0
    for _ in range(count):
        n = rng.randint(3, 6)
        pos = initial_position(random_permutations(n, rng.randint(2, 4), rng))
        bound = pos.max_potential()
        phi = pos.potential()
        for nxt, action in random_playout(pos, rng, max_steps=10**4):
            if isinstance(action, Move):
                moves += 1
                if nxt.potential() <= phi:
                    bad.append(("not increasing", action))
            elif nxt.potential() != phi:
                bad.append(("split changed potential", action))
            phi = nxt.potential()
            if phi > bound:
                bad.append(("bound exceeded", phi, bound))
    return not bad, f"{count} play-outs, {moves} moves, {len(bad)} violations", {"bad": bad[:10]}


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "1": check_encoding,
    "2": check_pictures_lr,
    "3": check_grassmann_exhaustive,
    "4": check_grga_structure,
    "5": check_soundness,
    "6": check_flag_vs_grassmann,
    "7": check_atmost,
    "8": check_induction,
    "9": check_symmetry,
    "10": check_geometry,
    "11": check_potential,
}


def run_checks(keys: Sequence[str] | None = None,
               report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    results = []
    for key in keys or list(CHECKS):
        result = CHECKS[key]()
        results.append(result)
        if report is not None:
            report(result)
    return results
