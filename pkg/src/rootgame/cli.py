"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 solver budget exhausted,
3 disagreement between the game and an oracle (or a failed sweep).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .game import (GameError, GamePosition, Move, Split, WinMode, all_splits, apply_move,
                   format_permutation, initial_position, is_won, legal_moves,
                   move_displacements, parse_permutation, perm_length, split,
                   splittable_subsets)
from .geometry import is_transverse, weight_datum
from .grassmann import (GRGAError, GrassmannProblem, build_game, build_game_actions,
                        grga_run, problem_picture, quick_zero,
                        readiness_numbers, shapes, win_grassmannian)
from .pictures import count_pictures, enumerate_pictures, grassmann_intersection, lr_coefficient, lr_tableaux
from .render import render
from .schubert import flag_intersection, flag_product_nonzero
from .shapes import ShapeError, SkewShape, french
from .solver import BudgetExceeded, Verdict, action_from_json, solve, verify_certificate
from .sweeps import CHECKS, run_checks

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_DISAGREE = 0, 1, 2, 3

# beyond this board size the polynomial oracle is too slow to run by default
ORACLE_MAX_N = 8

log = logging.getLogger("rootgame")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _parse_shape(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}") from exc
    if any(p < 0 for p in parts):
        raise UsageError(f"bad partition {text!r}")
    return parts


def _mode(args) -> WinMode:
    return WinMode.AT_MOST_ONE if args.mode == "atmost" else WinMode.EXACT


def _solve(args, pos: GamePosition) -> Verdict:
    verdict = solve(pos, _mode(args), args.budget, args.threads)
    if args.certificate and verdict.certificate is not None:
        with open(args.certificate, "w") as fh:
            json.dump([a.to_json() for a in verdict.certificate], fh, indent=1)
    return verdict


def _problem(args) -> GrassmannProblem:
    if getattr(args, "problem", None):
        prob = GrassmannProblem.load(args.problem)
        if args.N is not None:
            prob = prob.with_N(args.N)
        return prob
    if not args.sigma or args.mu is None or args.nu is None:
        raise UsageError("give --sigma (repeatable), --mu and --nu, or --problem FILE")
    l = args.mu.count("1")
    return GrassmannProblem(tuple(args.sigma), args.mu, args.nu, l if args.N is None else args.N)


# ---------------------------------------------------------------------------
# commands

def cmd_flag(args) -> int:
    perms = [parse_permutation(p) for p in args.perms]
    n = args.n if args.n is not None else len(perms[0])
    if any(len(p) != n for p in perms):
        raise UsageError(f"all permutations must lie in S_{n}")
    pos = initial_position(perms, n)
    verdict = _solve(args, pos)
    degree = sum(perm_length(p) for p in perms)
    oracle = None
    if n <= ORACLE_MAX_N or args.force_oracle:
        if _mode(args) is WinMode.EXACT:
            oracle = flag_intersection(perms, n)
            expected = oracle > 0
        else:
            oracle = int(flag_product_nonzero(perms, n))
            expected = bool(oracle)
    agree = None if oracle is None or verdict.winnable is None else verdict.winnable == expected
    payload = {"perms": [list(p) for p in perms], "n": n, "degree": degree,
               "dimension": n * (n - 1) // 2, "mode": args.mode, "verdict": verdict.to_json(),
               "oracle": oracle, "agree": agree}
    text = [f"permutations: {' '.join(format_permutation(p) for p in perms)} (degree {degree} of {n * (n - 1) // 2})",
            f"game ({args.mode}): {verdict.status} [{verdict.nodes} nodes]"]
    if oracle is not None:
        label = "intersection number" if _mode(args) is WinMode.EXACT else "product nonzero"
        text.append(f"{label}: {oracle}")
    if agree is not None:
        text.append("agreement: " + ("yes" if agree else "NO"))
    if args.show_certificate and verdict.certificate:
        text.extend("  " + _describe(a) for a in verdict.certificate)
    _emit(args, payload, "\n".join(text))
    if verdict.status == "unknown":
        return EXIT_BUDGET
    return EXIT_DISAGREE if agree is False else EXIT_OK


def cmd_grass(args) -> int:
    prob = _problem(args)
    number = grassmann_intersection(prob.sigmas, prob.mu, prob.nu)
    win = win_grassmannian(prob)
    verdict = None
    if args.solver:
        verdict = _solve(args, build_game(prob))
    agree = win.won == (number > 0)
    if win.status == "failed" and prob.N < prob.l:
        agree = None  # allowed to fail below the sufficient bound
    if verdict is not None and verdict.winnable is not None:
        expected = number > 0 if _mode(args) is WinMode.EXACT else None
        if expected is not None and verdict.winnable != expected:
            agree = False
    payload = {"problem": prob.to_json(), "number": number, "quick_zero": quick_zero(prob),
               "grga": win.status, "reason": win.reason,
               "trace": [a.to_json() for a in win.full_trace()] if args.trace else None,
               "solver": verdict.to_json() if verdict else None, "agree": agree}
    text = [f"problem: sigmas={','.join(prob.sigmas)} mu={prob.mu} nu={prob.nu} N={prob.N}",
            f"intersection number: {number}",
            f"constructive win: {win.status}" + (f" ({win.reason})" if win.reason else "")]
    if verdict is not None:
        text.append(f"solver ({args.mode}): {verdict.status} [{verdict.nodes} nodes]")
    text.append("agreement: " + {True: "yes", False: "NO", None: "n/a"}[agree])
    if args.trace:
        text.extend("  " + _describe(a) for a in win.full_trace())
    _emit(args, payload, "\n".join(text))
    if verdict is not None and verdict.status == "unknown":
        return EXIT_BUDGET
    return EXIT_DISAGREE if agree is False else EXIT_OK


def cmd_lr(args) -> int:
    lam, mu, nu = _parse_shape(args.lam), _parse_shape(args.mu), _parse_shape(args.nu)
    count = lr_coefficient(lam, mu, nu)
    rows = max(len(lam), len(mu), len(nu))
    outer, inner = french(nu, rows), french(mu, rows)
    pictures = None
    if all(a >= b for a, b in zip(outer, inner)):
        pictures = count_pictures(french(lam), SkewShape(outer, inner))
    else:
        pictures = 0
    payload = {"lambda": lam, "mu": mu, "nu": nu, "lr": count, "pictures": pictures}
    text = [f"LR coefficient: {count}", f"pictures: {pictures}"]
    if args.list:
        tableaux = [sorted(t.items()) for t in lr_tableaux(lam, mu, nu)]
        payload["tableaux"] = [[[r, c, v] for (r, c), v in t] for t in tableaux]
        for t in tableaux:
            text.append("  " + " ".join(f"({r},{c})={v}" for (r, c), v in t))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if pictures == count else EXIT_DISAGREE


def cmd_pictures(args) -> int:
    lam = _parse_shape(args.lam)
    outer, inner = _parse_shape(args.outer), _parse_shape(args.inner or "")
    rows = max(len(outer), len(inner))
    outer, inner = french(outer, rows), french(inner, rows)
    try:
        skew = SkewShape(outer, inner)
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc
    pics = enumerate_pictures(french(lam), skew)
    payload = {"lambda": lam, "outer": outer, "inner": inner, "count": len(pics)}
    text = [f"pictures: {len(pics)}"]
    if args.list:
        payload["pictures"] = [[[list(a), list(b)] for a, b in zip(p.source, p.images)] for p in pics]
        for p in pics:
            text.append("  " + " ".join(f"{a}->{b}" for a, b in zip(p.source, p.images)))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_trace(args) -> int:
    prob = _problem(args)
    if prob.s != 1:
        raise UsageError("grga-trace needs exactly one sigma")
    pos, setup = build_game_actions(prob)
    picture = problem_picture(prob)
    if picture is None:
        _emit(args, {"problem": prob.to_json(), "picture": None},
              "no picture: the intersection number is zero")
        return EXIT_OK
    panels = []
    try:
        run = grga_run(pos, picture, prob.rows, 1, observe=panels.append)
        error = None
    except GRGAError as exc:
        run, error = None, str(exc)
    payload = {"problem": prob.to_json(), "setup": [a.to_json() for a in setup],
               "picture": [[list(a), list(b)] for a, b in zip(picture.source, picture.images)],
               "panels": [{"step": p.step, "moves": [m.to_json() for m in p.moves],
                           "readiness": p.state.to_json(), "position": p.position.to_json()}
                          for p in panels],
               "won": run is not None and is_won(run.final), "error": error}
    text = []
    for idx, p in enumerate(panels, 1):
        moves = ", ".join(f"({m.i},{m.j})" for m in p.moves) or "-"
        text.append(f"panel {idx}: {p.step} {moves}")
        text.append(_readiness_grid(prob, p.state))
    text.append("won" if payload["won"] else f"failed: {error}")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if error is None else EXIT_DISAGREE


def _readiness_grid(prob: GrassmannProblem, state) -> str:
    """The big rectangle with unplaced tokens and empty skew squares showing readiness."""
    table = readiness_numbers(state)
    token_at = {state.current[o]: r for o, r in table["tokens"].items()}
    placed = {state.current[o] for o in state.placed}
    sh = shapes(prob)
    lines = []
    for r in range(1, prob.rows + 1):
        cells = []
        for c in range(1, prob.cols + 1):
            sq = (r, prob.rows + c)
            if c > sh.outer[r - 1]:
                cells.append(" # ")
            elif sq in token_at:
                cells.append(f"{token_at[sq]:^3}")
            elif sq in placed:
                cells.append(" * ")
            elif sq in table["squares"]:
                cells.append(f"[{table['squares'][sq]}]")
            else:
                cells.append(" . ")
        lines.append("   " + "".join(cells))
    return "\n".join(lines)


def _position_from_args(args) -> GamePosition:
    if args.position:
        with open(args.position) as fh:
            return GamePosition.from_json(json.load(fh))
    if args.perms:
        return initial_position([parse_permutation(p) for p in args.perms])
    if args.sigma:
        return build_game(_problem(args))
    raise UsageError("give permutations, --sigma/--mu/--nu, or --position FILE")


def cmd_render(args) -> int:
    pos = _position_from_args(args)
    payload = pos.to_json()
    if args.datum:
        payload["datum"] = [weight_datum(pos, rid).to_json() for rid in pos.region_ids()]
    text = render(pos)
    if args.datum:
        for rid in pos.region_ids():
            d = weight_datum(pos, rid)
            text += f"\nregion {rid}: transverse={is_transverse(d)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.certificate:
        pos = _position_from_args(args)
        with open(args.certificate) as fh:
            actions = [action_from_json(a) for a in json.load(fh)]
        ok = verify_certificate(pos, actions, _mode(args))
        _emit(args, {"valid": ok}, "certificate wins" if ok else "certificate does not win")
        return EXIT_OK if ok else EXIT_DISAGREE
    keys = args.only.split(",") if args.only else list(CHECKS)
    for key in keys:
        if key not in CHECKS:
            raise UsageError(f"unknown check {key!r}; choose from {', '.join(CHECKS)}")
    report = None if args.json else (lambda r: print(r.line(), flush=True))
    results = run_checks(keys, report)
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2))
    return EXIT_OK if all(r.passed for r in results) else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# interactive play

PLAY_HELP = """commands:
  show                      draw the board
  moves                     list legal moves
  splits [REGION]           list ideal splits (qualifying ones marked *)
  move K I J [REGION]       move K-tokens along (I,J); REGION like 1,2
  split REGION SQ [SQ ...]  split off the squares SQ (like 1,3) from REGION
  undo                      take back the last action
  hint                      ask the solver for a winning continuation
  quit"""


def _square(text: str):
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError as exc:
        raise GameError(f"bad square {text!r}; write it like 1,2") from exc


def _describe(action) -> str:
    if isinstance(action, Move):
        return f"move k={action.label} ({action.i},{action.j}) in region {action.region}"
    if isinstance(action, Split):
        return f"split region {action.region}: {sorted(action.subset)}"
    return f"relabel {action.source} -> {action.target}"


def play(pos: GamePosition, mode: WinMode, read=input, write=print) -> GamePosition:
    history: list[GamePosition] = []
    write(render(pos))
    while True:
        if is_won(pos, mode):
            write("won!")
            return pos
        try:
            line = read("> ").strip()
        except EOFError:
            return pos
        if not line:
            continue
        cmd, *rest = line.split()
        try:
            if cmd in ("quit", "exit", "q"):
                return pos
            if cmd == "help":
                write(PLAY_HELP)
            elif cmd == "show":
                write(render(pos))
            elif cmd == "moves":
                for mv in legal_moves(pos):
                    write("  " + _describe(mv))
            elif cmd == "splits":
                rids = [_square(rest[0])] if rest else pos.region_ids()
                for rid in rids:
                    good = set(splittable_subsets(pos, rid))
                    for sub in all_splits(pos, rid):
                        mark = "*" if sub in good else " "
                        write(f" {mark} {rid}: {' '.join(f'{i},{j}' for i, j in sorted(sub))}")
            elif cmd == "move":
                if len(rest) not in (3, 4):
                    raise GameError("usage: move K I J [REGION]")
                k, i, j = (int(x) for x in rest[:3])
                if len(rest) == 4:
                    rids = [_square(rest[3])]
                else:
                    rids = [rid for rid in pos.region_ids()
                            if move_displacements(pos, Move(rid, k, i, j))] or pos.region_ids()[:1]
                    if len(rids) > 1:
                        raise GameError("the move acts in several regions; name one")
                mv = Move(rids[0], k, i, j)
                if not move_displacements(pos, mv):
                    write("warning: this move displaces no token")
                    continue
                history.append(pos)
                pos = apply_move(pos, mv)
                write(render(pos))
            elif cmd == "split":
                if len(rest) < 2:
                    raise GameError("usage: split REGION SQ [SQ ...]")
                rid = _square(rest[0])
                sub = [_square(t) for t in rest[1:]]
                new = split(pos, rid, sub)
                history.append(pos)
                pos = new
                write(render(pos))
            elif cmd == "undo":
                if history:
                    pos = history.pop()
                write(render(pos))
            elif cmd == "hint":
                verdict = solve(pos, mode)
                if verdict.certificate is None:
                    write(f"solver: {verdict.status}")
                else:
                    write(f"solver: winnable in {len(verdict.certificate)} actions; next: "
                          + (_describe(verdict.certificate[0]) if verdict.certificate else "none"))
            else:
                write(f"unknown command {cmd!r}; type help")
        except (GameError, ValueError) as exc:
            write(f"illegal: {exc}")


def cmd_play(args) -> int:
    pos = _position_from_args(args)
    play(pos, _mode(args))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _add_common(p: argparse.ArgumentParser, solver: bool = True) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if solver:
        p.add_argument("--mode", choices=("exact", "atmost"), default="exact",
                       help="winning condition (default exact)")
        p.add_argument("--budget", type=int, default=None,
                       help="solver node budget (default $ROOTGAME_BUDGET or 10^7)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--certificate", metavar="FILE", help="write the winning actions as JSON")


def _add_problem(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma", action="append", default=[], help="01-string; repeat for s > 1")
    p.add_argument("--mu")
    p.add_argument("--nu")
    p.add_argument("--N", type=int, default=None, help="padding (default l)")
    p.add_argument("--problem", metavar="FILE", help='JSON {"sigmas": [...], "mu": ..., "nu": ..., "N": ...}')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootgame", description="Root games for Schubert calculus.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("flag-nonvanishing", help="decide a flag manifold problem")
    p.add_argument("perms", nargs="+", help="permutations like 2413 or 2,4,1,3")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--show-certificate", action="store_true")
    p.add_argument("--force-oracle", action="store_true", help="run the oracle even for large n")
    _add_common(p)
    p.set_defaults(func=cmd_flag)

    p = sub.add_parser("grass-nonvanishing", help="decide a Grassmannian problem")
    _add_problem(p)
    p.add_argument("--solver", action="store_true", help="also run the exhaustive solver")
    p.add_argument("--trace", action="store_true", help="print the winning trace")
    _add_common(p)
    p.set_defaults(func=cmd_grass)

    p = sub.add_parser("lr", help="Littlewood-Richardson coefficient c^nu_{lambda,mu}")
    p.add_argument("--lambda", dest="lam", required=True, help="comma separated, like 1,2,3")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--list", action="store_true")
    _add_common(p, solver=False)
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("pictures", help="pictures from a shape onto a skew shape")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", default="")
    p.add_argument("--list", action="store_true")
    _add_common(p, solver=False)
    p.set_defaults(func=cmd_pictures)

    p = sub.add_parser("grga-trace", help="panel-by-panel run of the winning algorithm")
    _add_problem(p)
    _add_common(p, solver=False)
    p.set_defaults(func=cmd_trace)

    for name, func, helptext in (("render", cmd_render, "draw a position"),
                                 ("play", cmd_play, "play interactively")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("perms", nargs="*")
        p.add_argument("--position", metavar="FILE", help="position JSON")
        _add_problem(p)
        if name == "render":
            p.add_argument("--datum", action="store_true", help="also show weight data")
            _add_common(p, solver=False)
        else:
            p.add_argument("--mode", choices=("exact", "atmost"), default="exact")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the verification sweeps, or check a certificate")
    p.add_argument("--only", help="comma separated check numbers, like 1,2,5")
    p.add_argument("perms", nargs="*", help="with --certificate: the starting permutations")
    p.add_argument("--position", metavar="FILE")
    _add_problem(p)
    p.add_argument("--certificate", metavar="FILE", help="certificate JSON to replay")
    p.add_argument("--mode", choices=("exact", "atmost"), default="exact")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GameError, ShapeError, ValueError, OSError) as exc:
        print(f"rootgame: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"rootgame: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
