"""Command-line front end: load JSON games, solve, transfer, verify.

Exit codes: 0 success / claims hold; 1 claim failure or not determined;
2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import corpus as corpus_mod
from . import jsonio
from .errors import (EqTransferError, NotDeterminedError, SchemaError,
                     TooLargeError, UnknownNameError)
from .extensive import GameTree, kuhn_via_transfer, to_normal_form
from .graph_games import (MultiOutcomeGraphGame, PositionalStrategy,
                          multi_outcome_ne, solve_muller, solve_parity)
from .normal_form import (DEFAULT_OUTCOME_CAP, DEFAULT_PROFILE_CAP,
                          GameStructure, NormalFormGame, find_all_ne,
                          is_determined, is_nash_equilibrium)
from .transfer import transfer_equilibrium

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for line in report.get("lines", []):
        print(line)


def _load(path: str):
    try:
        return jsonio.load(path)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def _require_game(value) -> NormalFormGame:
    if isinstance(value, NormalFormGame):
        return value
    if isinstance(value, tuple) and isinstance(value[0], GameTree):
        tree, prefs = value
        return NormalFormGame(to_normal_form(tree), prefs)
    raise SchemaError("input must be a game with preferences")


def _require_structure(value) -> GameStructure:
    if isinstance(value, GameStructure):
        return value
    if isinstance(value, NormalFormGame):
        return value.structure
    if isinstance(value, GameTree):
        return to_normal_form(value)
    if isinstance(value, tuple) and isinstance(value[0], GameTree):
        return to_normal_form(value[0])
    raise SchemaError("input must be a game structure")


def _profile_cap(args) -> int:
    return args.cap if args.cap is not None else DEFAULT_PROFILE_CAP


def _outcome_cap(args) -> int:
    return args.cap if args.cap is not None else DEFAULT_OUTCOME_CAP


def _cmd_solve(args) -> int:
    game = _require_game(_load(args.input))
    nes = find_all_ne(game, cap=_profile_cap(args))
    report = {
        "command": "solve",
        "equilibria": [list(p) for p in nes],
        "count": len(nes),
        "lines": [f"{len(nes)} Nash equilibria"]
                 + [f"  {tuple(p)}" for p in nes],
    }
    _emit(report, args.json)
    return EXIT_OK


def _cmd_check_determinacy(args) -> int:
    st = _require_structure(_load(args.input))
    determined = is_determined(st, cap=_outcome_cap(args))
    report = {
        "command": "check-determinacy",
        "determined": determined,
        "lines": ["determined" if determined else "not determined"],
    }
    _emit(report, args.json)
    return EXIT_OK if determined else EXIT_FAIL


def _counter_lines(counter, n: int) -> list[str]:
    ok_w = counter.winner_calls <= n
    ok_s = counter.strategy_calls <= 2
    return [
        f"winner_calls = {counter.winner_calls} "
        f"({'<=' if ok_w else '>'} n = {n})",
        f"strategy_calls = {counter.strategy_calls} "
        f"({'<=' if ok_s else '>'} 2)",
    ]


def _cmd_transfer(args) -> int:
    value = _load(args.input)
    oracle_kind = args.oracle
    if oracle_kind in ("brute", "tree"):
        if oracle_kind == "tree":
            if not (isinstance(value, tuple) and isinstance(value[0], GameTree)):
                raise SchemaError("tree oracle needs a tree with preferences")
            tree, prefs = value
            profile, counter = kuhn_via_transfer(tree, prefs,
                                                 cap=_profile_cap(args))
            n = tree.outcomes.size
            outcome = to_normal_form(tree).outcome(profile)
            label = tree.outcomes.label(outcome)
        else:
            game = _require_game(value)
            profile, counter = transfer_equilibrium(game)
            n = game.structure.outcomes.size
            outcome = game.structure.outcome(profile)
            label = game.structure.outcomes.label(outcome)
        report = {
            "command": "transfer",
            "oracle": oracle_kind,
            "profile": list(profile),
            "outcome": outcome,
            "outcome_label": label,
            "winner_calls": counter.winner_calls,
            "strategy_calls": counter.strategy_calls,
            "lines": [f"Nash equilibrium: {tuple(profile)} "
                      f"-> outcome {label}"] + _counter_lines(counter, n),
        }
        _emit(report, args.json)
        return EXIT_OK
    if not isinstance(value, MultiOutcomeGraphGame):
        raise SchemaError(f"{oracle_kind} oracle needs a graph game input")
    wanted_kind = "priority" if oracle_kind == "parity" else "muller"
    if value.kind != wanted_kind:
        raise SchemaError(f"input is a {value.kind} game, oracle is "
                          f"{oracle_kind}")
    eq = multi_outcome_ne(value)
    n = value.outcomes.size
    report = {
        "command": "transfer",
        "oracle": oracle_kind,
        "outcome": eq.outcome,
        "outcome_label": value.outcomes.label(eq.outcome),
        "winner_calls": eq.counter.winner_calls,
        "strategy_calls": eq.counter.strategy_calls,
        "restricted": eq.restricted,
        "strategies": [_strategy_obj(eq.strategy_1), _strategy_obj(eq.strategy_2)],
        "lines": [f"Nash equilibrium outcome: "
                  f"{value.outcomes.label(eq.outcome)}",
                  f"strategy class respected: {eq.restricted}"]
                 + _counter_lines(eq.counter, n),
    }
    _emit(report, args.json)
    return EXIT_OK


def _strategy_obj(strategy) -> dict:
    if isinstance(strategy, PositionalStrategy):
        return {"type": "positional", "player": strategy.player,
                "moves": {str(v): w for v, w in sorted(strategy.moves.items())}}
    return {"type": "finite-memory", "player": strategy.player,
            "memory_bound": strategy.num_states}


def _cmd_solve_parity(args) -> int:
    value = _load(args.input)
    if not hasattr(value, "succ"):
        raise SchemaError("solve-parity needs a plain arena input")
    with open(args.input, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    start = raw["start"]
    winner, strat = solve_parity(value, start)
    report = {
        "command": "solve-parity",
        "winner": winner,
        "strategy": _strategy_obj(strat),
        "lines": [f"player {winner} wins from vertex {start}",
                  f"positional strategy: "
                  f"{dict(sorted(strat.moves.items()))}"],
    }
    _emit(report, args.json)
    return EXIT_OK


def _cmd_solve_muller(args) -> int:
    value = _load(args.input)
    if not hasattr(value, "succ"):
        raise SchemaError("solve-muller needs a plain arena input")
    with open(args.input, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    win_sets = raw.get("win_sets")
    if not isinstance(win_sets, list):
        raise SchemaError("solve-muller needs a win_sets list in the input")
    start = raw["start"]
    winner, machine = solve_muller(value, start, [frozenset(s) for s in win_sets])
    report = {
        "command": "solve-muller",
        "winner": winner,
        "strategy": _strategy_obj(machine),
        "lines": [f"player {winner} wins from vertex {start}",
                  f"finite-memory strategy, <= {machine.num_states} states"],
    }
    _emit(report, args.json)
    return EXIT_OK


def _cmd_verify_ne(args) -> int:
    game = _require_game(_load(args.input))
    try:
        profile = tuple(int(x) for x in args.profile.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad profile {args.profile!r}: "
                          "expected comma-separated indices") from exc
    if len(profile) != game.structure.players:
        raise SchemaError(f"profile has {len(profile)} entries for "
                          f"{game.structure.players} players")
    for player, (s, c) in enumerate(zip(profile,
                                        game.structure.strategy_counts)):
        if not (0 <= s < c):
            raise SchemaError(f"strategy {s} of player {player + 1} "
                              f"out of range 0..{c - 1}")
    ok = is_nash_equilibrium(game, profile)
    report = {
        "command": "verify-ne",
        "profile": list(profile),
        "is_nash_equilibrium": ok,
        "lines": [f"{profile} is {'an equilibrium' if ok else 'not an equilibrium'}"],
    }
    _emit(report, args.json)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_corpus(args) -> int:
    if args.action == "list":
        entries = corpus_mod.list_entries()
        report = {
            "command": "corpus-list",
            "entries": [{"name": n, "description": d} for n, d in entries],
            "lines": [f"{n}: {d}" for n, d in entries],
        }
        _emit(report, args.json)
        return EXIT_OK
    if not args.name:
        raise SchemaError("corpus build/verify needs an entry name")
    entry = corpus_mod.build(args.name, n=args.n)
    if args.action == "build":
        lines = [f"{entry.name}: {entry.description}"]
        if entry.executable:
            st = entry.structure
            lines.append(f"strategies {st.strategy_counts}, "
                         f"{st.outcomes.size} outcomes, "
                         f"{len(entry.claims)} claims")
        else:
            lines.append("statement only, not executable")
        report = {
            "command": "corpus-build",
            "name": entry.name,
            "executable": entry.executable,
            "claims": [c.name for c in entry.claims],
            "lines": lines,
        }
        _emit(report, args.json)
        return EXIT_OK
    reports = corpus_mod.verify(entry, seed=args.seed, samples=args.samples)
    all_ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        status = "confirmed" if r.passed else "FAILED"
        mode = "exhaustive" if r.exhaustive else "sampled"
        lines.append(f"{r.claim}: {status} ({mode}; {r.detail})")
    if not entry.executable:
        lines.append("statement only, not executable; nothing to verify")
    report = {
        "command": "corpus-verify",
        "name": entry.name,
        "passed": all_ok,
        "claims": [{"claim": r.claim, "passed": r.passed,
                    "exhaustive": r.exhaustive, "detail": r.detail}
                   for r in reports],
        "lines": lines,
    }
    _emit(report, args.json)
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqtransfer",
        description="Solve games and transfer win-lose determinacy into "
                    "Nash equilibria.")
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON report")
    parser.add_argument("--cap", type=int, default=None,
                        help="profile/outcome enumeration cap")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate all Nash equilibria")
    p.add_argument("input")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check-determinacy",
                       help="check every derived win-lose game has a winner")
    p.add_argument("input")
    p.set_defaults(func=_cmd_check_determinacy)

    p = sub.add_parser("transfer",
                       help="compute a Nash equilibrium via a win-lose oracle")
    p.add_argument("input")
    p.add_argument("--oracle", choices=("brute", "tree", "parity", "muller"),
                   default="brute")
    p.set_defaults(func=_cmd_transfer)

    p = sub.add_parser("solve-parity", help="solve a parity game on an arena")
    p.add_argument("input")
    p.set_defaults(func=_cmd_solve_parity)

    p = sub.add_parser("solve-muller", help="solve a Muller game on an arena")
    p.add_argument("input")
    p.set_defaults(func=_cmd_solve_muller)

    p = sub.add_parser("verify-ne", help="check a profile for equilibrium")
    p.add_argument("input")
    p.add_argument("--profile", required=True,
                   help="comma-separated strategy indices, 0-based")
    p.set_defaults(func=_cmd_verify_ne)

    p = sub.add_parser("corpus", help="list, build, or verify corpus entries")
    p.add_argument("action", choices=("list", "build", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int, default=None,
                   help="size parameter for parametric entries")
    p.add_argument("--samples", type=int, default=1000,
                   help="sample count for non-exhaustive claims")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (SchemaError, UnknownNameError, TooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotDeterminedError as exc:
        print(f"not determined: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except EqTransferError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
