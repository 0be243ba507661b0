"""Command-line front end.

Exit codes: 0 when the requested property holds or a campaign is clean,
1 when it fails or a counterexample is found, 2 for usage and input
errors.  Campaign timings go to the error stream so stdout stays
byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .boards import (
    BoardFormatError,
    GameBoard,
    check_board,
    load_board,
    save_board,
)
from .canonical import canonical_to_term
from .decide import decide_equiv, lattice_leq
from .embedding import embeds
from .fuzzing import (
    Counterexample,
    FuzzConfig,
    RunReport,
    cg_semantics_report,
    fuzz_axioms,
    fuzz_soundness,
)
from .normalize import normalize
from .semantics import (
    SemanticsError,
    eval_outcome,
    find_distinguishing_board,
    holds_identity,
)
from .syntax import ParseError, parse_term, print_term


def _read_board(path: str, *, require_con: bool = True) -> GameBoard:
    with open(path, "rb") as fh:
        return load_board(fh.read(), require_con=require_con)


def _print_counterexample(ce: Counterexample) -> None:
    print("first counterexample:")
    print(f"  check: {ce.check}")
    for i, text in enumerate(ce.inputs):
        print(f"  input[{i}]: {' '.join(text.split())}")
    print(f"  expected: {ce.expected}")
    print(f"  actual: {ce.actual}")
    print(f"  seed: {ce.seed}")


def _print_report(command: str, report: RunReport, report_dir: str | None) -> None:
    for name, (checked, failed) in report.by_check.items():
        print(f"{name}: {checked} checked, {failed} failed")
    print(f"total: {report.checked} checked, {report.failed} failed")
    if report.first_counterexample is not None:
        _print_counterexample(report.first_counterexample)
    payload = {
        "command": command,
        "checked": report.checked,
        "failed": report.failed,
        "by_check": {k: list(v) for k, v in report.by_check.items()},
    }
    print(json.dumps(payload, sort_keys=True))
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    if report_dir is not None:
        _write_report_files(
            command,
            report_dir,
            [(k, c, f) for k, (c, f) in report.by_check.items()],
        )


def _write_report_files(
    command: str, report_dir: str, rows: list[tuple[str, int, int]]
) -> None:
    from . import reporting

    os.makedirs(report_dir, exist_ok=True)
    csv_path = os.path.join(report_dir, f"{command}.csv")
    png_path = os.path.join(report_dir, f"{command}.png")
    reporting.write_rows_csv(csv_path, ["check", "checked", "failed"], rows)
    reporting.write_counts_png(
        png_path,
        [r[0] for r in rows],
        [r[1] for r in rows],
        [r[2] for r in rows],
        f"{command}: per-check instance counts",
    )
    print(f"report written to {report_dir}", file=sys.stderr)


def _cmd_normalize(args: argparse.Namespace) -> int:
    nf = normalize(parse_term(args.term))
    print(print_term(canonical_to_term(nf)))
    return 0


def _cmd_equiv(args: argparse.Namespace) -> int:
    result = decide_equiv(parse_term(args.term1), parse_term(args.term2))
    print(f"nf1: {print_term(canonical_to_term(result.nf1))}")
    print(f"nf2: {print_term(canonical_to_term(result.nf2))}")
    print("equivalent" if result.equivalent else "not equivalent")
    return 0 if result.equivalent else 1


def _cmd_leq(args: argparse.Namespace) -> int:
    verdict = lattice_leq(parse_term(args.term1), parse_term(args.term2))
    print("true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_embeds(args: argparse.Namespace) -> int:
    nf1 = normalize(parse_term(args.term1))
    nf2 = normalize(parse_term(args.term2))
    verdict = embeds(nf1, nf2)
    print("embeds" if verdict else "does not embed")
    return 0 if verdict else 1


def _cmd_eval(args: argparse.Namespace) -> int:
    board = _read_board(args.board)
    rel = eval_outcome(board, parse_term(args.term), args.player)
    pairs = [
        [s, sorted(g)]
        for s in sorted(rel.states)
        for g in sorted(rel.generators[s], key=lambda g: tuple(sorted(g)))
    ]
    print(json.dumps(pairs))
    return 0


def _cmd_valid(args: argparse.Namespace) -> int:
    parts = args.check.split("=")
    if len(parts) != 2:
        print("error: --check expects the form 'T1 = T2'", file=sys.stderr)
        return 2
    board = _read_board(args.board)
    t1 = parse_term(parts[0])
    t2 = parse_term(parts[1])
    if holds_identity(board, t1, t2):
        print("holds")
        return 0
    print("fails")
    return 1


def _cmd_check_board(args: argparse.Namespace) -> int:
    board = _read_board(args.file, require_con=False)
    report = check_board(board)
    print(f"mon: {str(report.mon).lower()}")
    print(f"con: {str(report.con).lower()}")
    print(f"fin: {str(report.fin).lower()}")
    print(f"det: {str(report.det).lower()}")
    print(f"violations: {len(report.violations)}")
    for v in report.violations[:5]:
        outcome = "{" + ", ".join(sorted(v.outcome)) + "}"
        print(f"  {v.condition} {v.subject} player{v.player} {v.state} {outcome}")
    return 0 if report.con else 1


def _cmd_find_board(args: argparse.Namespace) -> int:
    t1 = parse_term(args.terms[0])
    t2 = parse_term(args.terms[1])
    board = find_distinguishing_board(t1, t2, args.max_states)
    if board is None:
        print("none")
        return 0
    sys.stdout.write(save_board(board).decode("utf-8"))
    return 1


def _cmd_check_axioms(args: argparse.Namespace) -> int:
    config = FuzzConfig(
        trials=args.trials,
        max_depth=args.depth,
        atom_count=args.atoms,
        seed=args.seed,
    )
    report = fuzz_axioms(config)
    _print_report("check-axioms", report, args.report_dir)
    return 0 if report.failed == 0 else 1


def _cmd_fuzz_soundness(args: argparse.Namespace) -> int:
    config = FuzzConfig(
        trials=args.trials,
        max_depth=args.depth,
        atom_count=args.atoms,
        seed=args.seed,
        board_states=args.states,
        boards_per_trial=args.boards,
    )
    report = fuzz_soundness(config)
    _print_report("fuzz-soundness", report, args.report_dir)
    return 0 if report.failed == 0 else 1


def _cmd_cg_report(args: argparse.Namespace) -> int:
    results = cg_semantics_report(
        states=args.states, boards=args.boards, seed=args.seed
    )
    for row in results:
        held = row.checked - row.failed
        print(f"{row.name}: holds on {held}/{row.checked} instances")
        if row.first_counterexample is not None:
            ce = row.first_counterexample
            print(f"  first disagreement: {ce.inputs[0]}  vs  {ce.inputs[1]}")
            print(f"  detail: {ce.actual} (seed {ce.seed})")
    payload = {
        "command": "cg-semantics-report",
        "results": {r.name: {"checked": r.checked, "failed": r.failed} for r in results},
    }
    print(json.dumps(payload, sort_keys=True))
    if args.report_dir is not None:
        _write_report_files(
            "cg-semantics-report",
            args.report_dir,
            [(r.name, r.checked, r.failed) for r in results],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamealg",
        description="Normalize, compare, and board-check concurrent game terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="print the minimal canonical form")
    p.add_argument("term")
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser("equiv", help="decide equivalence of two terms")
    p.add_argument("term1")
    p.add_argument("term2")
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("leq", help="decide the lattice order between two terms")
    p.add_argument("term1")
    p.add_argument("term2")
    p.set_defaults(handler=_cmd_leq)

    p = sub.add_parser("embeds", help="embedding verdict on normal forms")
    p.add_argument("term1")
    p.add_argument("term2")
    p.set_defaults(handler=_cmd_embeds)

    p = sub.add_parser("eval", help="evaluate a term's outcome relation on a board")
    p.add_argument("--board", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--player", required=True, type=int, choices=(1, 2))
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("valid", help="check a term identity on one board")
    p.add_argument("--board", required=True)
    p.add_argument("--check", required=True, metavar="'T1 = T2'")
    p.set_defaults(handler=_cmd_valid)

    p = sub.add_parser("check-board", help="report board conditions")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check_board)

    p = sub.add_parser("find-board", help="search for a board telling two terms apart")
    p.add_argument("--distinguish", nargs=2, required=True, dest="terms",
                   metavar=("T1", "T2"))
    p.add_argument("--max-states", type=int, default=3)
    p.set_defaults(handler=_cmd_find_board)

    p = sub.add_parser("check-axioms", help="fuzz the equational axioms")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--report-dir")
    p.set_defaults(handler=_cmd_check_axioms)

    p = sub.add_parser("fuzz-soundness", help="semantic soundness campaigns")
    p.add_argument("--trials", type=int, default=300)
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--boards", type=int, default=5)
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--report-dir")
    p.set_defaults(handler=_cmd_fuzz_soundness)

    p = sub.add_parser(
        "cg-semantics-report",
        help="probe parallel axioms under the default product (informational)",
    )
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--boards", type=int, default=30)
    p.add_argument("--seed", type=int, default=5)
    p.add_argument("--report-dir")
    p.set_defaults(handler=_cmd_cg_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.handler(args)
    except (ParseError, BoardFormatError, SemanticsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
