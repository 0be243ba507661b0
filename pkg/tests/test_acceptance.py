"""Acceptance gate: one test per shipping criterion, one verdict line each.

Run with `pytest -v tests/test_acceptance.py`.  Each test prints a
single `criterion N: PASS/FAIL` line before asserting, so the verdicts
survive into captured output when a criterion fails.
"""

import random
import time
from pathlib import Path

import pytest

from gamealg import (
    Atom,
    AtomGame,
    Compose,
    Dual,
    FuzzConfig,
    Parallel,
    load_board,
    normalize,
    parse_term,
    print_term,
    random_term,
    sample_board,
    save_board,
)
from gamealg.canonical import canonical_to_term
from gamealg.decide import decide_equiv
from gamealg.fuzzing import fuzz_axioms, fuzz_soundness
from gamealg.gridsem import (
    consistent,
    determined,
    enumeration_grid,
    eval_term,
    first_mismatch,
    grid_of_boards,
    upward_closed,
)
from gamealg.normalize import is_minimal_canonical
from gamealg.semantics import find_distinguishing_board, holds_identity

ARTIFACTS = Path(__file__).parent / "_artifacts"
DATA = Path(__file__).parent / "data"

AB = (Atom("a"), Atom("b"))
ABC = (Atom("a"), Atom("b"), Atom("c"))


def verdict(n: int, ok: bool, detail: str) -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def _is_literal(t) -> bool:
    return isinstance(t, AtomGame) or (
        isinstance(t, Dual) and isinstance(t.inner, AtomGame)
    )


def _is_literal_bundle(t) -> bool:
    if _is_literal(t):
        return True
    return (
        isinstance(t, Parallel)
        and _is_literal_bundle(t.left)
        and _is_literal_bundle(t.right)
    )


def _parallel_only_as_literal_bundles(t) -> bool:
    if isinstance(t, Parallel):
        return _is_literal_bundle(t)
    return all(
        _parallel_only_as_literal_bundles(getattr(t, f))
        for f in ("left", "right", "inner")
        if hasattr(t, f)
    )


@pytest.fixture(scope="module")
def con_grid():
    grid = enumeration_grid(2, AB)
    assert grid is not None
    return grid


@pytest.fixture(scope="module")
def det_grid():
    grid = enumeration_grid(2, AB, det=True)
    assert grid is not None
    return grid


def test_criterion_1_equational_axiom_fuzz():
    config = FuzzConfig(trials=200, max_depth=4, atom_count=3, seed=7)
    report = fuzz_axioms(config)
    failing = {
        name: counts for name, counts in report.by_check.items() if counts[1] > 0
    }
    for name, (checked, failed) in sorted(failing.items()):
        print(f"  {name}: {failed}/{checked} instantiations diverge")
    ok = report.failed == 0 and report.elapsed < 300.0
    verdict(
        1,
        ok,
        f"{report.failed}/{report.checked} failures in {report.elapsed:.1f}s",
    )
    assert report.elapsed < 300.0
    # The two player-choice distribution laws over parallel composition
    # (CG7, CG8) fail by design: no rewrite orientation makes them
    # confluent with the bundled normal form.  See the known-limitation
    # note in README.md.
    assert report.failed == 0, (
        "equational fuzz found diverging instantiations: "
        + ", ".join(sorted(failing))
    )


def test_criterion_2_normal_form_shape_and_fixpoint():
    rng = random.Random(20)
    bad = 0
    for _ in range(1000):
        t = random_term(rng, 5, ABC)
        nf = normalize(t)
        nf_term = canonical_to_term(nf)
        shape_ok = is_minimal_canonical(nf)
        bundles_ok = _parallel_only_as_literal_bundles(nf_term)
        fix_ok = normalize(parse_term(print_term(nf_term))) == nf
        if not (shape_ok and bundles_ok and fix_ok):
            bad += 1
    verdict(2, bad == 0, f"{bad}/1000 terms break shape or fixpoint")
    assert bad == 0


def test_criterion_3_normalization_preserves_board_semantics(con_grid):
    start = time.perf_counter()
    rng = random.Random(21)
    grid3 = grid_of_boards([sample_board(3, AB, seed=i) for i in range(100)])
    bad = 0
    for _ in range(300):
        t = random_term(rng, 4, AB, allow_parallel=False)
        nf_term = canonical_to_term(normalize(t))
        if first_mismatch(eval_term(con_grid, t), eval_term(con_grid, nf_term)) is not None:
            bad += 1
            continue
        if first_mismatch(eval_term(grid3, t), eval_term(grid3, nf_term)) is not None:
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 600.0
    verdict(
        3,
        ok,
        f"{bad}/300 terms disagree with their normal form on some board, "
        f"{elapsed:.1f}s over {con_grid.count} enumerated + 100 sampled boards",
    )
    assert elapsed < 600.0
    assert bad == 0


def test_criterion_4a_no_board_distinguishes_equivalent_terms():
    config = FuzzConfig(
        trials=300,
        max_depth=4,
        atom_count=3,
        seed=11,
        board_states=2,
        boards_per_trial=5,
    )
    report = fuzz_soundness(config)
    verdict(4, report.failed == 0, f"4a: {report.failed}/{report.checked} failures")
    assert report.failed == 0, report.first_counterexample


def test_criterion_4b_distinguishing_board_search():
    rng = random.Random(17)
    pairs = []
    while len(pairs) < 50:
        t1 = random_term(rng, 3, AB, allow_parallel=False)
        t2 = random_term(rng, 3, AB, allow_parallel=False)
        if not decide_equiv(t1, t2).equivalent:
            pairs.append((t1, t2))
    ARTIFACTS.mkdir(exist_ok=True)
    log_path = ARTIFACTS / "none_outcomes.log"
    found = 0
    none_lines = []
    for t1, t2 in pairs:
        board = find_distinguishing_board(t1, t2, max_states=3)
        if board is None:
            none_lines.append(f"none: {print_term(t1)}  vs  {print_term(t2)}\n")
            continue
        assert not holds_identity(board, t1, t2)
        found += 1
    log_path.write_text("".join(none_lines))
    rate = found / len(pairs)
    verdict(4, rate >= 0.8, f"4b: refuting board found for {found}/{len(pairs)} pairs")
    assert rate >= 0.8


def test_criterion_5_board_conditions_preserved(con_grid, det_grid):
    rng = random.Random(22)
    terms = [random_term(rng, 4, AB, allow_parallel=False) for _ in range(200)]
    bad_mon = bad_con = bad_det = 0
    for t in terms:
        r1, r2 = eval_term(con_grid, t)
        if not (upward_closed(con_grid, r1).all() and upward_closed(con_grid, r2).all()):
            bad_mon += 1
        if not consistent(con_grid, r1, r2).all():
            bad_con += 1
        d1, d2 = eval_term(det_grid, t)
        if not determined(det_grid, d1, d2).all():
            bad_det += 1
    ok = bad_mon == bad_con == bad_det == 0
    verdict(
        5,
        ok,
        f"monotone breaks {bad_mon}, consistency breaks {bad_con}, "
        f"determinacy breaks {bad_det}, over {con_grid.count} consistent "
        f"and {det_grid.count} determined boards x 200 terms",
    )
    assert ok


def test_criterion_6_composition_preserves_inclusion():
    boards = [sample_board(2, AB, seed=f"g11:{i}") for i in range(50)]
    grid = grid_of_boards(boards)
    rng = random.Random(23)

    def included(pa, pb):
        return ((pa[0] & ~pb[0]) == 0).all(axis=1) & ((pa[1] & ~pb[1]) == 0).all(
            axis=1
        )

    violations = 0
    premise_hits = 0
    for _ in range(200):
        x = random_term(rng, 3, AB, allow_parallel=False)
        y = random_term(rng, 3, AB, allow_parallel=False)
        z = random_term(rng, 3, AB, allow_parallel=False)
        ym = eval_term(grid, y)
        zm = eval_term(grid, z)
        premise = included(ym, zm)
        if not premise.any():
            continue
        premise_hits += int(premise.sum())
        xym = eval_term(grid, Compose(x, y))
        xzm = eval_term(grid, Compose(x, z))
        conclusion = included(xym, xzm)
        violations += int((premise & ~conclusion).sum())
    ok = violations == 0 and premise_hits > 0
    verdict(
        6,
        ok,
        f"{violations} violations over {premise_hits} premise-satisfying "
        f"(triple, board) cases",
    )
    assert premise_hits > 0
    assert violations == 0


def test_criterion_7_round_trips():
    rng = random.Random(24)
    bad_parse = 0
    for _ in range(1000):
        t = random_term(rng, 5, ABC)
        if parse_term(print_term(t)) != t:
            bad_parse += 1
    bad_board = 0
    for i in range(100):
        n_states = 1 + i % 3
        board = sample_board(n_states, AB, seed=f"rt:{i}")
        loaded = load_board(save_board(board))
        same = (
            loaded.states == board.states
            and loaded.atom_relations == board.atom_relations
            and loaded.bundle_relations == board.bundle_relations
        )
        if not same:
            bad_board += 1
    ok = bad_parse == 0 and bad_board == 0
    verdict(
        7,
        ok,
        f"{bad_parse}/1000 term round trips and {bad_board}/100 board "
        f"round trips failed",
    )
    assert ok


def test_criterion_8_golden_corpus_is_byte_exact():
    pairs = []
    for line in (DATA / "golden_corpus.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        source, expected = line.split("\t")
        pairs.append((source, expected))
    mismatches = [
        (source, expected)
        for source, expected in pairs
        if print_term(canonical_to_term(normalize(parse_term(source)))) != expected
    ]
    ok = len(pairs) >= 30 and not mismatches
    verdict(
        8,
        ok,
        f"{len(pairs)} corpus pairs, {len(mismatches)} mismatches",
    )
    assert len(pairs) >= 30
    assert mismatches == []
