"""Randomized campaigns: axiom coherence, semantic soundness, product probes.

Every campaign derives one generator per (seed, campaign, trial) string,
so runs are reproducible, order-independent, and insensitive to how
many trials other campaigns consumed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .boards import sample_board, save_board
from .canonical import canonical_to_term
from .decide import decide_equiv
from .normalize import is_minimal_canonical, normalize
from .semantics import eval_direct_pair, holds_identity, holds_inclusion
from .syntax import parse_term, print_term
from .terms import (
    IDLE,
    Atom,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Parallel,
    Term,
    has_parallel,
)

_ALPHABET = (Atom("a"), Atom("b"), Atom("c"))


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 200
    max_depth: int = 4
    atom_count: int = 3
    seed: int = 7
    board_states: int = 2
    boards_per_trial: int = 5

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        if not 1 <= self.atom_count <= 3:
            raise ValueError("atom_count must be 1..3")
        if not 1 <= self.board_states <= 3:
            raise ValueError("board_states must be 1..3")
        if self.boards_per_trial < 0:
            raise ValueError("boards_per_trial must be nonnegative")

    @property
    def atoms(self) -> tuple[Atom, ...]:
        return _ALPHABET[: self.atom_count]


@dataclass(frozen=True)
class Counterexample:
    check: str
    inputs: tuple[str, ...]
    expected: str
    actual: str
    seed: str


@dataclass
class RunReport:
    checked: int
    failed: int
    first_counterexample: Counterexample | None
    elapsed: float
    by_check: dict[str, tuple[int, int]] = field(default_factory=dict)


def random_term(
    rng: random.Random,
    max_depth: int,
    atoms: Sequence[Atom],
    allow_parallel: bool = True,
) -> Term:
    """A random term; depth bounds the operator nesting."""
    if max_depth <= 0 or rng.random() < 0.22:
        if rng.random() < 0.12:
            return IDLE
        return AtomGame(rng.choice(atoms))
    if rng.random() < 0.16:
        return Dual(random_term(rng, max_depth - 1, atoms, allow_parallel))
    ops = [Choice1, Choice2, Compose]
    if allow_parallel:
        ops.append(Parallel)
    op = rng.choice(ops)
    return op(
        random_term(rng, max_depth - 1, atoms, allow_parallel),
        random_term(rng, max_depth - 1, atoms, allow_parallel),
    )


def random_literal_term(rng: random.Random, atoms: Sequence[Atom]) -> Term:
    """An atom or a dualized atom; never the idle game."""
    base: Term = AtomGame(rng.choice(atoms))
    return Dual(base) if rng.random() < 0.25 else base


_Build = Callable[..., Term]


@dataclass(frozen=True)
class AxiomSchema:
    """One table row: slot kinds ('t' term, 'l' literal) and its equations."""

    name: str
    slots: str
    equations: tuple[tuple[_Build, _Build], ...]


def _v(x: Term, y: Term) -> Term:
    return Choice1(x, y)


def _w(x: Term, y: Term) -> Term:
    return Choice2(x, y)


def _c(x: Term, y: Term) -> Term:
    return Compose(x, y)


def _p(x: Term, y: Term) -> Term:
    return Parallel(x, y)


def _d(x: Term) -> Term:
    return Dual(x)


AXIOM_SCHEMAS: tuple[AxiomSchema, ...] = (
    AxiomSchema("G1", "t", (
        (lambda x: _v(x, x), lambda x: x),
        (lambda x: _w(x, x), lambda x: x),
    )),
    AxiomSchema("G2", "tt", (
        (lambda x, y: _v(x, y), lambda x, y: _v(y, x)),
        (lambda x, y: _w(x, y), lambda x, y: _w(y, x)),
    )),
    AxiomSchema("G3", "ttt", (
        (lambda x, y, z: _v(x, _v(y, z)), lambda x, y, z: _v(_v(x, y), z)),
        (lambda x, y, z: _w(x, _w(y, z)), lambda x, y, z: _w(_w(x, y), z)),
    )),
    AxiomSchema("G4", "tt", (
        (lambda x, y: _v(x, _w(x, y)), lambda x, y: x),
        (lambda x, y: _w(x, _v(x, y)), lambda x, y: x),
    )),
    AxiomSchema("G5", "ttt", (
        (lambda x, y, z: _v(x, _w(y, z)), lambda x, y, z: _w(_v(x, y), _v(x, z))),
        (lambda x, y, z: _w(x, _v(y, z)), lambda x, y, z: _v(_w(x, y), _w(x, z))),
    )),
    AxiomSchema("G6", "t", (
        (lambda x: _d(_d(x)), lambda x: x),
    )),
    AxiomSchema("G7", "tt", (
        (lambda x, y: _d(_v(x, y)), lambda x, y: _w(_d(x), _d(y))),
        (lambda x, y: _d(_w(x, y)), lambda x, y: _v(_d(x), _d(y))),
    )),
    AxiomSchema("G8", "ttt", (
        (lambda x, y, z: _c(_c(x, y), z), lambda x, y, z: _c(x, _c(y, z))),
    )),
    AxiomSchema("G9", "ttt", (
        (lambda x, y, z: _c(_v(x, y), z), lambda x, y, z: _v(_c(x, z), _c(y, z))),
        (lambda x, y, z: _c(_w(x, y), z), lambda x, y, z: _w(_c(x, z), _c(y, z))),
    )),
    AxiomSchema("G10", "tt", (
        (lambda x, y: _c(_d(x), _d(y)), lambda x, y: _d(_c(x, y))),
    )),
    AxiomSchema("G12", "t", (
        (lambda x: _c(x, IDLE), lambda x: x),
        (lambda x: _c(IDLE, x), lambda x: x),
    )),
    AxiomSchema("G13", "", (
        (lambda: _d(IDLE), lambda: IDLE),
    )),
    AxiomSchema("CG1", "ttt", (
        (lambda x, y, z: _p(_p(x, y), z), lambda x, y, z: _p(x, _p(y, z))),
    )),
    AxiomSchema("CG2", "llt", (
        (lambda ga, gb, y: _p(ga, _c(gb, y)), lambda ga, gb, y: _c(_p(ga, gb), y)),
    )),
    AxiomSchema("CG3", "llt", (
        (lambda ga, gb, x: _p(_c(ga, x), gb), lambda ga, gb, x: _c(_p(ga, gb), x)),
    )),
    AxiomSchema("CG4", "lltt", (
        (
            lambda ga, gb, x, y: _p(_c(ga, x), _c(gb, y)),
            lambda ga, gb, x, y: _c(_p(ga, gb), _p(x, y)),
        ),
    )),
    AxiomSchema("CG5", "ttt", (
        (lambda x, y, z: _p(_v(x, y), z), lambda x, y, z: _v(_p(x, z), _p(y, z))),
    )),
    AxiomSchema("CG6", "ttt", (
        (lambda x, y, z: _p(x, _v(y, z)), lambda x, y, z: _v(_p(x, y), _p(x, z))),
    )),
    AxiomSchema("CG7", "ttt", (
        (lambda x, y, z: _p(_w(x, y), z), lambda x, y, z: _w(_p(x, z), _p(y, z))),
    )),
    AxiomSchema("CG8", "ttt", (
        (lambda x, y, z: _p(x, _w(y, z)), lambda x, y, z: _w(_p(x, y), _p(x, z))),
    )),
    AxiomSchema("CG9", "tt", (
        (lambda x, y: _d(_p(x, y)), lambda x, y: _p(_d(x), _d(y))),
    )),
    AxiomSchema("CG10", "t", (
        (lambda x: _p(IDLE, x), lambda x: x),
    )),
    AxiomSchema("CG11", "t", (
        (lambda x: _p(x, IDLE), lambda x: x),
    )),
)


def _instantiate(
    rng: random.Random,
    slots: str,
    atoms: Sequence[Atom],
    max_depth: int,
    allow_parallel: bool,
) -> list[Term]:
    args: list[Term] = []
    for kind in slots:
        if kind == "l":
            args.append(random_literal_term(rng, atoms))
        else:
            args.append(random_term(rng, max_depth, atoms, allow_parallel))
    return args


def fuzz_axioms(config: FuzzConfig) -> RunReport:
    """Check every equational axiom schema on random instantiations.

    Both sides of each instantiated equation must normalize to the same
    canonical term.  The implicational row is excluded; fuzz_soundness
    covers it semantically.
    """
    start = time.perf_counter()
    checked = failed = 0
    first: Counterexample | None = None
    by_check: dict[str, tuple[int, int]] = {}
    for schema in AXIOM_SCHEMAS:
        s_checked = s_failed = 0
        for trial in range(config.trials):
            seed_key = f"{config.seed}:axioms:{schema.name}:{trial}"
            rng = random.Random(seed_key)
            args = _instantiate(
                rng, schema.slots, config.atoms, config.max_depth, True
            )
            for build_lhs, build_rhs in schema.equations:
                lhs = build_lhs(*args)
                rhs = build_rhs(*args)
                nf_l = normalize(lhs)
                nf_r = normalize(rhs)
                s_checked += 1
                if nf_l != nf_r:
                    s_failed += 1
                    if first is None:
                        first = Counterexample(
                            check=schema.name,
                            inputs=(print_term(lhs), print_term(rhs)),
                            expected=print_term(canonical_to_term(nf_l)),
                            actual=print_term(canonical_to_term(nf_r)),
                            seed=seed_key,
                        )
        by_check[schema.name] = (s_checked, s_failed)
        checked += s_checked
        failed += s_failed
    return RunReport(checked, failed, first, time.perf_counter() - start, by_check)


def fuzz_soundness(config: FuzzConfig) -> RunReport:
    """Semantic cross-validation of the normalizer on random boards.

    Three campaigns: normal forms keep the minimal canonical shape and
    the term's board semantics; included terms stay included after
    composing on the left (the implicational axiom); pairs the decision
    procedure declares equivalent agree on every sampled board.
    """
    start = time.perf_counter()
    checked = failed = 0
    first: Counterexample | None = None
    by_check: dict[str, tuple[int, int]] = {
        "identity-shape": (0, 0),
        "identity-board": (0, 0),
        "g11": (0, 0),
        "equiv-pairs": (0, 0),
    }

    def tally(name: str, ok: bool, ce: Callable[[], Counterexample]) -> None:
        nonlocal checked, failed, first
        c, f = by_check[name]
        by_check[name] = (c + 1, f + (0 if ok else 1))
        checked += 1
        if not ok:
            failed += 1
            if first is None:
                first = ce()

    atoms = config.atoms

    for trial in range(config.trials):
        seed_key = f"{config.seed}:identity:{trial}"
        rng = random.Random(seed_key)
        t = random_term(rng, config.max_depth, atoms, allow_parallel=False)
        nf = normalize(t)
        nf_term = canonical_to_term(nf)
        shape_ok = is_minimal_canonical(nf) and not has_parallel(nf_term)
        tally(
            "identity-shape",
            shape_ok,
            lambda: Counterexample(
                "identity-shape",
                (print_term(t),),
                "a minimal canonical normal form",
                print_term(nf_term),
                seed_key,
            ),
        )
        reprinted = parse_term(print_term(nf_term))
        for b_i in range(config.boards_per_trial):
            board = sample_board(
                config.board_states, atoms, seed=f"{seed_key}:{b_i}"
            )
            ok = holds_identity(board, t, reprinted)
            tally(
                "identity-board",
                ok,
                lambda: Counterexample(
                    "identity-board",
                    (
                        print_term(t),
                        print_term(nf_term),
                        save_board(board).decode("utf-8"),
                    ),
                    "equal outcome relations for term and normal form",
                    "relations differ",
                    f"{seed_key}:{b_i}",
                ),
            )

    for trial in range(config.trials):
        seed_key = f"{config.seed}:g11:{trial}"
        rng = random.Random(seed_key)
        x = random_term(rng, config.max_depth, atoms, allow_parallel=False)
        y = random_term(rng, config.max_depth, atoms, allow_parallel=False)
        z = random_term(rng, config.max_depth, atoms, allow_parallel=False)
        for b_i in range(config.boards_per_trial):
            board = sample_board(
                config.board_states, atoms, seed=f"{seed_key}:{b_i}"
            )
            if holds_inclusion(board, y, z, 1) and holds_inclusion(board, y, z, 2):
                xy = Compose(x, y)
                xz = Compose(x, z)
                ok = holds_inclusion(board, xy, xz, 1) and holds_inclusion(
                    board, xy, xz, 2
                )
            else:
                ok = True
            tally(
                "g11",
                ok,
                lambda: Counterexample(
                    "g11",
                    (
                        print_term(x),
                        print_term(y),
                        print_term(z),
                        save_board(board).decode("utf-8"),
                    ),
                    "composing on the left preserves inclusion",
                    "inclusion lost after composition",
                    f"{seed_key}:{b_i}",
                ),
            )

    if config.boards_per_trial > 0:
        sequential_rows = [s for s in AXIOM_SCHEMAS if not s.name.startswith("CG")]
        for trial in range(config.trials):
            seed_key = f"{config.seed}:pairs:{trial}"
            rng = random.Random(seed_key)
            schema = rng.choice(sequential_rows)
            build_lhs, build_rhs = rng.choice(schema.equations)
            args = _instantiate(rng, schema.slots, atoms, config.max_depth, False)
            lhs = build_lhs(*args)
            rhs = build_rhs(*args)
            if not decide_equiv(lhs, rhs).equivalent:
                continue
            for b_i in range(config.boards_per_trial):
                board = sample_board(
                    config.board_states, atoms, seed=f"{seed_key}:{b_i}"
                )
                ok = holds_identity(board, lhs, rhs)
                tally(
                    "equiv-pairs",
                    ok,
                    lambda: Counterexample(
                        "equiv-pairs",
                        (
                            print_term(lhs),
                            print_term(rhs),
                            save_board(board).decode("utf-8"),
                        ),
                        "equivalent terms agree on the board",
                        "relations differ",
                        f"{seed_key}:{b_i}",
                    ),
                )

    return RunReport(checked, failed, first, time.perf_counter() - start, by_check)


@dataclass
class CgAxiomResult:
    name: str
    checked: int
    failed: int
    first_counterexample: Counterexample | None


def _pair_difference(
    pair_l, pair_r
) -> str:
    for player, (rl, rr) in enumerate(zip(pair_l, pair_r), start=1):
        for s in rl.states:
            if rl.generators[s] != rr.generators[s]:
                return f"player {player} differs at state {s}"
    return "no difference"


def cg_semantics_report(
    states: int = 2,
    boards: int = 30,
    seed: int = 5,
    max_depth: int = 2,
    atom_count: int = 3,
) -> list[CgAxiomResult]:
    """Probe which parallel axioms the direct product interpretation validates.

    Each parallel axiom is instantiated randomly and both sides are
    evaluated with eval_direct_pair on shared sampled boards.  The
    outcome is informational: the boards carry no native parallel
    semantics, so disagreements document the gap between the product
    interpretation and the algebra rather than a kernel defect.
    """
    if not 1 <= states <= 3:
        raise ValueError("states must be 1..3")
    if boards < 0:
        raise ValueError("boards must be nonnegative")
    atoms = _ALPHABET[:atom_count]
    results = []
    for schema in AXIOM_SCHEMAS:
        if not schema.name.startswith("CG"):
            continue
        checked = failed = 0
        first: Counterexample | None = None
        for b_i in range(boards):
            board = sample_board(states, atoms, seed=f"{seed}:cgboard:{b_i}")
            seed_key = f"{seed}:cg:{schema.name}:{b_i}"
            rng = random.Random(seed_key)
            args = _instantiate(rng, schema.slots, atoms, max_depth, True)
            for build_lhs, build_rhs in schema.equations:
                lhs = build_lhs(*args)
                rhs = build_rhs(*args)
                pair_l = eval_direct_pair(board, lhs)
                pair_r = eval_direct_pair(board, rhs)
                checked += 1
                if pair_l != pair_r:
                    failed += 1
                    if first is None:
                        first = Counterexample(
                            check=schema.name,
                            inputs=(
                                print_term(lhs),
                                print_term(rhs),
                                save_board(board).decode("utf-8"),
                            ),
                            expected="extensionally equal outcome relations",
                            actual=_pair_difference(pair_l, pair_r),
                            seed=seed_key,
                        )
        results.append(CgAxiomResult(schema.name, checked, failed, first))
    return results
