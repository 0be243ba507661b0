"""Outcome-relation evaluation of terms over finite game boards.

Evaluation follows the forcing clauses: the idle game relates a state
to the sets containing it, dualization swaps the players, player-1
choice is union (intersection for player 2), player-2 choice is the
reverse, and composition relates s to X when the left game can force
the play into the set of states from which the right game forces X.

Parallel subterms have no native board clause.  A term containing
parallel composition is first normalized; its literal bundles are then
resolved against explicit board data or, failing that, the default
product where both players must force their component outcomes
simultaneously and the achieved outcome is the intersection.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .boards import (
    GameBoard,
    OutcomeRelation,
    Violation,
    all_subsets,
    identity_relation,
    sample_board,
)
from .canonical import (
    Bundle,
    CanonicalIdle,
    CanonicalTerm,
    Conjunction,
    Disjunction,
    Move,
    canonical_to_term,
    is_idle_move,
)
from .normalize import normalize
from .terms import (
    Atom,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Idle,
    Parallel,
    Term,
    atoms_of,
    has_parallel,
)

RelationPair = tuple[OutcomeRelation, OutcomeRelation]


class SemanticsError(Exception):
    """Base class for evaluation failures."""


class MissingAtomError(SemanticsError):
    """The board assigns no relation to an atom of the term."""

    def __init__(self, atom_name: str):
        self.atom_name = atom_name
        super().__init__(f"board has no relation for atom {atom_name!r}")


class UnresolvableBundleError(SemanticsError):
    """No explicit relation exists and the default product is inconsistent."""

    def __init__(self, bundle_key: str, state: str, outcome: frozenset[str]):
        self.bundle_key = bundle_key
        self.state = state
        self.outcome = outcome
        shown = "{" + ", ".join(sorted(outcome)) + "}"
        super().__init__(
            f"bundle {bundle_key!r} is unresolvable on this board: the default "
            f"product violates consistency at state {state!r}, outcome {shown}"
        )


def _sorted_gens(rel: OutcomeRelation, state: str) -> list[frozenset[str]]:
    return sorted(rel.generators[state], key=lambda g: tuple(sorted(g)))


def relation_union(r1: OutcomeRelation, r2: OutcomeRelation) -> OutcomeRelation:
    return OutcomeRelation(
        r1.states,
        {s: list(r1.generators[s]) + list(r2.generators[s]) for s in r1.states},
    )


def relation_intersection(r1: OutcomeRelation, r2: OutcomeRelation) -> OutcomeRelation:
    return OutcomeRelation(
        r1.states,
        {
            s: [g1 | g2 for g1 in r1.generators[s] for g2 in r2.generators[s]]
            for s in r1.states
        },
    )


def relation_product(r1: OutcomeRelation, r2: OutcomeRelation) -> OutcomeRelation:
    """Simultaneous-play product: both components forced, outcomes intersected."""
    return OutcomeRelation(
        r1.states,
        {
            s: [g1 & g2 for g1 in r1.generators[s] for g2 in r2.generators[s]]
            for s in r1.states
        },
    )


def relation_compose(r1: OutcomeRelation, r2: OutcomeRelation) -> OutcomeRelation:
    """s is related to X when r1 forces play into {t : r2 relates t to X}."""
    gens: dict[str, list[frozenset[str]]] = {}
    for s in r1.states:
        out = []
        for g in _sorted_gens(r1, s):
            option_lists = [_sorted_gens(r2, t) for t in sorted(g)]
            for choice in itertools.product(*option_lists):
                out.append(frozenset().union(*choice) if choice else frozenset())
        gens[s] = out
    return OutcomeRelation(r1.states, gens)


def _literal_pair(board: GameBoard, atom: Atom, dualized: bool) -> RelationPair:
    pair = board.atom_relations.get(atom)
    if pair is None:
        raise MissingAtomError(atom.name)
    return (pair[1], pair[0]) if dualized else pair


def default_bundle_relation(
    board: GameBoard, bundle: Bundle, player: int
) -> OutcomeRelation:
    """Product interpretation: every literal forced at once, outcomes intersected.

    A state is related to X when each literal of the bundle can be
    forced into some set and the intersection of those sets lies in X.
    Consistency of the resulting pair is NOT checked here; the bundle
    resolver does that.
    """
    if player not in (1, 2):
        raise ValueError("player must be 1 or 2")
    rels = [
        _literal_pair(board, lit.atom, lit.dualized)[player - 1]
        for lit in bundle.literals
    ]
    gens: dict[str, list[frozenset[str]]] = {}
    for s in board.states:
        out = []
        for choice in itertools.product(*[_sorted_gens(r, s) for r in rels]):
            acc = choice[0]
            for g in choice[1:]:
                acc = acc & g
            out.append(acc)
        gens[s] = out
    return OutcomeRelation(board.states, gens)


def resolve_bundle(board: GameBoard, bundle: Bundle) -> RelationPair:
    """Explicit relation, dual of an explicit relation, or the default product."""
    pair = board.bundle_relations.get(bundle)
    if pair is not None:
        return pair
    dual_pair = board.bundle_relations.get(bundle.dual())
    if dual_pair is not None:
        return (dual_pair[1], dual_pair[0])
    rel1 = default_bundle_relation(board, bundle, 1)
    rel2 = default_bundle_relation(board, bundle, 2)
    full = frozenset(board.states)
    for s in board.states:
        for g1 in _sorted_gens(rel1, s):
            if rel2.holds(s, full - g1):
                raise UnresolvableBundleError(bundle.key(), s, g1)
    return (rel1, rel2)


def _eval_canonical(board: GameBoard, c: CanonicalTerm) -> RelationPair:
    if isinstance(c, CanonicalIdle):
        ident = identity_relation(board.states)
        return (ident, ident)
    conjunct_pairs = []
    for conjunct in c.conjuncts:
        move_pairs = []
        for move in conjunct.moves:
            if is_idle_move(move):
                ident = identity_relation(board.states)
                move_pairs.append((ident, ident))
                continue
            head1, head2 = resolve_bundle(board, move.head)
            k1, k2 = _eval_canonical(board, move.continuation)
            move_pairs.append(
                (relation_compose(head1, k1), relation_compose(head2, k2))
            )
        acc1, acc2 = move_pairs[0]
        for m1, m2 in move_pairs[1:]:
            acc1 = relation_intersection(acc1, m1)
            acc2 = relation_union(acc2, m2)
        conjunct_pairs.append((acc1, acc2))
    acc1, acc2 = conjunct_pairs[0]
    for d1, d2 in conjunct_pairs[1:]:
        acc1 = relation_union(acc1, d1)
        acc2 = relation_intersection(acc2, d2)
    return (acc1, acc2)


def _eval_sequential(board: GameBoard, t: Term) -> RelationPair:
    if isinstance(t, Idle):
        ident = identity_relation(board.states)
        return (ident, ident)
    if isinstance(t, AtomGame):
        return _literal_pair(board, t.atom, False)
    if isinstance(t, Dual):
        r1, r2 = _eval_sequential(board, t.inner)
        return (r2, r1)
    if isinstance(t, Choice1):
        a1, a2 = _eval_sequential(board, t.left)
        b1, b2 = _eval_sequential(board, t.right)
        return (relation_union(a1, b1), relation_intersection(a2, b2))
    if isinstance(t, Choice2):
        a1, a2 = _eval_sequential(board, t.left)
        b1, b2 = _eval_sequential(board, t.right)
        return (relation_intersection(a1, b1), relation_union(a2, b2))
    if isinstance(t, Compose):
        a1, a2 = _eval_sequential(board, t.left)
        b1, b2 = _eval_sequential(board, t.right)
        return (relation_compose(a1, b1), relation_compose(a2, b2))
    raise AssertionError(f"unexpected term variant: {type(t).__name__}")


def eval_pair(board: GameBoard, t: Term) -> RelationPair:
    """Both players' relations; parallel-free terms evaluate structurally."""
    if has_parallel(t):
        return _eval_canonical(board, normalize(t))
    return _eval_sequential(board, t)


def eval_outcome(board: GameBoard, t: Term, player: int) -> OutcomeRelation:
    """The outcome relation of the term for one player on the board."""
    if player not in (1, 2):
        raise ValueError("player must be 1 or 2")
    return eval_pair(board, t)[player - 1]


def eval_direct_pair(board: GameBoard, t: Term) -> RelationPair:
    """Evaluate with parallel interpreted directly as the relation product.

    Unlike eval_pair this never normalizes: a parallel node is the
    product of its operands' relations for each player, with no
    consistency check.  Exists to probe which parallel axioms the
    product interpretation validates; it is not the reference
    evaluator.
    """
    if isinstance(t, Parallel):
        a1, a2 = eval_direct_pair(board, t.left)
        b1, b2 = eval_direct_pair(board, t.right)
        return (relation_product(a1, b1), relation_product(a2, b2))
    if isinstance(t, Dual):
        r1, r2 = eval_direct_pair(board, t.inner)
        return (r2, r1)
    if isinstance(t, (Choice1, Choice2, Compose)):
        a1, a2 = eval_direct_pair(board, t.left)
        b1, b2 = eval_direct_pair(board, t.right)
        if isinstance(t, Choice1):
            return (relation_union(a1, b1), relation_intersection(a2, b2))
        if isinstance(t, Choice2):
            return (relation_intersection(a1, b1), relation_union(a2, b2))
        return (relation_compose(a1, b1), relation_compose(a2, b2))
    return _eval_sequential(board, t)


def holds_identity(board: GameBoard, t1: Term, t2: Term) -> bool:
    """True when both players' relations agree extensionally on the board."""
    p1 = eval_pair(board, t1)
    p2 = eval_pair(board, t2)
    return p1[0] == p2[0] and p1[1] == p2[1]


def holds_inclusion(board: GameBoard, t1: Term, t2: Term, player: int) -> bool:
    """True when the first term's relation is contained in the second's."""
    r1 = eval_outcome(board, t1, player)
    r2 = eval_outcome(board, t2, player)
    return all(
        r2.holds(s, g) for s in r1.states for g in r1.generators[s]
    )


_MAX_SEARCH_STATES = 3
_GRID_BUDGET = 400_000
_SAMPLES_PER_SIZE = 200


def find_distinguishing_board(
    t1: Term, t2: Term, max_states: int = 3
) -> GameBoard | None:
    """Search for a board on which the two terms evaluate differently.

    Small sizes are scanned exhaustively (every consistent board over
    the terms' atoms); sizes whose board count exceeds the exhaustive
    budget fall back to seeded sampling.  A None result is not a proof
    of equivalence, only absence of a small refutation.
    """
    if has_parallel(t1) or has_parallel(t2):
        raise ValueError("find_distinguishing_board handles parallel-free terms only")
    if not 1 <= max_states <= _MAX_SEARCH_STATES:
        raise ValueError(f"max_states must be in 1..{_MAX_SEARCH_STATES}")
    atoms = sorted(atoms_of(t1) | atoms_of(t2), key=lambda a: a.name)
    if not atoms:
        return None

    from . import gridsem

    for n in range(1, max_states + 1):
        grid = gridsem.enumeration_grid(n, atoms, budget=_GRID_BUDGET)
        if grid is not None:
            pair1 = gridsem.eval_term(grid, t1)
            pair2 = gridsem.eval_term(grid, t2)
            index = gridsem.first_mismatch(pair1, pair2)
            if index is not None:
                return grid.board_at(index)
            continue
        for i in range(_SAMPLES_PER_SIZE):
            board = sample_board(n, atoms, seed=f"distinguish:{n}:{i}")
            if not holds_identity(board, t1, t2):
                return board
    return None
