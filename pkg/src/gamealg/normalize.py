"""Rewriting game terms into minimal canonical form.

The pipeline has four stages.  dual_normal_form pushes dualization down
to the atoms.  canonicalize distributes choices outward, eliminates
parallel composition in favor of literal bundles, and threads
sequential composition into continuations, producing a disjunction of
conjunctions of moves.  minimize deletes conjuncts and disjuncts that
an embedding proves redundant.  sort_canonical fixes the order of the
remaining choices so that equivalent terms become structurally equal.
"""

from __future__ import annotations

from .canonical import (
    CANONICAL_IDLE,
    IDLE_MOVE,
    Bundle,
    CanonicalIdle,
    CanonicalTerm,
    Conjunction,
    Disjunction,
    Move,
    is_canonical,
    is_idle_move,
    literal_canonical,
    single_move,
)
from .embedding import (
    conjunction_embeds,
    conjunction_sort_key,
    move_embeds,
    move_sort_key,
    sort_canonical,
)
from .terms import (
    IDLE,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Idle,
    Literal,
    Parallel,
    Term,
)


def dual_normal_form(t: Term) -> Term:
    """Push every dual inward until it sits directly on an atom.

    Dualizing swaps the two choices, distributes over both compositions,
    cancels with itself, and fixes the idle game.
    """
    if isinstance(t, (Idle, AtomGame)):
        return t
    if isinstance(t, Dual):
        return _dual_of(t.inner)
    return type(t)(dual_normal_form(t.left), dual_normal_form(t.right))


def _dual_of(t: Term) -> Term:
    """Dual normal form of the dual of t."""
    if isinstance(t, Idle):
        return IDLE
    if isinstance(t, AtomGame):
        return Dual(t)
    if isinstance(t, Dual):
        return dual_normal_form(t.inner)
    if isinstance(t, Choice1):
        return Choice2(_dual_of(t.left), _dual_of(t.right))
    if isinstance(t, Choice2):
        return Choice1(_dual_of(t.left), _dual_of(t.right))
    if isinstance(t, Compose):
        return Compose(_dual_of(t.left), _dual_of(t.right))
    if isinstance(t, Parallel):
        return Parallel(_dual_of(t.left), _dual_of(t.right))
    raise TypeError(f"not a term: {t!r}")


def _lift(c: CanonicalTerm) -> tuple[Conjunction, ...]:
    """View a canonical term as a sequence of conjuncts; idle becomes one idle move."""
    if isinstance(c, CanonicalIdle):
        return (Conjunction((IDLE_MOVE,)),)
    return c.conjuncts


def _or(a: CanonicalTerm, b: CanonicalTerm) -> Disjunction:
    return Disjunction(_lift(a) + _lift(b))


def _and(a: CanonicalTerm, b: CanonicalTerm) -> Disjunction:
    conjuncts = tuple(
        Conjunction(da.moves + db.moves) for da in _lift(a) for db in _lift(b)
    )
    return Disjunction(conjuncts)


def _compose(a: CanonicalTerm, h: CanonicalTerm) -> CanonicalTerm:
    """Sequential composition of canonical terms.

    Composition distributes over the choices on its left and associates
    into continuations, so it lands on each move: an ordinary move keeps
    its head and composes its continuation with h, while an idle move is
    replaced by h itself, after which the conjunct is rebuilt by the
    choice cross products.
    """
    if isinstance(a, CanonicalIdle):
        return h
    out: list[Conjunction] = []
    for conj in a.conjuncts:
        factors: list[CanonicalTerm] = []
        for m in conj.moves:
            if is_idle_move(m):
                factors.append(h)
            else:
                factors.append(single_move(Move(m.head, _compose(m.continuation, h))))
        combined = factors[0]
        for f in factors[1:]:
            combined = _and(combined, f)
        out.extend(_lift(combined))
    return Disjunction(tuple(out))


def _par(a: CanonicalTerm, b: CanonicalTerm) -> CanonicalTerm:
    """Parallel composition of canonical terms.

    Idle is the unit on both sides.  Otherwise the choices of the two
    sides cross-distribute and the surviving move pairs fuse.
    """
    if isinstance(a, CanonicalIdle):
        return b
    if isinstance(b, CanonicalIdle):
        return a
    out = []
    for da in a.conjuncts:
        for db in b.conjuncts:
            moves = tuple(_fuse(ma, mb) for ma in da.moves for mb in db.moves)
            out.append(Conjunction(moves))
    return Disjunction(tuple(out))


def _fuse(ma: Move, mb: Move) -> Move:
    """Run two moves at once: concatenate heads, play continuations in parallel."""
    if is_idle_move(ma):
        return mb
    if is_idle_move(mb):
        return ma
    head = Bundle(ma.head.literals + mb.head.literals)
    return Move(head, _par(ma.continuation, mb.continuation))


def canonicalize(t: Term) -> CanonicalTerm:
    """Produce the canonical (not yet minimal) form of a dual-normal term."""
    if isinstance(t, Idle):
        return CANONICAL_IDLE
    if isinstance(t, AtomGame):
        return literal_canonical(Literal(t.atom, False))
    if isinstance(t, Dual):
        if isinstance(t.inner, AtomGame):
            return literal_canonical(Literal(t.inner.atom, True))
        raise ValueError(
            "canonicalize needs dual normal form; run dual_normal_form first"
        )
    a = canonicalize(t.left)
    b = canonicalize(t.right)
    if isinstance(t, Choice1):
        return _or(a, b)
    if isinstance(t, Choice2):
        return _and(a, b)
    if isinstance(t, Compose):
        return _compose(a, b)
    if isinstance(t, Parallel):
        return _par(a, b)
    raise TypeError(f"not a term: {t!r}")


def _prune_moves(moves: tuple[Move, ...]) -> tuple[Move, ...]:
    """Drop every move another move embeds into, keeping one of each tied pair.

    A move embedding into a sibling proves the sibling redundant for the
    player choosing among them.  Tied (mutually embedding) moves keep the
    one with the smaller sort key.  Survivors keep their original order.
    """
    order = sorted(range(len(moves)), key=lambda i: (move_sort_key(moves[i]), i))
    kept: list[int] = []
    for i in order:
        m = moves[i]
        if any(move_embeds(moves[k], m) for k in kept):
            continue
        kept = [k for k in kept if not move_embeds(m, moves[k])]
        kept.append(i)
    return tuple(moves[i] for i in sorted(kept))


def _prune_conjuncts(conjuncts: tuple[Conjunction, ...]) -> tuple[Conjunction, ...]:
    """Drop every conjunct that embeds into a sibling; dual to _prune_moves."""
    order = sorted(
        range(len(conjuncts)), key=lambda i: (conjunction_sort_key(conjuncts[i]), i)
    )
    kept: list[int] = []
    for i in order:
        d = conjuncts[i]
        if any(conjunction_embeds(d, conjuncts[k]) for k in kept):
            continue
        kept = [k for k in kept if not conjunction_embeds(conjuncts[k], d)]
        kept.append(i)
    return tuple(conjuncts[i] for i in sorted(kept))


_LONE_IDLE = Disjunction((Conjunction((IDLE_MOVE,)),))


def minimize(c: CanonicalTerm) -> CanonicalTerm:
    """Delete embedding-redundant moves and conjuncts, recursively, to a fixpoint."""
    if isinstance(c, CanonicalIdle):
        return c
    conjuncts = tuple(
        Conjunction(
            tuple(
                m if is_idle_move(m) else Move(m.head, minimize(m.continuation))
                for m in conj.moves
            )
        )
        for conj in c.conjuncts
    )
    while True:
        pruned = tuple(Conjunction(_prune_moves(conj.moves)) for conj in conjuncts)
        pruned = _prune_conjuncts(pruned)
        if pruned == conjuncts:
            break
        conjuncts = pruned
    result = Disjunction(conjuncts)
    # A single idle conjunct is just the idle game; collapsing it keeps
    # the idle game's canonical representative unique.
    if result == _LONE_IDLE:
        return CANONICAL_IDLE
    return result


def normalize(t: Term) -> CanonicalTerm:
    """Minimal canonical form: dualize inward, canonicalize, minimize, sort."""
    return sort_canonical(minimize(canonicalize(dual_normal_form(t))))


def is_minimal_canonical(c: object) -> bool:
    """Canonical shape with no embedding-redundant conjunct or disjunct left."""
    if not is_canonical(c):
        return False
    if isinstance(c, CanonicalIdle):
        return True
    assert isinstance(c, Disjunction)
    if c == _LONE_IDLE:
        return False
    for conj in c.conjuncts:
        for m in conj.moves:
            if not is_idle_move(m) and not is_minimal_canonical(m.continuation):
                return False
        for i, m1 in enumerate(conj.moves):
            for j, m2 in enumerate(conj.moves):
                if i != j and move_embeds(m1, m2):
                    return False
    for i, d1 in enumerate(c.conjuncts):
        for j, d2 in enumerate(c.conjuncts):
            if i != j and conjunction_embeds(d1, d2):
                return False
    return True
