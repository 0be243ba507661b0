"""Embedding, canonical sorting, and isomorphism of canonical terms.

An embedding witnesses that one canonical term denotes a smaller game
than another in the choice order.  Idle embeds only into idle.  A move
embeds into another when their heads are identical (same literals in
the same order, or both the idle head) and the continuation embeds.  A
conjunction embeds into another when every move of the target is
embedded into by some move of the source; a disjunction embeds into
another when every conjunct of the source embeds into some conjunct of
the target.

Isomorphism is equality up to reordering of conjuncts and disjuncts,
decided by sorting both sides and comparing structurally.
"""

from __future__ import annotations

from .canonical import (
    CANONICAL_IDLE,
    CanonicalIdle,
    CanonicalTerm,
    Conjunction,
    Disjunction,
    IdleHead,
    Move,
)


def move_sort_key(m: Move) -> tuple:
    """Order-insensitive key: head first (idle head lowest), then continuation."""
    cont = canonical_sort_key(m.continuation)
    if isinstance(m.head, IdleHead):
        return (0, (), cont)
    lits = tuple((lit.atom.name, int(lit.dualized)) for lit in m.head.literals)
    return (1, lits, cont)


def conjunction_sort_key(conj: Conjunction) -> tuple:
    return tuple(sorted(move_sort_key(m) for m in conj.moves))


def canonical_sort_key(c: CanonicalTerm) -> tuple:
    if isinstance(c, CanonicalIdle):
        return (0,)
    return (1, tuple(sorted(conjunction_sort_key(conj) for conj in c.conjuncts)))


def sort_canonical(c: CanonicalTerm) -> CanonicalTerm:
    """Recursively order moves and conjuncts by their sort keys."""
    if isinstance(c, CanonicalIdle):
        return c
    sorted_conjuncts = []
    for conj in c.conjuncts:
        moves = tuple(
            Move(m.head, sort_canonical(m.continuation)) for m in conj.moves
        )
        sorted_conjuncts.append(Conjunction(tuple(sorted(moves, key=move_sort_key))))
    sorted_conjuncts.sort(key=conjunction_sort_key)
    return Disjunction(tuple(sorted_conjuncts))


def move_embeds(m1: Move, m2: Move) -> bool:
    """Heads must match exactly; continuations must embed."""
    if m1.head != m2.head:
        return False
    return embeds(m1.continuation, m2.continuation)


def conjunction_embeds(c1: Conjunction, c2: Conjunction) -> bool:
    """Every move of the target is embedded into by some move of the source."""
    return all(any(move_embeds(k, m) for k in c1.moves) for m in c2.moves)


def embeds(c1: CanonicalTerm, c2: CanonicalTerm) -> bool:
    """True when c1 embeds into c2 (c1 denotes the smaller game)."""
    idle1 = isinstance(c1, CanonicalIdle)
    idle2 = isinstance(c2, CanonicalIdle)
    if idle1 or idle2:
        return idle1 and idle2
    return all(
        any(conjunction_embeds(d1, d2) for d2 in c2.conjuncts) for d1 in c1.conjuncts
    )


def isomorphic(c1: CanonicalTerm, c2: CanonicalTerm) -> bool:
    """Equality up to permutation of conjuncts and disjuncts."""
    return sort_canonical(c1) == sort_canonical(c2)


__all__ = [
    "move_sort_key",
    "conjunction_sort_key",
    "canonical_sort_key",
    "sort_canonical",
    "move_embeds",
    "conjunction_embeds",
    "embeds",
    "isomorphic",
]
