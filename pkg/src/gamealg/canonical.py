"""Canonical shape for normalized game terms.

A canonical term is either the idle game or a disjunction (player-1
choice) of conjunctions (player-2 choices) of moves.  A move pairs a
head with a canonical continuation; the head is an ordered bundle of
literals played simultaneously, or the reserved idle head.  The idle
head is the only way an idle conjunct is represented, and it always
carries the idle continuation: an idle head followed by anything else
would just be that continuation.

Bundles never contain an idle entry and idle is never dualized, so
literals are always drawn from the board's atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

from .terms import (
    IDLE,
    AtomGame,
    Compose,
    Choice1,
    Choice2,
    Dual,
    Literal,
    Parallel,
    Term,
)


@dataclass(frozen=True)
class IdleHead:
    """Reserved head marking an idle conjunct; equal only to itself."""


IDLE_HEAD = IdleHead()


@dataclass(frozen=True)
class Bundle:
    """A nonempty ordered sequence of literals played simultaneously."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise ValueError("bundle must contain at least one literal")

    def __len__(self) -> int:
        return len(self.literals)

    def dual(self) -> Bundle:
        return Bundle(tuple(lit.dual() for lit in self.literals))

    def key(self) -> str:
        return "||".join(
            lit.atom.name + ("^d" if lit.dualized else "") for lit in self.literals
        )


@dataclass(frozen=True)
class CanonicalIdle:
    """The canonical representative of the idle game."""


CANONICAL_IDLE = CanonicalIdle()

CanonicalTerm = Union[CanonicalIdle, "Disjunction"]


@dataclass(frozen=True)
class Move:
    """A head (bundle or idle head) followed by a canonical continuation."""

    head: Bundle | IdleHead
    continuation: CanonicalTerm

    def __post_init__(self) -> None:
        if isinstance(self.head, IdleHead) and self.continuation != CANONICAL_IDLE:
            raise ValueError("an idle head must carry the idle continuation")


IDLE_MOVE = Move(IDLE_HEAD, CANONICAL_IDLE)


@dataclass(frozen=True)
class Conjunction:
    """A nonempty player-2 choice among moves."""

    moves: tuple[Move, ...]

    def __post_init__(self) -> None:
        if not self.moves:
            raise ValueError("conjunction must contain at least one move")


@dataclass(frozen=True)
class Disjunction:
    """A nonempty player-1 choice among conjunctions."""

    conjuncts: tuple[Conjunction, ...]

    def __post_init__(self) -> None:
        if not self.conjuncts:
            raise ValueError("disjunction must contain at least one conjunct")

    def __str__(self) -> str:
        from .syntax import print_term

        return print_term(canonical_to_term(self))


def is_idle_move(m: Move) -> bool:
    return isinstance(m.head, IdleHead)


def single_move(m: Move) -> Disjunction:
    return Disjunction((Conjunction((m,)),))


def literal_canonical(lit: Literal) -> Disjunction:
    """The canonical form of a bare literal: one move, idle continuation."""
    return single_move(Move(Bundle((lit,)), CANONICAL_IDLE))


def literal_to_term(lit: Literal) -> Term:
    base: Term = AtomGame(lit.atom)
    return Dual(base) if lit.dualized else base


def bundle_to_term(b: Bundle) -> Term:
    return reduce(Parallel, (literal_to_term(lit) for lit in b.literals))


def _move_to_term(m: Move) -> Term:
    if is_idle_move(m):
        return IDLE
    head = bundle_to_term(m.head)
    if m.continuation == CANONICAL_IDLE:
        return head
    return Compose(head, canonical_to_term(m.continuation))


def canonical_to_term(c: CanonicalTerm) -> Term:
    """Rebuild an ordinary term from a canonical one, for printing and evaluation."""
    if isinstance(c, CanonicalIdle):
        return IDLE
    conjunct_terms = [
        reduce(Choice2, (_move_to_term(m) for m in conj.moves)) for conj in c.conjuncts
    ]
    return reduce(Choice1, conjunct_terms)


def is_canonical(c: object) -> bool:
    """Structural check that a value has the canonical shape described above."""
    if isinstance(c, CanonicalIdle):
        return True
    if not isinstance(c, Disjunction):
        return False
    if not c.conjuncts:
        return False
    for conj in c.conjuncts:
        if not isinstance(conj, Conjunction) or not conj.moves:
            return False
        for m in conj.moves:
            if not isinstance(m, Move):
                return False
            if isinstance(m.head, IdleHead):
                if m.continuation != CANONICAL_IDLE:
                    return False
            elif isinstance(m.head, Bundle):
                if not m.head.literals:
                    return False
                if not all(isinstance(lit, Literal) for lit in m.head.literals):
                    return False
                if not is_canonical(m.continuation):
                    return False
            else:
                return False
    return True


def canonical_size(c: CanonicalTerm) -> int:
    """Move count, including moves inside continuations."""
    if isinstance(c, CanonicalIdle):
        return 0
    total = 0
    for conj in c.conjuncts:
        for m in conj.moves:
            total += 1
            if not is_idle_move(m):
                total += canonical_size(m.continuation)
    return total
