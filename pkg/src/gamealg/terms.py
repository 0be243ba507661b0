"""Abstract syntax for two-player game terms.

Seven node kinds: the idle game, atomic games, dualization, a choice
resolved by player 1, a choice resolved by player 2, sequential
composition, and parallel composition.  All nodes are immutable and
compare structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_ATOM_NAME_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def is_valid_atom_name(name: str) -> bool:
    """True when name is a lowercase-led identifier (the bare token "1" never lexes as one)."""
    return bool(_ATOM_NAME_RE.match(name))


@dataclass(frozen=True)
class Atom:
    """An uninterpreted atomic game symbol, identified by name."""

    name: str

    def __post_init__(self) -> None:
        if not is_valid_atom_name(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Literal:
    """An atomic game or its dual; the only shapes allowed inside bundles."""

    atom: Atom
    dualized: bool = False

    def dual(self) -> Literal:
        return Literal(self.atom, not self.dualized)

    def __repr__(self) -> str:
        suffix = ", dual" if self.dualized else ""
        return f"Literal({self.atom.name!r}{suffix})"


class Term:
    """Base class for game term nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Idle(Term):
    """The game in which nothing happens; unit of both compositions."""


@dataclass(frozen=True)
class AtomGame(Term):
    """A game consisting of a single atomic move."""

    atom: Atom


@dataclass(frozen=True)
class Dual(Term):
    """The same game with the two players' roles swapped."""

    inner: Term


@dataclass(frozen=True)
class Choice1(Term):
    """Choice between two games, resolved by player 1."""

    left: Term
    right: Term


@dataclass(frozen=True)
class Choice2(Term):
    """Choice between two games, resolved by player 2."""

    left: Term
    right: Term


@dataclass(frozen=True)
class Compose(Term):
    """Sequential composition: play left, then right."""

    left: Term
    right: Term


@dataclass(frozen=True)
class Parallel(Term):
    """Parallel composition: both games proceed at once."""

    left: Term
    right: Term


IDLE = Idle()

# Fixed comparison rank for each node kind.  Leaves come first and the two
# choice operators come last, player-2 choice before player-1 choice.
_TAG_RANK = {
    Idle: 0,
    AtomGame: 1,
    Dual: 2,
    Compose: 3,
    Parallel: 4,
    Choice2: 5,
    Choice1: 6,
}


def term_key(t: Term) -> tuple:
    """Total-order key: rank of the node kind, then name or child keys."""
    rank = _TAG_RANK[type(t)]
    if isinstance(t, Idle):
        return (rank,)
    if isinstance(t, AtomGame):
        return (rank, t.atom.name)
    if isinstance(t, Dual):
        return (rank, term_key(t.inner))
    return (rank, term_key(t.left), term_key(t.right))


def compare_terms(t1: Term, t2: Term) -> int:
    """-1, 0, or 1 according to the total order used for deterministic sorting."""
    k1, k2 = term_key(t1), term_key(t2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


def term_size(t: Term) -> int:
    """Number of nodes in the term tree."""
    if isinstance(t, (Idle, AtomGame)):
        return 1
    if isinstance(t, Dual):
        return 1 + term_size(t.inner)
    return 1 + term_size(t.left) + term_size(t.right)


def atoms_of(t: Term) -> frozenset[Atom]:
    """The set of atoms occurring in the term."""
    if isinstance(t, Idle):
        return frozenset()
    if isinstance(t, AtomGame):
        return frozenset((t.atom,))
    if isinstance(t, Dual):
        return atoms_of(t.inner)
    return atoms_of(t.left) | atoms_of(t.right)


def has_parallel(t: Term) -> bool:
    """True when any parallel composition node occurs in the term."""
    if isinstance(t, Parallel):
        return True
    if isinstance(t, Dual):
        return has_parallel(t.inner)
    if isinstance(t, (Choice1, Choice2, Compose)):
        return has_parallel(t.left) or has_parallel(t.right)
    return False
