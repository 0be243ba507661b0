"""Equivalence and lattice-order decisions via normal forms."""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import CanonicalTerm
from .embedding import isomorphic
from .normalize import normalize
from .terms import Choice1, Term


@dataclass(frozen=True)
class EquivResult:
    equivalent: bool
    nf1: CanonicalTerm
    nf2: CanonicalTerm


def decide_equiv(t1: Term, t2: Term) -> EquivResult:
    """Terms are equivalent exactly when their normal forms are isomorphic."""
    nf1 = normalize(t1)
    nf2 = normalize(t2)
    return EquivResult(isomorphic(nf1, nf2), nf1, nf2)


def lattice_leq(t1: Term, t2: Term) -> bool:
    """The join order: t1 is below t2 when joining them gives back t2."""
    return isomorphic(normalize(Choice1(t1, t2)), normalize(t2))
