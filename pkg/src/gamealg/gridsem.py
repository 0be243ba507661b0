"""Batch evaluation of parallel-free terms over many boards at once.

A board with n states has 2**n outcome subsets; an upward-closed family
is a bitmask over those subsets, so a whole per-state relation fits in
one integer.  Stacking one mask per (board, state) into numpy arrays
lets a single pass evaluate a term against hundreds of thousands of
enumerated boards, which is what the exhaustive soundness and
condition-preservation scans need.  Bounded to 3 states (mask tables
are sized 2**(2**n)).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .boards import GameBoard, OutcomeRelation, state_family_pairs
from .terms import (
    Atom,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Idle,
    Term,
)

_MAX_GRID_STATES = 3

MaskPair = tuple[np.ndarray, np.ndarray]


class _Tables:
    """Lookup tables for one state count: closure, complement-reverse, identity."""

    def __init__(self, n: int):
        if not 0 <= n <= _MAX_GRID_STATES:
            raise ValueError(f"grid evaluation supports 0..{_MAX_GRID_STATES} states")
        self.n = n
        m = 1 << n
        self.m = m
        self.full_subset = m - 1
        self.full_mask = (1 << m) - 1
        sup = []
        for x in range(m):
            sup.append(sum(1 << y for y in range(m) if x & y == x))
        upclose = np.zeros(1 << m, dtype=np.int64)
        rev = np.zeros(1 << m, dtype=np.int64)
        for f in range(1 << m):
            u = 0
            r = 0
            for x in range(m):
                if f >> x & 1:
                    u |= sup[x]
                    r |= 1 << (self.full_subset ^ x)
            upclose[f] = u
            rev[f] = r
        self.upclose = upclose
        self.rev = rev
        self.ident = [
            sum(1 << x for x in range(m) if x >> s & 1) for s in range(n)
        ]


_TABLE_CACHE: dict[int, _Tables] = {}


def _tables(n: int) -> _Tables:
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = _Tables(n)
    return _TABLE_CACHE[n]


def _subset_index(members: frozenset[str], state_index: dict[str, int]) -> int:
    return sum(1 << state_index[s] for s in members)


def family_mask(
    generators: Iterable[frozenset[str]], state_index: dict[str, int], tables: _Tables
) -> int:
    bits = 0
    for g in generators:
        bits |= 1 << _subset_index(g, state_index)
    return int(tables.upclose[bits]) if bits else 0


def mask_generators(
    mask: int, states: Sequence[str], tables: _Tables
) -> list[frozenset[str]]:
    """The minimal subsets of an upward-closed family mask."""
    out = []
    for x in range(tables.m):
        if not mask >> x & 1:
            continue
        if any(mask >> y & 1 for y in range(tables.m) if y & x == y and y != x):
            continue
        out.append(frozenset(s for i, s in enumerate(states) if x >> i & 1))
    return out


class Grid:
    """Per-atom relation masks for a batch of boards sharing one state set."""

    def __init__(
        self,
        states: tuple[str, ...],
        atom_arrays: dict[Atom, MaskPair],
        pairs: list | None = None,
        slots: list[tuple[Atom, int]] | None = None,
    ):
        self.states = states
        self.n = len(states)
        self.tables = _tables(self.n)
        self.atom_arrays = atom_arrays
        self.pairs = pairs
        self.slots = slots
        first = next(iter(atom_arrays.values()), None)
        self.count = int(first[0].shape[0]) if first is not None else 1

    def board_at(self, index: int) -> GameBoard:
        """Reconstruct one enumerated board; only enumeration grids support this."""
        if self.pairs is None or self.slots is None:
            raise ValueError("board_at requires an enumeration grid")
        base = len(self.pairs)
        k = len(self.slots)
        gens1: dict[Atom, dict[str, frozenset[frozenset[str]]]] = {}
        gens2: dict[Atom, dict[str, frozenset[frozenset[str]]]] = {}
        for j, (atom, s_i) in enumerate(self.slots):
            pick = (index // base ** (k - 1 - j)) % base
            f1, f2 = self.pairs[pick]
            gens1.setdefault(atom, {})[self.states[s_i]] = f1
            gens2.setdefault(atom, {})[self.states[s_i]] = f2
        relations = {
            a: (
                OutcomeRelation(self.states, gens1.get(a, {})),
                OutcomeRelation(self.states, gens2.get(a, {})),
            )
            for a in self.atom_arrays
        }
        return GameBoard(self.states, relations)


def enumeration_grid(
    n_states: int,
    atoms: Iterable[Atom | str],
    *,
    con: bool = True,
    fin: bool = False,
    det: bool = False,
    budget: int = 400_000,
) -> Grid | None:
    """Masks for every filtered board, aligned with the board enumeration order.

    Returns None when the board count exceeds the budget; callers fall
    back to sampling.
    """
    atom_list = sorted(
        (a if isinstance(a, Atom) else Atom(a) for a in atoms), key=lambda a: a.name
    )
    states = tuple(f"s{i}" for i in range(n_states))
    tables = _tables(n_states)
    state_index = {s: i for i, s in enumerate(states)}
    pairs = state_family_pairs(states, con=con, fin=fin, det=det)
    slots = [(a, s_i) for a in atom_list for s_i in range(n_states)]
    count = len(pairs) ** len(slots)
    if count > budget:
        return None
    mask1 = np.array(
        [family_mask(f1, state_index, tables) for f1, _ in pairs], dtype=np.int64
    )
    mask2 = np.array(
        [family_mask(f2, state_index, tables) for _, f2 in pairs], dtype=np.int64
    )
    idx = np.arange(count, dtype=np.int64)
    base = len(pairs)
    atom_arrays: dict[Atom, MaskPair] = {
        a: (
            np.zeros((count, n_states), dtype=np.int64),
            np.zeros((count, n_states), dtype=np.int64),
        )
        for a in atom_list
    }
    for j, (atom, s_i) in enumerate(slots):
        picks = (idx // base ** (len(slots) - 1 - j)) % base
        arr1, arr2 = atom_arrays[atom]
        arr1[:, s_i] = mask1[picks]
        arr2[:, s_i] = mask2[picks]
    return Grid(states, atom_arrays, pairs, slots)


def grid_of_boards(boards: Sequence[GameBoard]) -> Grid:
    """Mask arrays for an explicit batch of boards over one state set."""
    if not boards:
        raise ValueError("grid_of_boards needs at least one board")
    states = boards[0].states
    tables = _tables(len(states))
    state_index = {s: i for i, s in enumerate(states)}
    atoms = sorted(boards[0].atom_relations, key=lambda a: a.name)
    for b in boards:
        if b.states != states or sorted(b.atom_relations, key=lambda a: a.name) != atoms:
            raise ValueError("boards in a grid must share states and atoms")
    atom_arrays: dict[Atom, MaskPair] = {}
    for a in atoms:
        arr1 = np.zeros((len(boards), len(states)), dtype=np.int64)
        arr2 = np.zeros_like(arr1)
        for b_i, b in enumerate(boards):
            rel1, rel2 = b.atom_relations[a]
            for s_i, s in enumerate(states):
                arr1[b_i, s_i] = family_mask(rel1.generators[s], state_index, tables)
                arr2[b_i, s_i] = family_mask(rel2.generators[s], state_index, tables)
        atom_arrays[a] = (arr1, arr2)
    return Grid(states, atom_arrays)


def _ident_array(grid: Grid) -> np.ndarray:
    return np.tile(np.array(grid.tables.ident, dtype=np.int64), (grid.count, 1))


def _compose_masks(grid: Grid, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    t = grid.tables
    out = np.zeros_like(g)
    for x in range(t.m):
        pre = np.zeros(g.shape[0], dtype=np.int64)
        for t_i in range(grid.n):
            pre |= ((h[:, t_i] >> x) & 1) << t_i
        for s_i in range(grid.n):
            out[:, s_i] |= ((g[:, s_i] >> pre) & 1) << x
    return out


def eval_term(grid: Grid, t: Term) -> MaskPair:
    """Family masks of a parallel-free term for both players, all boards at once."""
    if isinstance(t, Idle):
        ident = _ident_array(grid)
        return (ident, ident)
    if isinstance(t, AtomGame):
        pair = grid.atom_arrays.get(t.atom)
        if pair is None:
            raise ValueError(f"grid has no relation for atom {t.atom.name!r}")
        return pair
    if isinstance(t, Dual):
        r1, r2 = eval_term(grid, t.inner)
        return (r2, r1)
    if isinstance(t, Choice1):
        a1, a2 = eval_term(grid, t.left)
        b1, b2 = eval_term(grid, t.right)
        return (a1 | b1, a2 & b2)
    if isinstance(t, Choice2):
        a1, a2 = eval_term(grid, t.left)
        b1, b2 = eval_term(grid, t.right)
        return (a1 & b1, a2 | b2)
    if isinstance(t, Compose):
        a1, a2 = eval_term(grid, t.left)
        b1, b2 = eval_term(grid, t.right)
        return (_compose_masks(grid, a1, b1), _compose_masks(grid, a2, b2))
    raise ValueError(f"grid evaluation cannot handle {type(t).__name__}")


def first_mismatch(pair_a: MaskPair, pair_b: MaskPair) -> int | None:
    """Index of the first board where the two evaluations differ, if any."""
    diff = (pair_a[0] != pair_b[0]).any(axis=1) | (pair_a[1] != pair_b[1]).any(axis=1)
    if not diff.any():
        return None
    return int(np.argmax(diff))


def upward_closed(grid: Grid, arr: np.ndarray) -> np.ndarray:
    """Per-board truth of: every state's family mask is upward closed."""
    return (grid.tables.upclose[arr] == arr).all(axis=1)


def consistent(grid: Grid, arr1: np.ndarray, arr2: np.ndarray) -> np.ndarray:
    """Per-board truth of the consistency condition for a relation pair."""
    return ((arr1 & grid.tables.rev[arr2]) == 0).all(axis=1)


def determined(grid: Grid, arr1: np.ndarray, arr2: np.ndarray) -> np.ndarray:
    """Per-board truth of determinacy: player 2 forces exactly the complements
    player 1 cannot avoid."""
    t = grid.tables
    return (arr2 == t.rev[(~arr1) & t.full_mask]).all(axis=1)
