"""Finite game boards: states plus outcome relations for each atom.

An outcome relation maps each state to an upward-closed family of state
sets, stored by its minimal generators; a state is related to exactly
the supersets of its generators.  A board carries one relation per
player for every atom (and optionally for literal bundles) and must be
consistent: whenever player 1 can force the outcome into a set, player
2 cannot force it into the complement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .canonical import Bundle
from .terms import Atom, Literal, is_valid_atom_name


def min_antichain(sets: Iterable[frozenset[str]]) -> frozenset[frozenset[str]]:
    """Drop duplicates and supersets, keeping only the minimal sets."""
    unique = set(sets)
    return frozenset(g for g in unique if not any(h < g for h in unique))


def all_subsets(states: Iterable[str]) -> list[frozenset[str]]:
    """Every subset of the given states, in a deterministic order."""
    out = [frozenset()]
    for s in states:
        out += [g | {s} for g in out]
    return out


class OutcomeRelation:
    """An upward-closed family of outcome sets for each state."""

    __slots__ = ("states", "generators")

    def __init__(
        self,
        states: Iterable[str],
        generators: Mapping[str, Iterable[frozenset[str]]],
    ):
        self.states = tuple(states)
        state_set = set(self.states)
        unknown = set(generators) - state_set
        if unknown:
            raise ValueError(f"unknown state in relation: {sorted(unknown)[0]!r}")
        gens: dict[str, frozenset[frozenset[str]]] = {}
        for s in self.states:
            given = [frozenset(g) for g in generators.get(s, ())]
            for g in given:
                if not g <= state_set:
                    bad = sorted(g - state_set)[0]
                    raise ValueError(f"unknown state in generator: {bad!r}")
            gens[s] = min_antichain(given)
        self.generators = gens

    def holds(self, state: str, outcome: frozenset[str]) -> bool:
        """True when the state is related to the outcome set."""
        return any(g <= outcome for g in self.generators[state])

    def family(self, state: str) -> list[frozenset[str]]:
        """The full upward-closed family at a state, expanded."""
        return [x for x in all_subsets(self.states) if self.holds(state, x)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutcomeRelation):
            return NotImplemented
        return (
            frozenset(self.states) == frozenset(other.states)
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.states), tuple(sorted(
            (s, tuple(sorted(tuple(sorted(g)) for g in gs)))
            for s, gs in self.generators.items()
        ))))

    def __repr__(self) -> str:
        parts = []
        for s in self.states:
            for g in sorted(self.generators[s], key=lambda g: tuple(sorted(g))):
                parts.append(f"({s}, {{{', '.join(sorted(g))}}})")
        return f"OutcomeRelation[{'; '.join(parts)}]"


def monotone_close(
    pairs: Iterable[tuple[str, Iterable[str]]], states: Iterable[str]
) -> OutcomeRelation:
    """Build a relation from generator pairs; closure under supersets is implicit."""
    states = tuple(states)
    gens: dict[str, list[frozenset[str]]] = {}
    for s, x in pairs:
        if s not in states:
            raise ValueError(f"unknown state in generator pair: {s!r}")
        gens.setdefault(s, []).append(frozenset(x))
    return OutcomeRelation(states, gens)


def identity_relation(states: Iterable[str]) -> OutcomeRelation:
    """Relates each state to exactly the sets containing it (the idle game)."""
    states = tuple(states)
    return OutcomeRelation(states, {s: (frozenset((s,)),) for s in states})


RelationPair = tuple[OutcomeRelation, OutcomeRelation]


class GameBoard:
    """States with a player-1/player-2 relation pair per atom and bundle."""

    __slots__ = ("states", "atom_relations", "bundle_relations", "fin", "det")

    def __init__(
        self,
        states: Iterable[str],
        atom_relations: Mapping[Atom, RelationPair],
        bundle_relations: Mapping[Bundle, RelationPair] | None = None,
    ):
        self.states = tuple(states)
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        self.atom_relations: dict[Atom, RelationPair] = dict(atom_relations)
        self.bundle_relations: dict[Bundle, RelationPair] = dict(bundle_relations or {})
        state_set = frozenset(self.states)
        for pair in list(self.atom_relations.values()) + list(
            self.bundle_relations.values()
        ):
            for rel in pair:
                if frozenset(rel.states) != state_set:
                    raise ValueError("relation states do not match board states")
        self.fin = self._compute_fin()
        self.det = self._compute_det()

    def _compute_fin(self) -> bool:
        return all(
            rel.generators[s]
            for pair in self.atom_relations.values()
            for rel in pair
            for s in self.states
        )

    def _compute_det(self) -> bool:
        full = frozenset(self.states)
        subsets = all_subsets(self.states)
        for rel1, rel2 in self.atom_relations.values():
            for s in self.states:
                for x in subsets:
                    if rel2.holds(s, full - x) != (not rel1.holds(s, x)):
                        return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameBoard):
            return NotImplemented
        return (
            frozenset(self.states) == frozenset(other.states)
            and self.atom_relations == other.atom_relations
            and self.bundle_relations == other.bundle_relations
        )

    def __repr__(self) -> str:
        names = ", ".join(sorted(a.name for a in self.atom_relations))
        return f"GameBoard(states={list(self.states)}, atoms=[{names}])"


@dataclass(frozen=True)
class Violation:
    """One witnessing instance of a failed board condition."""

    condition: str
    subject: str
    player: int
    state: str
    outcome: frozenset[str]


@dataclass
class BoardReport:
    """Exhaustive condition check results for a board."""

    mon: bool
    con: bool
    fin: bool
    det: bool
    violations: list[Violation] = field(default_factory=list)


def check_board(board: GameBoard) -> BoardReport:
    """Check the board conditions exhaustively over all subsets.

    Monotonicity holds by the generator representation.  Consistency is
    checked for atoms and bundles alike; the finality and determinacy
    conditions only classify the atomic alphabet.
    """
    full = frozenset(board.states)
    subsets = all_subsets(board.states)
    violations: list[Violation] = []

    subjects: list[tuple[str, RelationPair]] = [
        (a.name, pair) for a, pair in sorted(
            board.atom_relations.items(), key=lambda kv: kv[0].name
        )
    ] + [
        (b.key(), pair) for b, pair in sorted(
            board.bundle_relations.items(), key=lambda kv: kv[0].key()
        )
    ]

    con = True
    for name, (rel1, rel2) in subjects:
        for s in board.states:
            for x in subsets:
                if rel1.holds(s, x) and rel2.holds(s, full - x):
                    con = False
                    violations.append(Violation("con", name, 1, s, x))

    fin = True
    for name, (rel1, rel2) in subjects[: len(board.atom_relations)]:
        for player, rel in ((1, rel1), (2, rel2)):
            for s in board.states:
                if not rel.holds(s, full):
                    fin = False
                    violations.append(Violation("fin", name, player, s, full))

    det = True
    for name, (rel1, rel2) in subjects[: len(board.atom_relations)]:
        for s in board.states:
            for x in subsets:
                if rel2.holds(s, full - x) != (not rel1.holds(s, x)):
                    det = False
                    violations.append(Violation("det", name, 2, s, full - x))

    return BoardReport(mon=True, con=con, fin=fin, det=det, violations=violations)


class BoardFormatError(Exception):
    """Raised by load_board on malformed input."""


class ConsistencyViolationError(BoardFormatError):
    """A loaded relation pair lets both players force complementary outcomes."""

    def __init__(self, subject: str, state: str, outcome: frozenset[str]):
        self.subject = subject
        self.state = state
        self.outcome = outcome
        shown = "{" + ", ".join(sorted(outcome)) + "}"
        super().__init__(
            f"consistency violation for {subject!r}: player 1 forces {shown} "
            f"from state {state!r} while player 2 forces the complement"
        )


def _check_con_exact(subject: str, rel1: OutcomeRelation, rel2: OutcomeRelation) -> None:
    """Raise on the first consistency violation; generator-level, hence exact."""
    full = frozenset(rel1.states)
    for s in rel1.states:
        for g1 in sorted(rel1.generators[s], key=lambda g: tuple(sorted(g))):
            if rel2.holds(s, full - g1):
                raise ConsistencyViolationError(subject, s, g1)


def parse_bundle_key(key: str) -> Bundle:
    """Parse a bundle label of the shape "a||b^d" into a Bundle."""
    literals = []
    for part in key.split("||"):
        dualized = part.endswith("^d")
        name = part[:-2] if dualized else part
        if not is_valid_atom_name(name):
            raise BoardFormatError(f"invalid bundle key component: {part!r}")
        literals.append(Literal(Atom(name), dualized))
    if not literals:
        raise BoardFormatError(f"empty bundle key: {key!r}")
    return Bundle(tuple(literals))


def _load_relation(
    raw: object, states: tuple[str, ...], subject: str, which: str
) -> OutcomeRelation:
    if not isinstance(raw, list):
        raise BoardFormatError(f"{subject}.{which} must be a list of generator pairs")
    pairs = []
    for entry in raw:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], list)
            or not all(isinstance(t, str) for t in entry[1])
        ):
            raise BoardFormatError(
                f"{subject}.{which} entries must be [state, [state, ...]] pairs"
            )
        pairs.append((entry[0], entry[1]))
    try:
        return monotone_close(pairs, states)
    except ValueError as exc:
        raise BoardFormatError(f"{subject}.{which}: {exc}") from exc


def load_board(data: bytes | str, *, require_con: bool = True) -> GameBoard:
    """Decode a board from its JSON schema, verifying consistency by default."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise BoardFormatError(f"board file is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise BoardFormatError(f"board file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise BoardFormatError("board document must be a JSON object")
    extra = set(doc) - {"states", "atoms", "bundles"}
    if extra:
        raise BoardFormatError(f"unknown board key: {sorted(extra)[0]!r}")

    raw_states = doc.get("states")
    if not isinstance(raw_states, list) or not all(
        isinstance(s, str) for s in raw_states
    ):
        raise BoardFormatError('"states" must be a list of state names')
    if len(set(raw_states)) != len(raw_states):
        dup = next(s for i, s in enumerate(raw_states) if s in raw_states[:i])
        raise BoardFormatError(f"duplicate state name: {dup!r}")
    states = tuple(raw_states)

    raw_atoms = doc.get("atoms")
    if not isinstance(raw_atoms, dict):
        raise BoardFormatError('"atoms" must be an object')
    atom_relations: dict[Atom, RelationPair] = {}
    for name, entry in raw_atoms.items():
        if not is_valid_atom_name(name):
            raise BoardFormatError(f"invalid atom name: {name!r}")
        if not isinstance(entry, dict) or set(entry) != {"rho1", "rho2"}:
            raise BoardFormatError(
                f"atom {name!r} must map to an object with rho1 and rho2"
            )
        rel1 = _load_relation(entry["rho1"], states, name, "rho1")
        rel2 = _load_relation(entry["rho2"], states, name, "rho2")
        if require_con:
            _check_con_exact(name, rel1, rel2)
        atom_relations[Atom(name)] = (rel1, rel2)

    bundle_relations: dict[Bundle, RelationPair] = {}
    raw_bundles = doc.get("bundles", {})
    if not isinstance(raw_bundles, dict):
        raise BoardFormatError('"bundles" must be an object')
    for key, entry in raw_bundles.items():
        bundle = parse_bundle_key(key)
        if not isinstance(entry, dict) or set(entry) != {"rho1", "rho2"}:
            raise BoardFormatError(
                f"bundle {key!r} must map to an object with rho1 and rho2"
            )
        rel1 = _load_relation(entry["rho1"], states, key, "rho1")
        rel2 = _load_relation(entry["rho2"], states, key, "rho2")
        if require_con:
            _check_con_exact(key, rel1, rel2)
        bundle_relations[bundle] = (rel1, rel2)

    return GameBoard(states, atom_relations, bundle_relations)


def _relation_json(rel: OutcomeRelation, states: tuple[str, ...]) -> list:
    out = []
    for s in states:
        for g in sorted(rel.generators[s], key=lambda g: tuple(sorted(g))):
            out.append([s, sorted(g)])
    return out


def save_board(board: GameBoard) -> bytes:
    """Emit the canonical JSON form: sorted states, sorted names, minimal generators."""
    states = tuple(sorted(board.states))
    doc: dict = {"states": list(states)}
    atoms: dict = {}
    for atom in sorted(board.atom_relations, key=lambda a: a.name):
        rel1, rel2 = board.atom_relations[atom]
        atoms[atom.name] = {
            "rho1": _relation_json(rel1, states),
            "rho2": _relation_json(rel2, states),
        }
    doc["atoms"] = atoms
    if board.bundle_relations:
        bundles: dict = {}
        for bundle in sorted(board.bundle_relations, key=lambda b: b.key()):
            rel1, rel2 = board.bundle_relations[bundle]
            bundles[bundle.key()] = {
                "rho1": _relation_json(rel1, states),
                "rho2": _relation_json(rel2, states),
            }
        doc["bundles"] = bundles
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


_MAX_ENUM_STATES = 3
_MAX_ENUM_ATOMS = 2


def upward_families(states: tuple[str, ...]) -> list[frozenset[frozenset[str]]]:
    """Every upward-closed family over the states, as minimal generator antichains."""
    subsets = all_subsets(states)
    families: list[frozenset[frozenset[str]]] = []
    for mask in range(1 << len(subsets)):
        members = [subsets[i] for i in range(len(subsets)) if mask >> i & 1]
        if any(a < b for a in members for b in members):
            continue
        families.append(frozenset(members))
    families.sort(key=lambda f: (len(f), sorted(tuple(sorted(g)) for g in f)))
    return families


def _family_holds(family: frozenset[frozenset[str]], outcome: frozenset[str]) -> bool:
    return any(g <= outcome for g in family)


def state_family_pairs(
    states: tuple[str, ...], *, con: bool, fin: bool, det: bool
) -> list[tuple[frozenset[frozenset[str]], frozenset[frozenset[str]]]]:
    """Per-state (player-1, player-2) family pairs surviving the requested filters."""
    families = upward_families(states)
    full = frozenset(states)
    subsets = all_subsets(states)
    pairs = []
    for f1 in families:
        for f2 in families:
            if con and any(_family_holds(f2, full - g1) for g1 in f1):
                continue
            if fin and not (f1 and f2):
                continue
            if det and any(
                _family_holds(f2, full - x) != (not _family_holds(f1, x))
                for x in subsets
            ):
                continue
            pairs.append((f1, f2))
    return pairs


def enumerate_boards(
    n_states: int,
    atoms: Iterable[Atom | str],
    *,
    con: bool = True,
    fin: bool = False,
    det: bool = False,
) -> Iterator[GameBoard]:
    """Stream every board over fresh states s0..s{n-1} meeting the filters.

    The board conditions all decompose per state, so the stream is the
    cartesian product of the allowed per-state family pairs over every
    (atom, state) slot.  Bounded to 3 states and 2 atoms; the family
    count grows too quickly beyond that.
    """
    if not 0 <= n_states <= _MAX_ENUM_STATES:
        raise ValueError(f"enumerate_boards supports 0..{_MAX_ENUM_STATES} states")
    atom_list = sorted(
        (a if isinstance(a, Atom) else Atom(a) for a in atoms), key=lambda a: a.name
    )
    if len(atom_list) > _MAX_ENUM_ATOMS:
        raise ValueError(f"enumerate_boards supports at most {_MAX_ENUM_ATOMS} atoms")
    states = tuple(f"s{i}" for i in range(n_states))
    pairs = state_family_pairs(states, con=con, fin=fin, det=det)
    slots = [(a, s) for a in atom_list for s in states]

    def build(choice: tuple[int, ...]) -> GameBoard:
        gens1: dict[Atom, dict[str, frozenset[frozenset[str]]]] = {}
        gens2: dict[Atom, dict[str, frozenset[frozenset[str]]]] = {}
        for (atom, state), pick in zip(slots, choice):
            f1, f2 = pairs[pick]
            gens1.setdefault(atom, {})[state] = f1
            gens2.setdefault(atom, {})[state] = f2
        relations = {
            a: (
                OutcomeRelation(states, gens1.get(a, {})),
                OutcomeRelation(states, gens2.get(a, {})),
            )
            for a in atom_list
        }
        return GameBoard(states, relations)

    import itertools

    for choice in itertools.product(range(len(pairs)), repeat=len(slots)):
        yield build(choice)


def sample_board(
    n_states: int,
    atoms: Iterable[Atom | str],
    include_bundles: Iterable[Bundle] = (),
    seed: int | str = 0,
) -> GameBoard:
    """Draw a random consistent board, deterministically from the seed.

    Random generator sets are drawn for both players and consistency is
    repaired by deleting every player-2 generator that lets player 2
    force the complement of a player-1 outcome.
    """
    if n_states < 1:
        raise ValueError("sample_board needs at least one state")
    rng = random.Random(f"board:{seed}")
    states = tuple(f"s{i}" for i in range(n_states))
    atom_list = sorted(
        (a if isinstance(a, Atom) else Atom(a) for a in atoms), key=lambda a: a.name
    )
    bundle_list = sorted(include_bundles, key=lambda b: b.key())

    def draw_pair() -> RelationPair:
        def draw_gens() -> dict[str, list[frozenset[str]]]:
            gens: dict[str, list[frozenset[str]]] = {}
            for s in states:
                count = rng.choice((0, 1, 1, 2))
                gens[s] = [
                    frozenset(t for t in states if rng.random() < 0.5)
                    for _ in range(count)
                ]
            return gens

        g1, g2 = draw_gens(), draw_gens()
        full = set(states)
        for s in states:
            keep = []
            for g in g2[s]:
                if not any(g <= full - h for h in g1[s]):
                    keep.append(g)
            g2[s] = keep
        return OutcomeRelation(states, g1), OutcomeRelation(states, g2)

    atom_relations = {a: draw_pair() for a in atom_list}
    bundle_relations = {b: draw_pair() for b in bundle_list}
    return GameBoard(states, atom_relations, bundle_relations)
