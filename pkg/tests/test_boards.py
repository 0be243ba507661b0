import json

import pytest

from gamealg import (
    Atom,
    BoardFormatError,
    ConsistencyViolationError,
    GameBoard,
    check_board,
    enumerate_boards,
    load_board,
    monotone_close,
    sample_board,
    save_board,
)
from gamealg.boards import (
    OutcomeRelation,
    parse_bundle_key,
    state_family_pairs,
    upward_families,
)

from oracles import outcome_to_family


def fam(rel: OutcomeRelation, s: str, states) -> set[frozenset[str]]:
    return {frozenset(x) for x in rel.family(s)}


S2 = ("s0", "s1")


def test_monotone_close_single_generator():
    rel = monotone_close([("s0", {"s1"})], S2)
    assert fam(rel, "s0", S2) == {frozenset({"s1"}), frozenset(S2)}
    assert fam(rel, "s1", S2) == set()


def test_monotone_close_empty():
    rel = monotone_close([], S2)
    assert fam(rel, "s0", S2) == set()
    assert fam(rel, "s1", S2) == set()


def test_monotone_close_empty_target_generates_everything():
    rel = monotone_close([("s0", set())], S2)
    assert fam(rel, "s0", S2) == {
        frozenset(),
        frozenset({"s0"}),
        frozenset({"s1"}),
        frozenset(S2),
    }


def test_monotone_close_rejects_unknown_state():
    with pytest.raises(ValueError):
        monotone_close([("zz", {"s0"})], S2)


def test_outcome_relation_reduces_generators_to_antichain():
    rel = OutcomeRelation(S2, {"s0": [frozenset({"s0"}), frozenset(S2)]})
    assert rel.generators["s0"] == frozenset({frozenset({"s0"})})


def test_outcome_relation_holds_is_upward():
    rel = monotone_close([("s0", {"s1"})], S2)
    assert rel.holds("s0", frozenset({"s1"}))
    assert rel.holds("s0", frozenset(S2))
    assert not rel.holds("s0", frozenset({"s0"}))
    assert not rel.holds("s1", frozenset(S2))


def board_from(doc: dict, **kw) -> GameBoard:
    return load_board(json.dumps(doc).encode(), **kw)


def test_check_board_empty_relations():
    b = board_from({"states": ["s0"], "atoms": {"a": {"rho1": [], "rho2": []}}})
    rep = check_board(b)
    assert (rep.mon, rep.con, rep.fin, rep.det) == (True, True, False, False)
    assert not [v for v in rep.violations if v.condition == "con"]
    assert [v for v in rep.violations if v.condition == "fin"]


def test_check_board_same_singleton_generator_both_players_is_consistent():
    # on S={s0}: rho1 holds only at {s0}, whose complement is the empty set,
    # and the empty set is not in the rho2 family, so CON is satisfied
    b = board_from(
        {
            "states": ["s0"],
            "atoms": {"a": {"rho1": [["s0", ["s0"]]], "rho2": [["s0", ["s0"]]]}},
        }
    )
    rep = check_board(b)
    assert rep.con is True
    assert rep.det is True


def test_check_board_reports_con_violation_with_witness():
    b = board_from(
        {
            "states": ["s0", "s1"],
            "atoms": {"a": {"rho1": [["s0", ["s1"]]], "rho2": [["s0", ["s0"]]]}},
        },
        require_con=False,
    )
    rep = check_board(b)
    assert rep.con is False
    v = rep.violations[0]
    assert (v.condition, v.subject, v.state) == ("con", "a", "s0")


def test_check_board_det_construction():
    # rho2 defined from rho1 through the determinacy dual: the complement
    # of a non-forced set is forced for the opponent
    full = frozenset(S2)
    r1 = monotone_close([("s0", {"s1"}), ("s1", {"s0", "s1"})], S2)
    gens2 = {}
    for s in S2:
        forced = []
        for bits in range(4):
            x = frozenset(t for i, t in enumerate(S2) if bits >> i & 1)
            if not r1.holds(s, x):
                forced.append(full - x)
        gens2[s] = [frozenset(g) for g in forced]
    r2 = OutcomeRelation(S2, gens2)
    b = GameBoard(S2, {Atom("a"): (r1, r2)})
    rep = check_board(b)
    assert rep.det is True
    assert rep.con is True
    assert b.det is True


def test_load_rejects_malformed_json():
    with pytest.raises(BoardFormatError):
        load_board(b"{not json")


def test_load_rejects_unknown_top_level_key():
    with pytest.raises(BoardFormatError):
        board_from({"states": [], "atoms": {}, "extra": 1})


def test_load_rejects_duplicate_states():
    with pytest.raises(BoardFormatError):
        board_from({"states": ["s0", "s0"], "atoms": {}})


def test_load_rejects_unknown_state_in_generator():
    with pytest.raises(BoardFormatError):
        board_from(
            {"states": ["s0"], "atoms": {"a": {"rho1": [["s9", []]], "rho2": []}}}
        )


def test_load_rejects_partial_atom_entry():
    with pytest.raises(BoardFormatError):
        board_from({"states": ["s0"], "atoms": {"a": {"rho1": []}}})


def test_load_rejects_inconsistent_board_by_default():
    doc = {
        "states": ["s0", "s1"],
        "atoms": {"a": {"rho1": [["s0", ["s1"]]], "rho2": [["s0", ["s0"]]]}},
    }
    with pytest.raises(ConsistencyViolationError) as exc:
        board_from(doc)
    assert exc.value.subject == "a"
    assert exc.value.state == "s0"
    b = board_from(doc, require_con=False)
    assert not check_board(b).con


def test_load_accepts_empty_atoms():
    b = board_from({"states": ["s0"], "atoms": {}})
    assert b.states == ("s0",)
    assert b.atom_relations == {}


def test_save_load_round_trip_is_extensional_and_byte_stable():
    for seed in range(12):
        b = sample_board(2, (Atom("a"), Atom("b")), seed=seed)
        data = save_board(b)
        again = load_board(data)
        assert again.states == b.states
        for atom, (r1, r2) in b.atom_relations.items():
            q1, q2 = again.atom_relations[atom]
            assert outcome_to_family(r1, b.states) == outcome_to_family(q1, b.states)
            assert outcome_to_family(r2, b.states) == outcome_to_family(q2, b.states)
        assert save_board(again) == data


def test_save_emits_minimal_generators_only():
    rel = OutcomeRelation(S2, {"s0": [frozenset({"s1"}), frozenset(S2)]})
    b = GameBoard(S2, {Atom("a"): (rel, OutcomeRelation(S2, {}))})
    doc = json.loads(save_board(b))
    assert doc["atoms"]["a"]["rho1"] == [["s0", ["s1"]]]


def test_bundle_key_parsing():
    key = parse_bundle_key("a||b^d")
    assert [(l.atom.name, l.dualized) for l in key.literals] == [
        ("a", False),
        ("b", True),
    ]
    for bad in ("", "a||", "||a", "1", "a^", "a^d^d"):
        with pytest.raises(BoardFormatError):
            parse_bundle_key(bad)


def test_bundle_relations_round_trip():
    doc = {
        "states": ["s0"],
        "atoms": {"a": {"rho1": [["s0", ["s0"]]], "rho2": []}},
        "bundles": {"a||a": {"rho1": [["s0", ["s0"]]], "rho2": []}},
    }
    b = board_from(doc)
    assert len(b.bundle_relations) == 1
    assert json.loads(save_board(b))["bundles"] == doc["bundles"]


def test_upward_family_counts():
    assert len(upward_families(("s0",))) == 3
    assert len(upward_families(S2)) == 6
    assert len(upward_families(("s0", "s1", "s2"))) == 20


def test_upward_families_are_antichains():
    for f in upward_families(S2):
        assert not any(a < b for a in f for b in f)


def test_state_family_pair_counts():
    assert len(state_family_pairs(("s0",), con=True, fin=False, det=False)) == 6
    assert len(state_family_pairs(S2, con=True, fin=False, det=False)) == 20
    assert len(state_family_pairs(S2, con=True, fin=False, det=True)) == 6
    assert len(state_family_pairs(S2, con=True, fin=True, det=False)) == 9


def test_state_family_pairs_agree_with_naive_conditions():
    all_pairs = state_family_pairs(S2, con=False, fin=False, det=False)
    con_pairs = set(state_family_pairs(S2, con=True, fin=False, det=False))
    det_pairs = set(state_family_pairs(S2, con=True, fin=False, det=True))
    assert len(all_pairs) == 36
    for pair in all_pairs:
        assert (pair in con_pairs) == _naive_pair_con(*pair)
        if pair in con_pairs:
            assert (pair in det_pairs) == _naive_pair_det(*pair)


def _subsets():
    return [frozenset(), frozenset({"s0"}), frozenset({"s1"}), frozenset(S2)]


def _holds(family, x):
    return any(g <= x for g in family)


def _naive_pair_con(f1, f2) -> bool:
    full = frozenset(S2)
    return not any(_holds(f1, x) and _holds(f2, full - x) for x in _subsets())


def _naive_pair_det(f1, f2) -> bool:
    full = frozenset(S2)
    return all(_holds(f2, full - x) == (not _holds(f1, x)) for x in _subsets())


def test_enumerate_board_counts():
    assert sum(1 for _ in enumerate_boards(0, ("a",))) == 1
    assert sum(1 for _ in enumerate_boards(1, ("a",))) == 6
    assert sum(1 for _ in enumerate_boards(2, ("a",))) == 400
    assert sum(1 for _ in enumerate_boards(2, ("a",), det=True)) == 36


def test_enumerate_boards_all_consistent_and_distinct():
    seen = []
    for b in enumerate_boards(1, ("a", "b")):
        assert check_board(b).con
        seen.append(save_board(b))
    assert len(seen) == len(set(seen)) == 36


def test_enumerate_det_filter_matches_check_board():
    for b in enumerate_boards(2, ("a",), det=True):
        assert check_board(b).det


def test_enumerate_limits():
    with pytest.raises(ValueError):
        list(enumerate_boards(4, ("a",)))
    with pytest.raises(ValueError):
        list(enumerate_boards(1, ("a", "b", "c")))


def test_sample_board_deterministic_and_consistent():
    b1 = sample_board(2, (Atom("a"), Atom("b")), seed=42)
    b2 = sample_board(2, (Atom("a"), Atom("b")), seed=42)
    assert save_board(b1) == save_board(b2)
    for seed in range(40):
        rep = check_board(sample_board(2, (Atom("a"),), seed=seed))
        assert rep.mon and rep.con


def test_sample_boards_vary_with_seed():
    blobs = {save_board(sample_board(2, (Atom("a"),), seed=s)) for s in range(100)}
    assert len(blobs) >= 2


def test_sample_board_with_bundles():
    from gamealg.boards import parse_bundle_key

    key = parse_bundle_key("a||b")
    b = sample_board(2, (Atom("a"), Atom("b")), include_bundles=(key,), seed=9)
    assert key in b.bundle_relations
    assert check_board(b).con
