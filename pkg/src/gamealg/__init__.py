"""Symbolic kernel for an algebra of concurrent games.

Parses game terms, rewrites them to minimal canonical form, decides
equivalence by isomorphism of normal forms, and cross-validates the
rewriting against finite game-board semantics.
"""

from .boards import (
    BoardFormatError,
    BoardReport,
    ConsistencyViolationError,
    GameBoard,
    OutcomeRelation,
    Violation,
    check_board,
    enumerate_boards,
    load_board,
    monotone_close,
    sample_board,
    save_board,
)
from .canonical import (
    Bundle,
    CANONICAL_IDLE,
    CanonicalIdle,
    CanonicalTerm,
    Conjunction,
    Disjunction,
    IDLE_HEAD,
    Move,
    canonical_to_term,
)
from .decide import EquivResult, decide_equiv, lattice_leq
from .embedding import embeds, isomorphic, sort_canonical
from .fuzzing import (
    Counterexample,
    FuzzConfig,
    RunReport,
    cg_semantics_report,
    fuzz_axioms,
    fuzz_soundness,
    random_term,
)
from .normalize import (
    canonicalize,
    dual_normal_form,
    is_canonical,
    is_minimal_canonical,
    minimize,
    normalize,
)
from .semantics import (
    MissingAtomError,
    SemanticsError,
    UnresolvableBundleError,
    default_bundle_relation,
    eval_outcome,
    eval_pair,
    find_distinguishing_board,
    holds_identity,
    holds_inclusion,
)
from .syntax import ParseError, SourcePosition, parse_term, print_term
from .terms import (
    Atom,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Idle,
    IDLE,
    Literal,
    Parallel,
    Term,
    atoms_of,
    compare_terms,
    has_parallel,
    term_size,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "AtomGame",
    "BoardFormatError",
    "BoardReport",
    "Bundle",
    "CANONICAL_IDLE",
    "CanonicalIdle",
    "IDLE_HEAD",
    "CanonicalTerm",
    "Choice1",
    "Choice2",
    "Compose",
    "Conjunction",
    "ConsistencyViolationError",
    "Counterexample",
    "Disjunction",
    "Dual",
    "EquivResult",
    "FuzzConfig",
    "GameBoard",
    "IDLE",
    "Idle",
    "Literal",
    "MissingAtomError",
    "Move",
    "OutcomeRelation",
    "Parallel",
    "ParseError",
    "RunReport",
    "SemanticsError",
    "SourcePosition",
    "Term",
    "UnresolvableBundleError",
    "Violation",
    "atoms_of",
    "canonical_to_term",
    "canonicalize",
    "cg_semantics_report",
    "check_board",
    "compare_terms",
    "decide_equiv",
    "default_bundle_relation",
    "dual_normal_form",
    "embeds",
    "enumerate_boards",
    "eval_outcome",
    "eval_pair",
    "find_distinguishing_board",
    "fuzz_axioms",
    "fuzz_soundness",
    "has_parallel",
    "holds_identity",
    "holds_inclusion",
    "is_canonical",
    "is_minimal_canonical",
    "isomorphic",
    "lattice_leq",
    "load_board",
    "minimize",
    "monotone_close",
    "normalize",
    "parse_term",
    "print_term",
    "random_term",
    "sample_board",
    "save_board",
    "sort_canonical",
    "term_size",
    "__version__",
]
