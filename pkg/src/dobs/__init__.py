"""Deductively open belief space with origin-set tracking and
credibility-guided belief revision."""

from .belief import BeliefBase, Context, RetractionReport
from .credibility import CredibilityView, CycleError, MultipleSourcesError
from .inference import (
    BeliefEvent,
    ContradictionReport,
    Derivation,
    FiringCapExceeded,
    InferenceEngine,
)
from .parser import ParseError, parse, parse_to_id
from .revision import (
    CoverageError,
    RevisionState,
    apply_manual_choice,
    build_inconsistent_sets,
    compute_lists,
    culprit_list,
    revise,
)
from .session import Session, SnapshotError
from .terms import (
    And,
    Atom,
    Const,
    ForAll,
    Implies,
    Not,
    Or,
    TermRef,
    TermStore,
    UnknownTermError,
    Var,
)

__all__ = [
    "And",
    "Atom",
    "BeliefBase",
    "BeliefEvent",
    "Const",
    "Context",
    "ContradictionReport",
    "CoverageError",
    "CredibilityView",
    "CycleError",
    "Derivation",
    "FiringCapExceeded",
    "ForAll",
    "Implies",
    "InferenceEngine",
    "MultipleSourcesError",
    "Not",
    "Or",
    "ParseError",
    "RetractionReport",
    "RevisionState",
    "Session",
    "SnapshotError",
    "TermRef",
    "TermStore",
    "UnknownTermError",
    "Var",
    "apply_manual_choice",
    "build_inconsistent_sets",
    "compute_lists",
    "culprit_list",
    "parse",
    "parse_to_id",
    "revise",
]
