"""Comparative belief orderings checked, realized, and queried exactly.

Everything downstream of a Space/Event pair works in exact rational
arithmetic; no float enters any verdict, bound, or certificate.
"""

from .algebra import (
    AlgebraError,
    Event,
    SentenceSyntaxError,
    Space,
    UnknownAtom,
    iter_events,
    parse_event,
)
from .axioms import AxiomReport, Verdict, Witness, check_conditional, check_partial, check_unconditional
from .credal import (
    Bounds,
    CredalSet,
    EmptyCredalSet,
    Entailment,
    ZeroProbabilityConditioner,
    bounds,
    cond_bounds,
    entails,
    is_empty,
    prade_check,
)
from .ordering import (
    CompleteOrdering,
    ConditionalStructure,
    Distribution,
    Judgment,
    PartialOrdering,
    Relation,
    condition_compare,
    induced_conditional,
    induced_ordering,
    ordering_from_scores,
)
from .oracle import (
    EnumerationResult,
    NotFound,
    enumerate_qualitative_probabilities,
    min_combination_structure,
    random_rational_distribution,
    search_nonrepresentable,
)
from .problemfile import Problem, ProblemFileError, parse_problem
from .realize import (
    NonRealizable,
    Realization,
    agrees,
    realize_complete,
    realize_partial,
)
from .service import ServiceConfig, Session, SessionError, SessionStore, create_app, replay_journal

__all__ = [
    "AlgebraError",
    "AxiomReport",
    "Bounds",
    "CompleteOrdering",
    "ConditionalStructure",
    "CredalSet",
    "Distribution",
    "EmptyCredalSet",
    "Entailment",
    "EnumerationResult",
    "Event",
    "Judgment",
    "NonRealizable",
    "NotFound",
    "PartialOrdering",
    "Problem",
    "ProblemFileError",
    "Realization",
    "Relation",
    "SentenceSyntaxError",
    "ServiceConfig",
    "Session",
    "SessionError",
    "SessionStore",
    "Space",
    "UnknownAtom",
    "Verdict",
    "Witness",
    "agrees",
    "bounds",
    "check_conditional",
    "check_partial",
    "check_unconditional",
    "cond_bounds",
    "condition_compare",
    "create_app",
    "entails",
    "enumerate_qualitative_probabilities",
    "induced_conditional",
    "induced_ordering",
    "is_empty",
    "iter_events",
    "min_combination_structure",
    "ordering_from_scores",
    "parse_event",
    "parse_problem",
    "prade_check",
    "random_rational_distribution",
    "realize_complete",
    "realize_partial",
    "replay_journal",
    "search_nonrepresentable",
]

__version__ = "0.1.0"
