"""Blind multicounter (Z^m) automata and word problems of free abelian groups."""

from .abelian import canonical_word, exponent_vector, in_word_problem, parse_canonical_form
from .acceptance import (
    RunGraph,
    SearchLimits,
    Status,
    Verdict,
    accept,
    brute_force_accept,
    enumerate_accepting_paths,
)
from .constructions import (
    canonical_word_problem,
    chain_candidate,
    product,
    regex_chain_nfa,
    structured_automaton,
    verify_structure,
)
from .core import (
    Alphabet,
    AutomatonError,
    Circuit,
    CounterAutomaton,
    CounterOverflowError,
    Edge,
    EpsilonCycleClass,
    InvalidAutomatonError,
    PathError,
    PathWitness,
    PreconditionError,
    TokenError,
    circuit_decompose,
    epsilon_cycle_class,
    format_word,
    is_accepting_path,
    parse_word,
    validate,
)
from .lattice import AffineTranslate, grid_coverage_check, integer_dependence, is_independent
from .refute import NotRefuted, Refutation, RefuteConfig, refute

__all__ = [
    "AffineTranslate", "Alphabet", "AutomatonError", "Circuit", "CounterAutomaton",
    "CounterOverflowError", "Edge", "EpsilonCycleClass", "InvalidAutomatonError", "NotRefuted", "PathError",
    "PathWitness", "PreconditionError", "Refutation", "RefuteConfig", "RunGraph",
    "SearchLimits", "Status", "TokenError", "Verdict", "accept", "brute_force_accept",
    "canonical_word", "canonical_word_problem", "chain_candidate", "circuit_decompose",
    "enumerate_accepting_paths", "epsilon_cycle_class", "exponent_vector", "format_word",
    "grid_coverage_check", "in_word_problem", "integer_dependence", "is_accepting_path",
    "is_independent", "parse_canonical_form", "parse_word", "product", "refute",
    "regex_chain_nfa", "structured_automaton", "validate", "verify_structure",
]
