"""Safety checking and failure explanations for NetKAT networks."""

from .errors import (
    DomainError, DomainViolation, NetKATError, NotHbH, NotInOut, NotTopology,
    ParseError, SourceSpan, UnboundedStar, UndeclaredField, UnsupportedAtom,
    WordBudgetExceeded,
)
from .explain import (
    Explanation, SafetyVerdict, check_safety, explain_failures, minimize_explanations,
)
from .parser import (
    load_network_spec, parse_network_spec, parse_policy, parse_predicate, render_policy,
)
from .rewrite import (
    distribute_to_words, expand_power, expand_safety_words, normalize_word, star_eliminate,
)
from .semantics import (
    FieldDomains, Packet, enumerate_loopfree_paths, eval_policy, eval_predicate,
    is_semantically_empty,
)
from .terms import flatten_union, policy_size
from .validation import NetworkSpec, validate_hbh, validate_inout, validate_topology

__version__ = "0.1.0"

__all__ = [
    "DomainError", "DomainViolation", "Explanation", "FieldDomains", "NetKATError",
    "NetworkSpec", "NotHbH", "NotInOut", "NotTopology", "Packet", "ParseError",
    "SafetyVerdict", "SourceSpan", "UnboundedStar", "UndeclaredField", "UnsupportedAtom",
    "WordBudgetExceeded", "check_safety", "distribute_to_words", "enumerate_loopfree_paths",
    "eval_policy", "eval_predicate", "expand_power", "expand_safety_words",
    "explain_failures", "flatten_union", "is_semantically_empty", "load_network_spec",
    "minimize_explanations", "normalize_word", "parse_network_spec", "parse_policy",
    "parse_predicate", "policy_size", "render_policy", "star_eliminate", "validate_hbh",
    "validate_inout", "validate_topology",
]
