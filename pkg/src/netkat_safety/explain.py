"""Safety verdicts and failure explanations for validated networks."""

from __future__ import annotations

from dataclasses import dataclass

from .rewrite import RewriteTrace, expand_safety_words, normalize_word
from .semantics import eval_policy, eval_predicate
from .terms import ModAtom, Word


def hops_of(word: Word, port_field: str = "pt") -> tuple:
    """Ingress port, then every port assignment in order.

    The ingress port is the first port test ahead of any port assignment;
    it is ``None`` when nothing pins the starting port.
    """
    start = None
    hops = []
    for atom in word.atoms:
        if atom.field != port_field:
            continue
        if isinstance(atom, ModAtom):
            hops.append(atom.value)
        elif start is None and not hops:
            start = atom.value
    return (start, *hops)


@dataclass(frozen=True)
class Explanation:
    word: Word
    hops: tuple

    @classmethod
    def of(cls, word: Word, port_field: str = "pt") -> "Explanation":
        if word.is_zero:
            raise ValueError("an explanation is a nonzero word")
        return cls(word, hops_of(word, port_field))

    def sort_key(self):
        return (len(self.hops), tuple(-1 if h is None else h for h in self.hops), str(self.word))

    def __str__(self):
        return str(self.word)


@dataclass(frozen=True)
class SafetyVerdict:
    safe: bool
    explanations: tuple
    n_used: int
    words_examined: int
    unminimized: tuple = ()

    def __post_init__(self):
        if self.safe == bool(self.explanations):
            raise ValueError("Safe carries no explanations; Unsafe carries at least one")

    @property
    def label(self) -> str:
        return "SAFE" if self.safe else "UNSAFE"


def _is_splice(short: tuple, long: tuple) -> bool:
    """True if ``long`` is ``short`` with one nonempty block inserted."""
    if len(short) >= len(long):
        return False
    tail = len(long) - len(short)
    for i in range(len(short) + 1):
        if long[:i] == short[:i] and long[i + tail:] == short[i:]:
            return True
    return False


def minimize_explanations(expls) -> list:
    """Drop explanations that are a retained one with a detour spliced in.

    Shorter words are considered first, so every dropped explanation has a
    kept one that it extends by a single contiguous block.
    """
    kept = []
    for e in sorted(set(expls), key=lambda e: (len(e.word), e.sort_key())):
        if not any(_is_splice(k.word.atoms, e.word.atoms) for k in kept):
            kept.append(e)
    return sorted(kept, key=Explanation.sort_key)


def check_safety(spec, minimize: bool = True, budget: int | None = None) -> SafetyVerdict:
    result = expand_safety_words(spec, budget)
    found = sorted({Explanation.of(w, spec.port_field) for w in result.words},
                   key=Explanation.sort_key)
    expls = minimize_explanations(found) if minimize else found
    return SafetyVerdict(not expls, tuple(expls), spec.n, result.examined, tuple(found))


def explain_failures(spec, minimize: bool = True, budget: int | None = None) -> list:
    return list(check_safety(spec, minimize, budget).explanations)


def explanation_traces(spec, explanations, budget: int | None = None) -> list:
    """(raw word, trace) for each explanation: how its canonical form was reached."""
    words = expand_safety_words(spec, budget).words
    out = []
    for e in explanations:
        raw = words[e.word]
        trace = RewriteTrace()
        normalize_word(raw, trace)
        out.append((raw, trace))
    return out


def witness_packet(expl: Explanation, spec):
    """A packet that the explanation carries to the egress, or None."""
    leading = {}
    for atom in expl.word.atoms:
        if isinstance(atom, ModAtom):
            break
        leading.setdefault(atom.field, atom.value)
    prog = expl.word.to_policy()
    for pk in spec.domains.packets():
        if any(pk[f] != v for f, v in leading.items()):
            continue
        for h in eval_policy(prog, (pk,), spec.domains):
            if eval_predicate(spec.egress, h[0]):
                return pk
    return None


__all__ = [
    "Explanation", "SafetyVerdict", "check_safety", "explain_failures",
    "explanation_traces", "hops_of", "minimize_explanations", "witness_packet",
]
