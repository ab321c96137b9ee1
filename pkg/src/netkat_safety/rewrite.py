"""Star elimination, power unfolding, distribution and word normalization.

The engine works in the restricted theory used for explanations: assignment
chains are never collapsed (no PA-MOD-MOD), a test in front of a matching
assignment is never absorbed (no PA-FILTER-MOD), and stars are not unrolled;
instead ``in.(p.t)*.out`` is replaced by ``in.(1 + p.t)^n.out`` with ``n``
the hop-by-hop size of ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnsupportedAtom, WordBudgetExceeded
from .terms import (
    DROP, SKIP, And, Filter, Mod, ModAtom, One, Or, Policy, Seq, Test,
    TestAtom, Union, Word, Zero, flatten_seq, power, seq_all, union_all,
)

INHIBITED = frozenset({"PA-MOD-MOD", "PA-FILTER-MOD", "KA-UNROLL-L", "KA-UNROLL-R"})


@dataclass(frozen=True)
class TraceStep:
    axiom: str
    position: int
    before: Word
    after: Word

    def line(self, prefix: str = "") -> str:
        return f"{self.axiom}\t{prefix}{self.position}\t{self.before}\t{self.after}"


@dataclass
class RewriteTrace:
    steps: list = field(default_factory=list)

    def add(self, axiom, position, before, after):
        self.steps.append(TraceStep(axiom, position, before, after))

    def replay(self, w: Word) -> Word:
        for st in self.steps:
            if w.is_zero:
                raise ValueError("step applied to the zero word")
            n = len(st.before.atoms)
            if w.atoms[st.position:st.position + n] != st.before.atoms:
                raise ValueError(f"step {st} does not match {w}")
            if st.after.is_zero:
                w = Word.zero()
            else:
                w = Word(w.atoms[:st.position] + st.after.atoms + w.atoms[st.position + n:])
        return w

    def lines(self, prefix: str = "") -> list:
        return [st.line(prefix) for st in self.steps]


class SymbolicStore:
    """Field values forced by the atoms read so far, with the kind of the last writer."""

    def __init__(self):
        self.known = {}

    def lookup(self, f):
        return self.known.get(f)

    def record(self, f, v, kind):
        self.known[f] = (v, kind)


def normalize_word(w: Word, trace: RewriteTrace | None = None) -> Word:
    """Drop tests already implied, and collapse contradictions to the zero word.

    Assignments are always kept. A test whose field is already known to hold
    its value is dropped; a test contradicting the known value zeroes the word.
    """
    if w.is_zero:
        return w
    store = SymbolicStore()
    out = []
    atoms = w.atoms
    for k, atom in enumerate(atoms):
        if isinstance(atom, ModAtom):
            out.append(atom)
            store.record(atom.field, atom.value, "mod")
            continue
        known = store.lookup(atom.field)
        if known is None:
            out.append(atom)
            store.record(atom.field, atom.value, "test")
        elif known[0] == atom.value:
            if trace is not None:
                axiom = "PA-MOD-FILTER" if known[1] == "mod" else "BA-SEQ-IDEM"
                trace.add(axiom, len(out), Word((atom,)), Word())
        else:
            if trace is not None:
                axiom = ("PA-MOD-FILTER,PA-CONTRA,KA-ZERO-SEQ" if known[1] == "mod"
                         else "PA-CONTRA,KA-ZERO-SEQ")
                trace.add(axiom, 0, Word(tuple(out) + atoms[k:]), Word.zero())
            return Word.zero()
    return Word(tuple(out))


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.count = 0

    def spend(self, n):
        self.count += n
        if self.limit is not None and self.count > self.limit:
            raise WordBudgetExceeded(self.limit)


def _sum(words, prune):
    live = [w for w in words if not w.is_zero]
    if not live:
        return [Word.zero()]
    if prune:
        live = list(dict.fromkeys(live))
    return live


def _product(left, right, prune, budget):
    budget.spend(len(left) * len(right))
    if prune:
        out = [normalize_word(x + y) for x in left for y in right]
    else:
        out = [x + y for x in left for y in right]
    return _sum(out, prune)


def _pred_words(a, prune, budget):
    if isinstance(a, Zero):
        return [Word.zero()]
    if isinstance(a, One):
        return [Word()]
    if isinstance(a, Test):
        return [Word((TestAtom(a.field, a.value),))]
    if isinstance(a, Or):
        return _sum(_pred_words(a.a, prune, budget) + _pred_words(a.b, prune, budget), prune)
    if isinstance(a, And):
        return _product(_pred_words(a.a, prune, budget), _pred_words(a.b, prune, budget), prune, budget)
    raise UnsupportedAtom(a)


def _words(p, prune, budget):
    if isinstance(p, Filter):
        return _pred_words(p.a, prune, budget)
    if isinstance(p, Mod):
        return [Word((ModAtom(p.field, p.value),))]
    if isinstance(p, Union):
        return _sum(_words(p.p, prune, budget) + _words(p.q, prune, budget), prune)
    if isinstance(p, Seq):
        factors = flatten_seq(p)
        acc = _words(factors[0], prune, budget)
        for f in factors[1:]:
            acc = _product(acc, _words(f, prune, budget), prune, budget)
        return acc
    raise UnsupportedAtom(p)


def distribute_to_words(p: Policy, prune: bool = False, budget: int | None = None) -> list:
    """Distribute sequence over union until ``p`` is a list of words.

    Without ``prune`` this is the plain expansion: one word per summand in
    source order, zero summands dropped (a sum of only zeros is one zero
    word). With ``prune`` every partial product is normalized as soon as it
    is formed, dead words are dropped and duplicates merged.
    """
    return _words(p, prune, _Budget(budget))


def expand_power(base: Policy, n: int) -> list:
    """Summands ``1, base, base^2, ..., base^n`` of ``(1 + base)^n``."""
    if base == DROP:
        return [SKIP]
    return [power(base, k) for k in range(n + 1)]


def star_eliminate(spec) -> Policy:
    """``in . (1 + p.t)^n . out`` for a validated spec of hop-by-hop size n."""
    factor = Union(SKIP, spec.hop())
    return seq_all([Filter(spec.ingress)] + [factor] * spec.n + [Filter(spec.egress)])


def unfold_power(spec) -> Policy:
    """The star-eliminated term with its power written as an explicit sum."""
    return seq_all([Filter(spec.ingress), union_all(expand_power(spec.hop(), spec.n)),
                    Filter(spec.egress)])


@dataclass
class ExpansionResult:
    words: dict  # normalized nonzero word -> raw word it came from, in discovery order
    examined: int


def expand_safety_words(spec, budget: int | None = None) -> ExpansionResult:
    """Nonzero normalized words of the star-eliminated end-to-end term.

    Walks ``in.(p.t)^k.out`` for ``k = 0..n``, extending the prefixes of
    length ``k`` by one hop and pruning dead prefixes before the next hop.
    """
    spend = _Budget(budget)

    def words_of(term):
        # normalized -> raw, nonzero only
        raw = [w for w in distribute_to_words(term) if not w.is_zero]
        spend.spend(len(raw))
        out = {}
        for w in raw:
            nw = normalize_word(w)
            if not nw.is_zero:
                out.setdefault(nw, w)
        return out

    ingress = words_of(Filter(spec.ingress))
    hop = words_of(spec.hop())
    egress = words_of(Filter(spec.egress))

    found = {}
    layer = ingress
    for k in range(spec.n + 1):
        spend.spend(len(layer) * len(egress))
        for w, raw in layer.items():
            for e, eraw in egress.items():
                full = normalize_word(w + e)
                if not full.is_zero:
                    found.setdefault(full, raw + eraw)
        if k == spec.n:
            break
        spend.spend(len(layer) * len(hop))
        nxt = {}
        for w, raw in layer.items():
            for s, sraw in hop.items():
                ext = normalize_word(w + s)
                if not ext.is_zero:
                    nxt.setdefault(ext, raw + sraw)
        layer = nxt
        if not layer:
            break
    return ExpansionResult(found, spend.count)


__all__ = [
    "INHIBITED", "ExpansionResult", "RewriteTrace", "SymbolicStore", "TraceStep",
    "distribute_to_words", "expand_power", "expand_safety_words", "normalize_word",
    "star_eliminate", "unfold_power",
]
