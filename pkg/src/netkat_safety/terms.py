"""NetKAT term trees: predicates, policies and flat words.

All nodes are frozen dataclasses, so equality is structural and terms are
hashable and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union as TUnion

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def check_field(name: str) -> str:
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise ValueError(f"invalid field name {name!r}")
    return name


def check_value(v: int) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"invalid value {v!r}: expected an unsigned integer")
    return v


# --- predicates -------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Test:
    field: str
    value: int

    __test__ = False  # not a pytest class

    def __post_init__(self):
        check_field(self.field)
        check_value(self.value)


@dataclass(frozen=True)
class Neg:
    a: "Predicate"


@dataclass(frozen=True)
class Or:
    a: "Predicate"
    b: "Predicate"


@dataclass(frozen=True)
class And:
    a: "Predicate"
    b: "Predicate"


Predicate = TUnion[Zero, One, Test, Neg, Or, And]
PREDICATE_TYPES = (Zero, One, Test, Neg, Or, And)

# --- policies ---------------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    a: Predicate


@dataclass(frozen=True)
class Mod:
    field: str
    value: int

    def __post_init__(self):
        check_field(self.field)
        check_value(self.value)


@dataclass(frozen=True)
class Union:
    p: "Policy"
    q: "Policy"


@dataclass(frozen=True)
class Seq:
    p: "Policy"
    q: "Policy"


@dataclass(frozen=True)
class Star:
    p: "Policy"


@dataclass(frozen=True)
class Dup:
    pass


Policy = TUnion[Filter, Mod, Union, Seq, Star, Dup]
POLICY_TYPES = (Filter, Mod, Union, Seq, Star, Dup)

DROP = Filter(Zero())
SKIP = Filter(One())

# --- words ------------------------------------------------------------------


@dataclass(frozen=True)
class TestAtom:
    field: str
    value: int

    __test__ = False

    def __str__(self):
        return f"{self.field}={self.value}"


@dataclass(frozen=True)
class ModAtom:
    field: str
    value: int

    def __str__(self):
        return f"{self.field}<-{self.value}"


Atom = TUnion[TestAtom, ModAtom]


@dataclass(frozen=True)
class Word:
    """One summand of a sum-of-words: a flat product of tests and assignments.

    The empty word is the identity ``1``; ``Word.zero()`` is the drop word.
    """

    atoms: tuple = ()
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero and self.atoms:
            raise ValueError("the zero word carries no atoms")
        for atom in self.atoms:
            if not isinstance(atom, (TestAtom, ModAtom)):
                raise TypeError(f"not a word atom: {atom!r}")

    @classmethod
    def zero(cls) -> "Word":
        return cls((), True)

    def __add__(self, other: "Word") -> "Word":
        if self.is_zero or other.is_zero:
            return Word.zero()
        return Word(self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)

    def __str__(self):
        if self.is_zero:
            return "0"
        if not self.atoms:
            return "1"
        return ".".join(str(a) for a in self.atoms)

    def to_policy(self) -> Policy:
        if self.is_zero:
            return DROP
        return seq_all(atom_to_policy(a) for a in self.atoms)


def atom_to_policy(atom: Atom) -> Policy:
    if isinstance(atom, TestAtom):
        return Filter(Test(atom.field, atom.value))
    return Mod(atom.field, atom.value)


# --- folding helpers ----------------------------------------------------------


def union_all(ps: Iterable[Policy]) -> Policy:
    """Left-nested union; the empty sum is ``0``."""
    ps = list(ps)
    if not ps:
        return DROP
    return reduce(Union, ps)


def seq_all(ps: Iterable[Policy]) -> Policy:
    """Left-nested sequence; the empty product is ``1``."""
    ps = list(ps)
    if not ps:
        return SKIP
    return reduce(Seq, ps)


def or_all(preds: Iterable[Predicate]) -> Predicate:
    preds = list(preds)
    if not preds:
        return Zero()
    return reduce(Or, preds)


def and_all(preds: Iterable[Predicate]) -> Predicate:
    preds = list(preds)
    if not preds:
        return One()
    return reduce(And, preds)


def flatten_union(p: Policy) -> list:
    """Top-level summands of ``p`` in source order, with ``0`` summands dropped."""
    out = []
    stack = [p]
    while stack:
        node = stack.pop()
        if isinstance(node, Union):
            stack.append(node.q)
            stack.append(node.p)
        elif node == DROP:
            continue
        else:
            out.append(node)
    return out


def flatten_seq(p: Policy) -> list:
    out = []
    stack = [p]
    while stack:
        node = stack.pop()
        if isinstance(node, Seq):
            stack.append(node.q)
            stack.append(node.p)
        else:
            out.append(node)
    return out


def flatten_or(a: Predicate) -> list:
    if isinstance(a, Or):
        return flatten_or(a.a) + flatten_or(a.b)
    return [a]


def flatten_and(a: Predicate) -> list:
    if isinstance(a, And):
        return flatten_and(a.a) + flatten_and(a.b)
    return [a]


def policy_size(p: Policy) -> int:
    """Number of top-level summands; meaningful once ``p`` is validated hop-by-hop."""
    return len(flatten_union(p))


def subterms(p) -> Iterable:
    """Pre-order walk over a policy or predicate, descending into filters."""
    stack = [p]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Union, Seq)):
            stack.extend((node.q, node.p))
        elif isinstance(node, (Or, And)):
            stack.extend((node.b, node.a))
        elif isinstance(node, Star):
            stack.append(node.p)
        elif isinstance(node, Filter):
            stack.append(node.a)
        elif isinstance(node, Neg):
            stack.append(node.a)


def contains_dup(p: Policy) -> bool:
    return any(isinstance(n, Dup) for n in subterms(p))


def contains_star(p: Policy) -> bool:
    return any(isinstance(n, Star) for n in subterms(p))


def fields_of(p) -> set:
    return {n.field for n in subterms(p) if isinstance(n, (Test, Mod))}


def power(p: Policy, n: int) -> Policy:
    """``p`` sequenced with itself ``n`` times; ``p^0`` is ``1``."""
    return seq_all([p] * n)
