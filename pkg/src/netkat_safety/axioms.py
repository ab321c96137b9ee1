"""The NetKAT axiom schemas, as random-instance generators.

Every schema produces a ``Law``: an equation or inequality between two
policies, optionally guarded by an inequality premise (the least-fixpoint
rules). ``check_law`` decides a law semantically on a finite set of
histories, which is how the suite checks soundness of each rule the rewrite
engine relies on, and of the ones it deliberately never fires.
"""

from __future__ import annotations

from dataclasses import dataclass

from .generators import TermGen
from .semantics import eval_on_all
from .terms import (
    SKIP, And, Dup, Filter, Mod, Neg, One, Or, Seq, Star, Test, Union, Zero,
    union_all,
)

KA = (
    "KA-PLUS-ASSOC", "KA-PLUS-COMM", "KA-PLUS-ZERO", "KA-PLUS-IDEM",
    "KA-SEQ-ASSOC", "KA-ONE-SEQ", "KA-SEQ-ONE", "KA-SEQ-DIST-L", "KA-SEQ-DIST-R",
    "KA-ZERO-SEQ", "KA-SEQ-ZERO", "KA-UNROLL-L", "KA-UNROLL-R", "KA-LFP-L", "KA-LFP-R",
)
BA = ("BA-PLUS-DIST", "BA-PLUS-ONE", "BA-EXCL-MID", "BA-SEQ-COMM", "BA-CONTRA", "BA-SEQ-IDEM")
PA = (
    "PA-MOD-MOD-COMM", "PA-MOD-FILTER-COMM", "PA-DUP-FILTER-COMM", "PA-MOD-FILTER",
    "PA-FILTER-MOD", "PA-MOD-MOD", "PA-CONTRA", "PA-MATCH-ALL",
)
ALL_AXIOMS = KA + BA + PA


@dataclass(frozen=True)
class Law:
    name: str
    lhs: object
    rhs: object
    relation: str = "eq"  # "eq" or "leq"
    premise: tuple | None = None  # (a, b) meaning a <= b


def _two_distinct(rng, seq):
    a, b = rng.sample(list(seq), 2)
    return a, b


def _bool_pair(g: TermGen, a, b, ctor):
    """``a+b`` or ``a.b`` on predicates, either inside one filter or lifted to policies."""
    if g.rng.random() < 0.5:
        return Filter(ctor(a, b))
    return (Union if ctor is Or else Seq)(Filter(a), Filter(b))


def instantiate(name: str, g: TermGen) -> Law:
    rng = g.rng
    p, q, r = g.policy(), g.policy(), g.policy()
    a, b, c = g.predicate(), g.predicate(), g.predicate()
    f = rng.choice(g.fields)
    n = rng.choice(g.values)

    if name == "KA-PLUS-ASSOC":
        return Law(name, Union(p, Union(q, r)), Union(Union(p, q), r))
    if name == "KA-PLUS-COMM":
        return Law(name, Union(p, q), Union(q, p))
    if name == "KA-PLUS-ZERO":
        return Law(name, Union(p, Filter(Zero())), p)
    if name == "KA-PLUS-IDEM":
        return Law(name, Union(p, p), p)
    if name == "KA-SEQ-ASSOC":
        return Law(name, Seq(p, Seq(q, r)), Seq(Seq(p, q), r))
    if name == "KA-ONE-SEQ":
        return Law(name, Seq(SKIP, p), p)
    if name == "KA-SEQ-ONE":
        return Law(name, Seq(p, SKIP), p)
    if name == "KA-SEQ-DIST-L":
        return Law(name, Seq(p, Union(q, r)), Union(Seq(p, q), Seq(p, r)))
    if name == "KA-SEQ-DIST-R":
        return Law(name, Seq(Union(p, q), r), Union(Seq(p, r), Seq(q, r)))
    if name == "KA-ZERO-SEQ":
        return Law(name, Seq(Filter(Zero()), p), Filter(Zero()))
    if name == "KA-SEQ-ZERO":
        return Law(name, Seq(p, Filter(Zero())), Filter(Zero()))
    if name == "KA-UNROLL-L":
        s = g.dup_free()
        return Law(name, Union(SKIP, Seq(s, Star(s))), Star(s))
    if name == "KA-UNROLL-R":
        s = g.dup_free()
        return Law(name, Union(SKIP, Seq(Star(s), s)), Star(s))
    if name == "KA-LFP-L":
        # q + p.r <= r  =>  p*.q <= r
        s = g.dup_free()
        if rng.random() < 0.5:
            r = Union(Seq(Star(s), q), r) if rng.random() < 0.5 else Seq(Star(s), q)
        return Law(name, Seq(Star(s), q), r, "leq", (Union(q, Seq(s, r)), r))
    if name == "KA-LFP-R":
        # p + q.r <= q  =>  p.r* <= q
        s = g.dup_free()
        if rng.random() < 0.5:
            q = Union(Seq(p, Star(s)), q) if rng.random() < 0.5 else Seq(p, Star(s))
        return Law(name, Seq(p, Star(s)), q, "leq", (Union(p, Seq(q, s)), q))

    if name == "BA-PLUS-DIST":
        return Law(name, Filter(Or(a, And(b, c))), Filter(And(Or(a, b), Or(a, c))))
    if name == "BA-PLUS-ONE":
        return Law(name, _bool_pair(g, a, One(), Or), SKIP)
    if name == "BA-EXCL-MID":
        return Law(name, _bool_pair(g, a, Neg(a), Or), SKIP)
    if name == "BA-SEQ-COMM":
        return Law(name, _bool_pair(g, a, b, And), _bool_pair(g, b, a, And))
    if name == "BA-CONTRA":
        return Law(name, _bool_pair(g, a, Neg(a), And), Filter(Zero()))
    if name == "BA-SEQ-IDEM":
        return Law(name, _bool_pair(g, a, a, And), Filter(a))

    if name == "PA-MOD-MOD-COMM":
        f1, f2 = _two_distinct(rng, g.fields)
        n1, n2 = rng.choice(g.values), rng.choice(g.values)
        return Law(name, Seq(Mod(f1, n1), Mod(f2, n2)), Seq(Mod(f2, n2), Mod(f1, n1)))
    if name == "PA-MOD-FILTER-COMM":
        f1, f2 = _two_distinct(rng, g.fields)
        n1, n2 = rng.choice(g.values), rng.choice(g.values)
        return Law(name, Seq(Mod(f1, n1), Filter(Test(f2, n2))), Seq(Filter(Test(f2, n2)), Mod(f1, n1)))
    if name == "PA-DUP-FILTER-COMM":
        return Law(name, Seq(Dup(), Filter(Test(f, n))), Seq(Filter(Test(f, n)), Dup()))
    if name == "PA-MOD-FILTER":
        return Law(name, Seq(Mod(f, n), Filter(Test(f, n))), Mod(f, n))
    if name == "PA-FILTER-MOD":
        return Law(name, Seq(Filter(Test(f, n)), Mod(f, n)), Filter(Test(f, n)))
    if name == "PA-MOD-MOD":
        n2 = rng.choice(g.values)
        return Law(name, Seq(Mod(f, n), Mod(f, n2)), Mod(f, n2))
    if name == "PA-CONTRA":
        n1, n2 = _two_distinct(rng, g.values)
        return Law(name, Seq(Filter(Test(f, n1)), Filter(Test(f, n2))), Filter(Zero()))
    if name == "PA-MATCH-ALL":
        return Law(name, union_all(Filter(Test(f, v)) for v in g.values), SKIP)
    raise KeyError(name)


def check_law(law: Law, dom, hs) -> bool:
    """Decide ``law`` on every history in ``hs``; a failed premise holds vacuously."""
    if law.premise is not None:
        pa, pb = (eval_on_all(t, dom, hs) for t in law.premise)
        if not all(pa[h] <= pb[h] for h in hs):
            return True
    left = eval_on_all(law.lhs, dom, hs)
    right = eval_on_all(law.rhs, dom, hs)
    if law.relation == "eq":
        return all(left[h] == right[h] for h in hs)
    return all(left[h] <= right[h] for h in hs)


__all__ = ["ALL_AXIOMS", "BA", "KA", "Law", "PA", "check_law", "instantiate"]
