"""Denotational evaluator over packet histories, and brute-force oracles.

A history is a tuple of packets with the current packet at index 0. Policies
denote functions from a history to a set of histories; sequencing is Kleisli
composition and star is the least fixpoint of repeated iteration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import DomainViolation, UnboundedStar, UndeclaredField
from .terms import (
    And, Dup, Filter, Mod, Neg, One, Or, Policy, Predicate, Seq, Star, Test,
    Union, Zero, contains_dup,
)


@dataclass(frozen=True)
class Packet:
    """Total valuation of the declared fields, stored sorted by field name."""

    items: tuple

    @classmethod
    def of(cls, mapping: Mapping[str, int] = None, **kw) -> "Packet":
        d = dict(mapping or {}, **kw)
        return cls(tuple(sorted(d.items())))

    @cached_property
    def _map(self) -> dict:
        return dict(self.items)

    def __getitem__(self, f: str) -> int:
        try:
            return self._map[f]
        except KeyError:
            raise UndeclaredField(f) from None

    def get(self, f, default=None):
        return self._map.get(f, default)

    def set(self, f: str, v: int) -> "Packet":
        if f not in self._map:
            raise UndeclaredField(f)
        if self._map[f] == v:
            return self
        return Packet(tuple((k, v if k == f else old) for k, old in self.items))

    def as_dict(self) -> dict:
        return dict(self.items)

    def __repr__(self):
        return "{" + ", ".join(f"{k}:{v}" for k, v in self.items) + "}"


History = tuple  # of Packet, head first


class HistorySet(frozenset):
    """Frozen set of histories; ``truncated`` marks a star cut off at its bound."""

    def __new__(cls, items=(), truncated=False):
        self = super().__new__(cls, items)
        self.truncated = truncated
        return self


@dataclass(frozen=True)
class FieldDomains:
    domains: tuple  # ((field, (values...)), ...) sorted by field

    @classmethod
    def of(cls, mapping: Mapping[str, object] = None, **kw) -> "FieldDomains":
        d = dict(mapping or {}, **kw)
        items = []
        for f, vals in sorted(d.items()):
            vals = tuple(sorted(set(vals)))
            if not vals:
                raise ValueError(f"empty domain for field {f!r}")
            items.append((f, vals))
        return cls(tuple(items))

    @cached_property
    def _map(self) -> dict:
        return {f: frozenset(vs) for f, vs in self.domains}

    @property
    def fields(self) -> tuple:
        return tuple(f for f, _ in self.domains)

    def values(self, f: str) -> tuple:
        for name, vs in self.domains:
            if name == f:
                return vs
        raise UndeclaredField(f)

    def __contains__(self, f) -> bool:
        return f in self._map

    def allows(self, f: str, v: int) -> bool:
        if f not in self._map:
            raise UndeclaredField(f)
        return v in self._map[f]

    def packets(self) -> Iterator[Packet]:
        """Every packet, lexicographic by field name then value."""
        names = self.fields
        for combo in itertools.product(*(vs for _, vs in self.domains)):
            yield Packet(tuple(zip(names, combo)))

    def size(self) -> int:
        n = 1
        for _, vs in self.domains:
            n *= len(vs)
        return n

    def as_dict(self) -> dict:
        return {f: list(vs) for f, vs in self.domains}


def eval_predicate(a: Predicate, pk: Packet) -> bool:
    if isinstance(a, Zero):
        return False
    if isinstance(a, One):
        return True
    if isinstance(a, Test):
        return pk[a.field] == a.value
    if isinstance(a, Neg):
        return not eval_predicate(a.a, pk)
    if isinstance(a, Or):
        return eval_predicate(a.a, pk) or eval_predicate(a.b, pk)
    if isinstance(a, And):
        return eval_predicate(a.a, pk) and eval_predicate(a.b, pk)
    raise TypeError(f"not a predicate: {a!r}")


class _Evaluator:
    def __init__(self, dom: FieldDomains, star_bound):
        self.dom = dom
        self.star_bound = star_bound
        self.truncated = False
        self.cache = {}

    def run(self, p: Policy, h: History) -> frozenset:
        key = (p, h)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = self._eval(p, h)
        return hit

    def _eval(self, p, h):
        if isinstance(p, Filter):
            return frozenset((h,)) if eval_predicate(p.a, h[0]) else frozenset()
        if isinstance(p, Mod):
            if not self.dom.allows(p.field, p.value):
                raise DomainViolation(p.field, p.value)
            return frozenset(((h[0].set(p.field, p.value),) + h[1:],))
        if isinstance(p, Union):
            return self.run(p.p, h) | self.run(p.q, h)
        if isinstance(p, Seq):
            out = set()
            for y in self.run(p.p, h):
                out |= self.run(p.q, y)
            return frozenset(out)
        if isinstance(p, Dup):
            return frozenset(((h[0],) + h,))
        if isinstance(p, Star):
            return self._star(p.p, h)
        raise TypeError(f"not a policy: {p!r}")

    def _star(self, body, h):
        bounded = contains_dup(body)
        if bounded and self.star_bound is None:
            raise UnboundedStar()
        acc = {h}
        frontier = {h}
        rounds = 0
        while frontier:
            if bounded and rounds >= self.star_bound:
                self.truncated = True
                break
            step = set()
            for y in frontier:
                step |= self.run(body, y)
            frontier = step - acc
            acc |= frontier
            rounds += 1
        return frozenset(acc)


def check_history(h: History, dom: FieldDomains) -> None:
    if not h:
        raise ValueError("histories are nonempty")
    for pk in h:
        if set(pk.as_dict()) != set(dom.fields):
            missing = set(dom.fields) ^ set(pk.as_dict())
            raise UndeclaredField(sorted(missing)[0])
        for f, v in pk.items:
            if not dom.allows(f, v):
                raise DomainViolation(f, v)


def eval_policy(p: Policy, h: History, dom: FieldDomains, star_bound: int | None = None) -> HistorySet:
    """All histories ``p`` produces from ``h``.

    Stars over dup-free bodies iterate to their exact fixpoint. A star whose
    body contains ``dup`` needs ``star_bound``; the result is then flagged
    ``truncated`` if the iteration was cut short.
    """
    if isinstance(h, Packet):
        h = (h,)
    check_history(h, dom)
    ev = _Evaluator(dom, star_bound)
    out = ev.run(p, tuple(h))
    return HistorySet(out, ev.truncated)


def eval_on_all(p: Policy, dom: FieldDomains, histories, star_bound=None) -> dict:
    """Map each history to its output set, sharing one evaluator cache."""
    ev = _Evaluator(dom, star_bound)
    return {h: ev.run(p, h) for h in histories}


def histories(dom: FieldDomains, max_len: int) -> list:
    pks = list(dom.packets())
    out = []
    for n in range(1, max_len + 1):
        out.extend(itertools.product(pks, repeat=n))
    return out


def is_semantically_empty(p: Policy, dom: FieldDomains) -> bool:
    ev = _Evaluator(dom, None)
    return not any(ev.run(p, (pk,)) for pk in dom.packets())


def heads(hs) -> set:
    return {h[0] for h in hs}


def enumerate_loopfree_paths(spec) -> set:
    """Port sequences of every packet-simple path from ingress to egress.

    Nodes are packets; one hop applies the switch policy then the topology.
    A hop contributes the port the switch assigned, plus the far end of the
    link if the topology moved the packet.
    """
    dom = spec.domains
    pt = spec.port_field
    ev = _Evaluator(dom, None)
    policy, topology = spec.policy, spec.topology
    edges = {}

    def successors(pk):
        if pk not in edges:
            out = set()
            for (mid,) in ev.run(policy, (pk,)):
                for (nxt,) in ev.run(topology, (mid,)):
                    hop = (mid[pt],) if nxt[pt] == mid[pt] else (mid[pt], nxt[pt])
                    out.add((nxt, hop))
            edges[pk] = sorted(out, key=lambda e: (e[0].items, e[1]))
        return edges[pk]

    found = set()

    def dfs(pk, visited, ports):
        if eval_predicate(spec.egress, pk):
            found.add(ports)
        for nxt, hop in successors(pk):
            if nxt not in visited:
                visited.add(nxt)
                dfs(nxt, visited, ports + hop)
                visited.discard(nxt)

    for pk in dom.packets():
        if eval_predicate(spec.ingress, pk):
            dfs(pk, {pk}, (pk[pt],))
    return found
