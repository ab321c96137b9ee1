"""Shape checks for hop-by-hop policies, topologies and ingress/egress tests.

A network is the bundle ``in . (p . t)* . out``; ``NetworkSpec.build`` runs
every check below and the domain checks before anything downstream sees it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NotHbH, NotInOut, NotTopology, UndeclaredField
from .semantics import FieldDomains
from .terms import (
    Dup, Filter, Mod, ModAtom, Neg, One, Policy, Predicate, Seq, Star,
    Test, TestAtom, Union, Zero, and_all, flatten_and, flatten_or, flatten_seq,
    flatten_union, or_all, seq_all, subterms, union_all,
)


@dataclass(frozen=True)
class HbhSummand:
    tests: tuple  # of TestAtom
    assignment: ModAtom

    def to_policy(self) -> Policy:
        parts = [Filter(Test(t.field, t.value)) for t in self.tests]
        parts.append(Mod(self.assignment.field, self.assignment.value))
        return seq_all(parts)


@dataclass(frozen=True)
class HbhInfo:
    summands: tuple  # of HbhSummand

    @property
    def size(self) -> int:
        return len(self.summands)

    @property
    def distinct_size(self) -> int:
        return len(set(self.summands))

    def to_policy(self) -> Policy:
        return union_all(s.to_policy() for s in self.summands)


@dataclass(frozen=True)
class TopologyInfo:
    internal_links: tuple  # of (from_port, to_port)
    perimeter_ports: frozenset

    def to_policy(self, port_field: str = "pt") -> Policy:
        links = [Seq(Filter(Test(port_field, a)), Mod(port_field, b)) for a, b in self.internal_links]
        edges = [Filter(Test(port_field, v)) for v in sorted(self.perimeter_ports)]
        return union_all(links + edges)


def _test_sequence(pred: Predicate):
    """Positive tests of a conjunction, or a reason string if it is not one."""
    tests = []
    for conj in flatten_and(pred):
        if isinstance(conj, Test):
            tests.append(TestAtom(conj.field, conj.value))
        elif isinstance(conj, One):
            continue
        elif isinstance(conj, Neg):
            return "contains negation"
        elif isinstance(conj, Zero):
            return "contains constant 0"
        else:
            return "contains a disjunction"
    return tests


def _summand_reason(term: Policy) -> str:
    kinds = {type(n) for n in subterms(term)}
    if Star in kinds:
        return "contains star"
    if Dup in kinds:
        return "contains dup"
    if Neg in kinds:
        return "contains negation"
    if Union in kinds:
        return "contains a nested union"
    return ""


def validate_hbh(p: Policy, port_field: str = "pt") -> HbhInfo:
    summands = []
    for i, term in enumerate(flatten_union(p)):
        reason = _summand_reason(term)
        if reason:
            raise NotHbH(i, reason)
        tests, assignment = [], None
        for factor in flatten_seq(term):
            if isinstance(factor, Mod):
                if factor.field != port_field:
                    raise NotHbH(i, "assignment not on port field")
                if assignment is not None:
                    raise NotHbH(i, "multiple assignments")
                assignment = ModAtom(factor.field, factor.value)
            else:
                if assignment is not None:
                    raise NotHbH(i, "test after the assignment")
                seq = _test_sequence(factor.a)
                if isinstance(seq, str):
                    raise NotHbH(i, seq)
                tests.extend(seq)
        if assignment is None:
            raise NotHbH(i, "no assignment")
        summands.append(HbhSummand(tuple(tests), assignment))
    return HbhInfo(tuple(summands))


def validate_topology(t: Policy, port_field: str = "pt") -> TopologyInfo:
    links, perimeter = [], set()

    def port_test(node):
        return (isinstance(node, Filter) and isinstance(node.a, Test)
                and node.a.field == port_field)

    for i, term in enumerate(flatten_union(t)):
        if port_test(term):
            perimeter.add(term.a.value)
            continue
        if isinstance(term, Seq) and port_test(term.p) and isinstance(term.q, Mod):
            if term.q.field != port_field:
                raise NotTopology(i, "link assignment not on port field")
            src, dst = term.p.a.value, term.q.value
            if src == dst:
                raise NotTopology(i, f"link from port {src} to itself")
            links.append((src, dst))
            continue
        raise NotTopology(i, "expected a port test or a port test followed by a port assignment")
    return TopologyInfo(tuple(links), frozenset(perimeter))


def validate_inout(a: Predicate) -> list:
    """Disjuncts of a sum of positive test sequences, each a list of TestAtom.

    ``1`` is the empty sequence and ``0`` the empty sum.
    """
    if isinstance(a, Zero):
        return []
    out = []
    for disjunct in flatten_or(a):
        if isinstance(disjunct, Zero):
            continue
        seq = _test_sequence(disjunct)
        if isinstance(seq, str):
            raise NotInOut(seq)
        out.append(seq)
    return out


def check_domains(term, domains: FieldDomains) -> None:
    for node in subterms(term):
        if isinstance(node, (Test, Mod)):
            if node.field not in domains:
                raise UndeclaredField(node.field)
            if not domains.allows(node.field, node.value):
                raise DomainError(node.field, node.value)


@dataclass(frozen=True)
class NetworkSpec:
    """A validated network: switch policy, topology, ingress, hazard egress."""

    policy: Policy
    topology: Policy
    ingress: Predicate
    egress: Predicate
    domains: FieldDomains
    port_field: str
    hbh: HbhInfo
    topo: TopologyInfo
    ingress_tests: tuple
    egress_tests: tuple

    @classmethod
    def build(cls, policy, topology, ingress, egress, domains, port_field="pt") -> "NetworkSpec":
        if not isinstance(domains, FieldDomains):
            domains = FieldDomains.of(domains)
        if port_field not in domains:
            raise UndeclaredField(port_field).with_section("port_field")
        sections = (("policy", policy), ("topology", topology),
                    ("ingress", ingress), ("egress", egress))
        for name, term in sections:
            try:
                check_domains(term, domains)
            except (DomainError, UndeclaredField) as e:
                raise e.with_section(name)
        try:
            hbh = validate_hbh(policy, port_field)
        except NotHbH as e:
            raise e.with_section("policy")
        try:
            topo = validate_topology(topology, port_field)
        except NotTopology as e:
            raise e.with_section("topology")
        seqs = []
        for name, pred in (("ingress", ingress), ("egress", egress)):
            try:
                seqs.append(tuple(tuple(s) for s in validate_inout(pred)))
            except NotInOut as e:
                raise e.with_section(name)
        return cls(policy, topology, ingress, egress, domains, port_field,
                   hbh, topo, seqs[0], seqs[1])

    @property
    def n(self) -> int:
        return self.hbh.size

    def hop(self) -> Policy:
        return Seq(self.policy, self.topology)

    def end_to_end(self) -> Policy:
        """``in . (p . t)* . out``"""
        return seq_all([Filter(self.ingress), Star(self.hop()), Filter(self.egress)])


def inout_predicate(seqs) -> Predicate:
    """Rebuild a predicate from disjunct lists as returned by ``validate_inout``."""
    return or_all(and_all(Test(t.field, t.value) for t in s) for s in seqs)
