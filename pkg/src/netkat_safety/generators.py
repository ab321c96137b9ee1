"""Seeded random generators for terms and validated networks.

Used by the property suites and the sweep scripts; all output is a pure
function of the ``random.Random`` passed in.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .semantics import FieldDomains
from .terms import (
    And, Dup, Filter, Mod, Neg, One, Or, Seq, Star, Test, Union, Zero,
    and_all, or_all, seq_all, union_all,
)
from .validation import NetworkSpec


@dataclass(frozen=True)
class SpecConfig:
    max_ports: int = 4
    max_summands: int = 3
    max_extra_fields: int = 2
    max_extra_values: int = 2
    port_pool: int = 9  # ports drawn from 1..port_pool
    link_prob: float = 0.35
    perimeter_prob: float = 0.4
    pin_ingress_port: bool = True  # every ingress disjunct tests the port


def _tests_for(rng, domains, port_field, port_prob, extra_prob):
    tests = []
    for f, vals in domains.items():
        prob = port_prob if f == port_field else extra_prob
        if rng.random() < prob:
            tests.append(Test(f, rng.choice(vals)))
    return tests


def _sum_of_sequences(rng, domains, port_field, port_prob, extra_prob, max_disjuncts=2):
    disjuncts = []
    for _ in range(rng.randint(1, max_disjuncts)):
        disjuncts.append(and_all(_tests_for(rng, domains, port_field, port_prob, extra_prob)))
    return or_all(disjuncts)


def random_spec(rng: random.Random, cfg: SpecConfig = SpecConfig(), port_field: str = "pt") -> NetworkSpec:
    ports = sorted(rng.sample(range(1, cfg.port_pool + 1), rng.randint(1, cfg.max_ports)))
    domains = {port_field: ports}
    for i in range(rng.randint(0, cfg.max_extra_fields)):
        domains[f"f{i}"] = list(range(rng.randint(1, cfg.max_extra_values)))

    summands = []
    for _ in range(rng.randint(0, cfg.max_summands)):
        tests = _tests_for(rng, domains, port_field, 0.75, 0.3)
        rng.shuffle(tests)
        parts = [Filter(t) for t in tests] + [Mod(port_field, rng.choice(ports))]
        summands.append(seq_all(parts))
    policy = union_all(summands)

    links = []
    for a in ports:
        for b in ports:
            if a != b and rng.random() < cfg.link_prob:
                links.append(Seq(Filter(Test(port_field, a)), Mod(port_field, b)))
        if rng.random() < cfg.perimeter_prob:
            links.append(Filter(Test(port_field, a)))
    rng.shuffle(links)
    topology = union_all(links)

    ingress_port_prob = 1.0 if cfg.pin_ingress_port else 0.7
    ingress = _sum_of_sequences(rng, domains, port_field, ingress_port_prob, 0.3)
    egress = _sum_of_sequences(rng, domains, port_field, 0.85, 0.3)
    return NetworkSpec.build(policy, topology, ingress, egress, FieldDomains.of(domains), port_field)


# --- arbitrary terms ------------------------------------------------------------

FUZZ_FIELDS = ("pt", "f", "vlan", "dup_tag", "_x", "dup", "F9")


@dataclass
class TermGen:
    """Random predicates and policies over fixed field/value choices."""

    rng: random.Random
    fields: tuple = ("f", "g")
    values: tuple = (0, 1, 2)
    allow_dup: bool = True
    allow_star: bool = True

    def test(self):
        return Test(self.rng.choice(self.fields), self.rng.choice(self.values))

    def predicate(self, depth=2):
        r = self.rng.random()
        if depth <= 0 or r < 0.35:
            return self.rng.choice([Zero(), One(), self.test(), self.test(), self.test()])
        kind = self.rng.choice(("neg", "or", "and"))
        if kind == "neg":
            return Neg(self.predicate(depth - 1))
        ctor = Or if kind == "or" else And
        return ctor(self.predicate(depth - 1), self.predicate(depth - 1))

    def leaf(self, dup_ok):
        choices = ["filter", "mod", "mod"]
        if dup_ok:
            choices.append("dup")
        kind = self.rng.choice(choices)
        if kind == "filter":
            return Filter(self.predicate(1))
        if kind == "mod":
            return Mod(self.rng.choice(self.fields), self.rng.choice(self.values))
        return Dup()

    def policy(self, depth=3, dup_ok=None):
        if dup_ok is None:
            dup_ok = self.allow_dup
        r = self.rng.random()
        if depth <= 0 or r < 0.3:
            return self.leaf(dup_ok)
        kinds = ["union", "seq", "seq"]
        if self.allow_star:
            kinds.append("star")
        kind = self.rng.choice(kinds)
        if kind == "star":
            return Star(self.policy(depth - 1, dup_ok=False))
        ctor = Union if kind == "union" else Seq
        return ctor(self.policy(depth - 1, dup_ok), self.policy(depth - 1, dup_ok))

    def dup_free(self, depth=3):
        return self.policy(depth, dup_ok=False)


def fuzz_policy(rng: random.Random, depth: int = 4):
    """A policy in the parser's image: filters hold atoms or negations only.

    Policy-level ``+``/``.`` over filters is the parsed reading of predicate
    syntax outside ``!``, so ``Filter(Or(..))`` never occurs here.
    """
    gen = TermGen(rng, FUZZ_FIELDS, tuple(range(0, 12)) + (4294967296,))

    def pred(d):
        if d <= 0 or rng.random() < 0.35:
            return rng.choice([Zero(), One(), gen.test(), gen.test()])
        kind = rng.choice(("neg", "or", "and"))
        if kind == "neg":
            return Neg(pred(d - 1))
        return (Or if kind == "or" else And)(pred(d - 1), pred(d - 1))

    def filt(d):
        r = rng.random()
        if r < 0.2:
            return Filter(rng.choice([Zero(), One()]))
        if r < 0.7:
            return Filter(gen.test())
        return Filter(Neg(pred(d)))

    def pol(d):
        if d <= 0 or rng.random() < 0.25:
            kind = rng.choice(("filter", "filter", "mod", "dup"))
            if kind == "filter":
                return filt(2)
            if kind == "mod":
                return Mod(rng.choice(FUZZ_FIELDS), rng.choice(gen.values))
            return Dup()
        kind = rng.choice(("union", "seq", "star"))
        if kind == "star":
            return Star(pol(d - 1))
        return (Union if kind == "union" else Seq)(pol(d - 1), pol(d - 1))

    return pol(depth)


__all__ = ["FUZZ_FIELDS", "SpecConfig", "TermGen", "fuzz_policy", "random_spec"]
