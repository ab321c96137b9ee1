import random

import pytest
from hypothesis import given, settings

from netkat_safety.errors import DomainViolation, UnboundedStar, UndeclaredField
from netkat_safety.generators import random_spec
from netkat_safety.parser import parse_policy, parse_predicate
from netkat_safety.rewrite import star_eliminate
from netkat_safety.semantics import (
    FieldDomains, Packet, enumerate_loopfree_paths, eval_on_all, eval_policy,
    eval_predicate, histories, is_semantically_empty,
)
from netkat_safety.terms import (
    DROP, SKIP, Dup, Filter, Mod, Neg, Or, Seq, Star, Test, Union, seq_all,
)

from conftest import P1, P2, P12, TOPOLOGY, two_switch
from strategies import SMALL, dup_free_policies, network_specs, policies

PORTS = FieldDomains.of(pt=range(1, 7))


def pk(**kw):
    return Packet.of(kw)


def test_predicates():
    assert eval_predicate(Test("pt", 1), pk(pt=1))
    assert not eval_predicate(Neg(Test("pt", 1)), pk(pt=1))
    assert not eval_predicate(Or(Test("pt", 3), Test("pt", 4)), pk(pt=5))


def test_predicate_undeclared_field():
    with pytest.raises(UndeclaredField):
        eval_predicate(Test("vlan", 1), pk(pt=1))


def test_mod():
    assert eval_policy(Mod("pt", 5), (pk(pt=1),), PORTS) == {(pk(pt=5),)}


def test_failed_filter_drops():
    assert eval_policy(Filter(Test("pt", 2)), (pk(pt=1),), PORTS) == set()


def test_mod_outside_domain():
    with pytest.raises(DomainViolation):
        eval_policy(Mod("pt", 9), (pk(pt=1),), PORTS)


def test_history_checked_against_domains():
    with pytest.raises(DomainViolation):
        eval_policy(DROP, (pk(pt=9),), PORTS)
    with pytest.raises(UndeclaredField):
        eval_policy(DROP, (pk(pt=1, vlan=0),), PORTS)


def test_dup_copies_head():
    h = (pk(pt=1), pk(pt=2))
    assert eval_policy(Dup(), h, PORTS) == {(pk(pt=1), pk(pt=1), pk(pt=2))}
    out = eval_policy(seq_all([Dup(), Mod("pt", 3)]), (pk(pt=1),), PORTS)
    assert out == {(pk(pt=3), pk(pt=1))}


def test_star_under_dup_needs_bound():
    with pytest.raises(UnboundedStar):
        eval_policy(Star(Dup()), (pk(pt=1),), PORTS)
    out = eval_policy(Star(Dup()), (pk(pt=1),), PORTS, star_bound=3)
    assert out.truncated
    assert sorted(len(h) for h in out) == [1, 2, 3, 4]


def test_dup_free_star_not_truncated():
    out = eval_policy(Star(Mod("pt", 2)), (pk(pt=1),), PORTS, star_bound=0)
    assert not out.truncated
    assert out == {(pk(pt=1),), (pk(pt=2),)}


def _hand_reach(start):
    """Heads after whole hops of (p1.t)*, simulated with port tables."""
    switch = {1: [5], 6: [2]}          # p1
    links = {5: [6], 6: [5]}           # internal links of t
    edge = {1, 2, 3, 4}                # perimeter filters of t
    seen, todo = {start}, [start]
    while todo:
        port = todo.pop()
        for mid in switch.get(port, []):
            nxt = list(links.get(mid, [])) + ([mid] if mid in edge else [])
            for n in nxt:
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
    return seen


def test_star_of_hop_reaches_expected_ports():
    term = Star(Seq(parse_policy(P1), parse_policy(TOPOLOGY)))
    out = eval_policy(term, (pk(pt=1),), PORTS)
    heads = {h[0]["pt"] for h in out}
    assert heads == _hand_reach(1) == {1, 6, 2}


def test_emptiness_examples():
    isolated = seq_all([Filter(parse_predicate("pt=1")),
                        Star(Seq(parse_policy(P1), parse_policy(TOPOLOGY))),
                        Filter(parse_predicate("pt=3 + pt=4"))])
    assert is_semantically_empty(isolated, PORTS)
    merged = seq_all([Filter(parse_predicate("pt=1")),
                      Star(Seq(parse_policy(P12), parse_policy(TOPOLOGY))),
                      Filter(parse_predicate("pt=3 + pt=4"))])
    assert not is_semantically_empty(merged, PORTS)
    assert is_semantically_empty(DROP, PORTS)


def test_packet_enumeration_order():
    dom = FieldDomains.of(vlan=[1, 0], pt=[2, 1])
    assert [p.items for p in dom.packets()] == [
        (("pt", 1), ("vlan", 0)), (("pt", 1), ("vlan", 1)),
        (("pt", 2), ("vlan", 0)), (("pt", 2), ("vlan", 1)),
    ]


# --- the path oracle --------------------------------------------------------------


def test_paths_merged_policy():
    assert enumerate_loopfree_paths(two_switch(P12, "pt=1", "pt=3 + pt=4")) == {(1, 5, 6, 4)}
    assert enumerate_loopfree_paths(two_switch(P12, "pt=3", "pt=1 + pt=2")) == {(3, 5, 6, 2)}


def test_paths_safe_policy():
    assert enumerate_loopfree_paths(two_switch(P1, "pt=1", "pt=3 + pt=4")) == set()
    assert enumerate_loopfree_paths(two_switch(P2, "pt=3", "pt=1 + pt=2")) == set()


def test_paths_reachability():
    assert enumerate_loopfree_paths(two_switch(P1, "pt=1", "pt=2")) == {(1, 5, 6, 2)}


def test_paths_zero_hops():
    assert enumerate_loopfree_paths(two_switch(P1, "pt=1", "pt=1")) == {(1,)}


# --- properties -------------------------------------------------------------------

HS1 = histories(SMALL, 1)


@given(policies, policies, policies)
def test_kleisli_associative(p, q, r):
    assert eval_on_all(Seq(p, Seq(q, r)), SMALL, HS1) == eval_on_all(Seq(Seq(p, q), r), SMALL, HS1)


@given(dup_free_policies)
def test_star_limit_reached_within_packet_space(p):
    star = eval_on_all(Star(p), SMALL, HS1)
    unrolled = seq_all([Union(SKIP, p)] * SMALL.size())
    assert eval_on_all(unrolled, SMALL, HS1) == star


@settings(max_examples=60, deadline=None)
@given(network_specs)
def test_eliminated_term_below_star(spec):
    starts = [(p,) for p in spec.domains.packets()]
    below = eval_on_all(star_eliminate(spec), spec.domains, starts)
    above = eval_on_all(spec.end_to_end(), spec.domains, starts)
    assert all(below[h] <= above[h] for h in starts)


def test_paths_exist_iff_end_to_end_nonempty():
    rng = random.Random(5)
    for _ in range(60):
        spec = random_spec(rng)
        empty = is_semantically_empty(spec.end_to_end(), spec.domains)
        assert empty == (not enumerate_loopfree_paths(spec))
