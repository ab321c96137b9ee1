"""Concrete syntax for NetKAT terms and network spec files.

Term grammar, loosest first::

    policy  := seq ('+' seq)*
    seq     := unary (('.' | ';') unary)*
    unary   := '!' unary | postfix
    postfix := atom '*'*
    atom    := '0' | '1' | 'dup' | f '=' n | f '<-' n | '(' policy ')'

``+`` and ``.`` are left-associative. Outside a negation they build policy
unions and sequences of filters; under ``!`` the operand must be a predicate
and they become disjunction and conjunction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NetKATError, ParseError, SourceSpan
from .semantics import FieldDomains
from .terms import (
    And, Dup, Filter, Mod, Neg, One, Or, Policy, Predicate, Seq, Star, Test,
    Union, Zero,
)

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow><-)
  | (?P<op>[=!*.;+()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, eof
    text: str
    span: SourceSpan


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(line, column))
        chunk = m.group()
        kind = m.lastgroup
        if kind != "ws":
            if kind == "arrow":
                kind = "op"
            tokens.append(Token(kind, chunk, SourceSpan(line, column, len(chunk))))
        for ch in chunk:
            if ch == "\n":
                line, column = line + 1, 1
            else:
                column += 1
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(line, column)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, text):
        t = self.tok
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}, found {_describe(t)}", t.span)
        return self.advance()

    def parse_all(self) -> Policy:
        p = self.policy()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.span)
        return p

    def policy(self):
        p = self.seq()
        while self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            p = Union(p, self.seq())
        return p

    def seq(self):
        p = self.unary()
        while self.tok.kind == "op" and self.tok.text in ".;":
            self.advance()
            p = Seq(p, self.unary())
        return p

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "!":
            self.advance()
            start = self.tok.span
            operand = self.unary()
            try:
                return Filter(Neg(as_predicate(operand)))
            except ValueError as e:
                raise ParseError(f"negation of a non-predicate: {e}", start) from None
        return self.postfix()

    def postfix(self):
        p = self.atom()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.advance()
            p = Star(p)
        return p

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            if t.text == "0" or t.text == "1":
                return Filter(Zero()) if t.text == "0" else Filter(One())
            raise ParseError(f"bare number {t.text}: only 0 and 1 are constants", t.span)
        if t.kind == "ident":
            nxt = self.tokens[self.i + 1]
            if nxt.kind == "op" and nxt.text in ("=", "<-"):
                self.advance()
                self.advance()
                val = self.tok
                if val.kind != "num":
                    raise ParseError(f"expected a value after {t.text}{nxt.text}, found {_describe(val)}", val.span)
                self.advance()
                if nxt.text == "=":
                    return Filter(Test(t.text, int(val.text)))
                return Mod(t.text, int(val.text))
            if t.text == "dup":
                self.advance()
                return Dup()
            raise ParseError(f"field {t.text!r} needs '=' or '<-'", t.span)
        if t.kind == "op" and t.text == "(":
            self.advance()
            p = self.policy()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {_describe(t)}", t.span)


def _describe(t: Token) -> str:
    return "end of input" if t.kind == "eof" else repr(t.text)


def as_predicate(p: Policy) -> Predicate:
    """View a filter-only policy as a predicate (``+`` as or, ``.`` as and)."""
    if isinstance(p, Filter):
        return p.a
    if isinstance(p, Union):
        return Or(as_predicate(p.p), as_predicate(p.q))
    if isinstance(p, Seq):
        return And(as_predicate(p.p), as_predicate(p.q))
    raise ValueError(f"{type(p).__name__} is not a predicate")


def parse_policy(text: str, line: int = 1, column: int = 1) -> Policy:
    return _Parser(tokenize(text, line, column)).parse_all()


def parse_predicate(text: str, line: int = 1, column: int = 1) -> Predicate:
    p = parse_policy(text, line, column)
    try:
        return as_predicate(p)
    except ValueError as e:
        raise ParseError(f"expected a predicate: {e}", SourceSpan(line, column)) from None


# --- rendering ----------------------------------------------------------------

_PLUS, _SEQ, _UNARY, _ATOM = 0, 1, 2, 3


def _paren(s, prec, need):
    return f"({s})" if prec < need else s


def _render_pred(a: Predicate):
    """(text, precedence) for a predicate under negation."""
    if isinstance(a, Zero):
        return "0", _ATOM
    if isinstance(a, One):
        return "1", _ATOM
    if isinstance(a, Test):
        return f"{a.field}={a.value}", _ATOM
    if isinstance(a, Neg):
        s, prec = _render_pred(a.a)
        return "!" + _paren(s, prec, _UNARY), _UNARY
    if isinstance(a, Or):
        left, lp = _render_pred(a.a)
        right, rp = _render_pred(a.b)
        return f"{_paren(left, lp, _PLUS)} + {_paren(right, rp, _SEQ)}", _PLUS
    if isinstance(a, And):
        left, lp = _render_pred(a.a)
        right, rp = _render_pred(a.b)
        return f"{_paren(left, lp, _SEQ)}.{_paren(right, rp, _UNARY)}", _SEQ
    raise TypeError(f"not a predicate: {a!r}")


def _render(p: Policy):
    if isinstance(p, Filter):
        # a policy-level filter over an or/and prints like a union/sequence
        return _render_pred(p.a)
    if isinstance(p, Mod):
        return f"{p.field}<-{p.value}", _ATOM
    if isinstance(p, Dup):
        return "dup", _ATOM
    if isinstance(p, Star):
        s, prec = _render(p.p)
        return _paren(s, prec, _ATOM) + "*", _ATOM
    if isinstance(p, Union):
        left, lp = _render(p.p)
        right, rp = _render(p.q)
        return f"{_paren(left, lp, _PLUS)} + {_paren(right, rp, _SEQ)}", _PLUS
    if isinstance(p, Seq):
        left, lp = _render(p.p)
        right, rp = _render(p.q)
        return f"{_paren(left, lp, _SEQ)}.{_paren(right, rp, _UNARY)}", _SEQ
    raise TypeError(f"not a policy: {p!r}")


def render_policy(p: Policy) -> str:
    return _render(p)[0]


def render_predicate(a: Predicate) -> str:
    return _render_pred(a)[0]


# --- network spec files -------------------------------------------------------

SECTIONS = ("port_field", "policy", "topology", "ingress", "egress")
_FIELDS_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s+in\s+\{([^}]*)\}\s*\Z")
_RANGE_RE = re.compile(r"([0-9]+)\s*\.\.\s*([0-9]+)\Z")


@dataclass(frozen=True)
class NetworkSpecSource:
    field_domains: dict
    port_field: str
    policy_text: str
    topology_text: str
    ingress_text: str
    egress_text: str
    positions: dict  # section -> (line, column) of its text


def _parse_values(body: str, line: int, column: int) -> list:
    vals = []
    for item in body.split(","):
        item = item.strip()
        if not item:
            raise ParseError("empty value in domain", SourceSpan(line, column), "fields")
        m = _RANGE_RE.match(item)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ParseError(f"empty range {item}", SourceSpan(line, column), "fields")
            vals.extend(range(lo, hi + 1))
        elif item.isdigit():
            vals.append(int(item))
        else:
            raise ParseError(f"bad value {item!r}", SourceSpan(line, column), "fields")
    return vals


def read_network_source(text: str) -> NetworkSpecSource:
    found, positions, domains = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError("expected 'key: value'", SourceSpan(lineno, 1, max(1, len(raw))))
        col = len(key) + line.index(key) + 2
        col += len(value) - len(value.lstrip())
        value = value.strip()
        span = SourceSpan(lineno, col, max(1, len(value)))
        if key == "fields":
            m = _FIELDS_RE.match(value)
            if not m:
                raise ParseError("expected 'fields: <name> in {v1,v2,...}'", span, "fields")
            name = m.group(1)
            if name in domains:
                raise ParseError(f"field {name!r} declared twice", span, "fields")
            vals = _parse_values(m.group(2), lineno, col)
            if not vals:
                raise ParseError(f"empty domain for {name!r}", span, "fields")
            domains[name] = vals
        elif key in SECTIONS:
            if key in found:
                raise ParseError("duplicate section", span, key)
            found[key] = value
            positions[key] = (lineno, col)
        else:
            raise ParseError(f"unknown section {key!r}", SourceSpan(lineno, 1, max(1, len(key))))
    for key in SECTIONS[1:]:
        if key not in found:
            raise ParseError("missing section", None, key)
    if not domains:
        raise ParseError("missing section", None, "fields")
    port_field = found.get("port_field", "pt")
    if port_field not in domains:
        raise ParseError(f"port field {port_field!r} has no declared domain", None, "port_field")
    return NetworkSpecSource(domains, port_field, found["policy"], found["topology"],
                             found["ingress"], found["egress"], positions)


def parse_network_spec(text: str):
    """Parse and validate a network spec file into a ``NetworkSpec``."""
    from .validation import NetworkSpec

    src = read_network_source(text)
    terms = {}
    for key, parse in (("policy", parse_policy), ("topology", parse_policy),
                       ("ingress", parse_predicate), ("egress", parse_predicate)):
        line, col = src.positions[key]
        try:
            terms[key] = parse(getattr(src, key + "_text"), line, col)
        except ParseError as e:
            raise e.with_section(key)
    return NetworkSpec.build(terms["policy"], terms["topology"], terms["ingress"],
                             terms["egress"], FieldDomains.of(src.field_domains),
                             src.port_field)


def load_network_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_network_spec(fh.read())


__all__ = [
    "NetKATError", "NetworkSpecSource", "ParseError", "as_predicate", "load_network_spec",
    "parse_network_spec", "parse_policy", "parse_predicate", "read_network_source",
    "render_policy", "render_predicate", "tokenize",
]
