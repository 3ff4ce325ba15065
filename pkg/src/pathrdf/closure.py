"""Forward-chaining RDFS saturation (semi-naive) and the eager strategy."""

from __future__ import annotations

import os
import re
import warnings
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .terms import (
    CLASS,
    CONT_MP,
    DATATYPE,
    DOM,
    IRI,
    LITERAL,
    LITERAL_CLASS,
    MEMBER,
    PROP,
    RANGE,
    RES,
    RHODF,
    SC,
    SP,
    TYPE,
    Term,
    Triple,
    iri,
)
from .graph import Graph

DEFAULT_CAP = 1_000_000
CAP_ENV = "PATHRDF_TRIPLE_CAP"


class ClosureLimitError(RuntimeError):
    """Saturation derived more triples than the configured cap."""


class RuleId(str, Enum):
    SP_TRANS = "sp-trans"
    SC_TRANS = "sc-trans"
    SP_INHERIT = "sp-inherit"
    SC_TYPE = "sc-type"
    DOM_TYPE = "dom-type"
    RANGE_TYPE = "range-type"
    RDF2 = "RDF2"
    RDFS6 = "RDFS6"
    RDFS7 = "RDFS7"
    RDFS8A = "RDFS8a"
    RDFS8B = "RDFS8b"
    RDFS9 = "RDFS9"
    RDFS10 = "RDFS10"
    RDFS11 = "RDFS11"
    RDFS12A = "RDFS12a"
    RDFS12B = "RDFS12b"
    RDFS13 = "RDFS13"
    RDFS14 = "RDFS14"


RHODF_RULES = (
    RuleId.SP_TRANS, RuleId.SC_TRANS, RuleId.SP_INHERIT,
    RuleId.SC_TYPE, RuleId.DOM_TYPE, RuleId.RANGE_TYPE,
)
EXTENDED_RULES = (
    RuleId.RDF2, RuleId.RDFS6, RuleId.RDFS7, RuleId.RDFS8A, RuleId.RDFS8B, RuleId.RDFS9,
    RuleId.RDFS10, RuleId.RDFS11, RuleId.RDFS12A, RuleId.RDFS12B, RuleId.RDFS13, RuleId.RDFS14,
)
REFLEXIVE_RULES = (RuleId.RDFS8A, RuleId.RDFS12A)

# extended rules that coincide with a rho-df rule
_SAME_AS = {
    RuleId.RDFS6: RuleId.DOM_TYPE,
    RuleId.RDFS7: RuleId.RANGE_TYPE,
    RuleId.RDFS8B: RuleId.SP_TRANS,
    RuleId.RDFS9: RuleId.SP_INHERIT,
    RuleId.RDFS11: RuleId.SC_TYPE,
    RuleId.RDFS12B: RuleId.SC_TRANS,
}

# single-premise rules <x type C> => <x P O>, with O = None meaning x itself
_TYPE_RULES = {
    RuleId.RDFS8A: (PROP, SP, None),
    RuleId.RDFS10: (CLASS, SC, RES),
    RuleId.RDFS12A: (CLASS, SC, None),
    RuleId.RDFS13: (CONT_MP, SP, MEMBER),
    RuleId.RDFS14: (DATATYPE, SC, LITERAL_CLASS),
}


@dataclass(frozen=True)
class ClosureConfig:
    reflexive: bool = False
    extended: bool = False
    axiomatic: bool = False
    context: tuple[Triple, ...] | None = None
    cap: int | None = None

    def __post_init__(self):
        if self.axiomatic and self.context is None:
            raise ValueError("axiomatic triples need a query context to bound rdf:_i")
        if self.context is not None:
            object.__setattr__(self, "context", tuple(self.context))

    def rules(self) -> tuple[RuleId, ...]:
        if self.extended:
            return tuple(r for r in EXTENDED_RULES if self.reflexive or r not in REFLEXIVE_RULES)
        return RHODF_RULES + (REFLEXIVE_RULES if self.reflexive else ())

    def limit(self) -> int:
        if self.cap is not None:
            return self.cap
        return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


def storable(t: Triple) -> bool:
    """Conclusions with a literal subject or non-IRI predicate are dropped."""
    return t.s.kind != LITERAL and t.p.kind == IRI


class _Store:
    def __init__(self):
        self.out = defaultdict(lambda: defaultdict(set))  # p -> s -> {o}
        self.inn = defaultdict(lambda: defaultdict(set))  # p -> o -> {s}

    def add(self, t: Triple) -> None:
        self.out[t.p][t.s].add(t.o)
        self.inn[t.p][t.o].add(t.s)

    def objects(self, s: Term, p: Term):
        return self.out.get(p, {}).get(s, ())

    def subjects(self, p: Term, o: Term):
        return self.inn.get(p, {}).get(o, ())

    def pairs(self, p: Term):
        for s, objs in self.out.get(p, {}).items():
            for o in objs:
                yield s, o


def _fire(rule: RuleId, delta: Iterable[Triple], st: _Store):
    """Conclusions of ``rule`` with at least one premise in ``delta``."""
    rule = _SAME_AS.get(rule, rule)
    for t in delta:
        s, p, o = t
        if rule in (RuleId.SP_TRANS, RuleId.SC_TRANS):
            rel = SP if rule == RuleId.SP_TRANS else SC
            if p == rel:
                for z in st.objects(o, rel):
                    yield Triple(s, rel, z)
                for x in st.subjects(rel, s):
                    yield Triple(x, rel, o)
        elif rule == RuleId.SP_INHERIT:
            if p == SP:
                for x, y in list(st.pairs(s)):
                    yield Triple(x, o, y)
            for q in st.objects(p, SP):
                yield Triple(s, q, o)
        elif rule == RuleId.SC_TYPE:
            if p == SC:
                for x in st.subjects(TYPE, s):
                    yield Triple(x, TYPE, o)
            if p == TYPE:
                for b in st.objects(o, SC):
                    yield Triple(s, TYPE, b)
        elif rule in (RuleId.DOM_TYPE, RuleId.RANGE_TYPE):
            rel = DOM if rule == RuleId.DOM_TYPE else RANGE
            pick = (lambda x, y: x) if rel == DOM else (lambda x, y: y)
            if p == rel:
                for x, y in list(st.pairs(s)):
                    yield Triple(pick(x, y), TYPE, o)
            for a in st.objects(p, rel):
                yield Triple(pick(s, o), TYPE, a)
        elif rule == RuleId.RDF2:
            yield Triple(p, TYPE, PROP)
        elif rule in _TYPE_RULES:
            cls, pred, obj = _TYPE_RULES[rule]
            if p == TYPE and o == cls:
                yield Triple(s, pred, s if obj is None else obj)
        else:
            raise ValueError(f"unknown rule {rule}")


# -- axiomatic triples ----------------------------------------------------------

_RDF_AXIOMS = [
    ("rdf:type", "type", "prop"), ("rdf:subject", "type", "prop"),
    ("rdf:predicate", "type", "prop"), ("rdf:object", "type", "prop"),
    ("rdf:first", "type", "prop"), ("rdf:rest", "type", "prop"),
    ("rdf:value", "type", "prop"), ("rdf:nil", "type", "rdf:List"),
]
_RDFS_AXIOMS = [
    ("rdf:type", "dom", "res"), ("dom", "dom", "prop"), ("range", "dom", "prop"),
    ("sp", "dom", "prop"), ("sc", "dom", "class"), ("rdf:subject", "dom", "rdf:Statement"),
    ("rdf:predicate", "dom", "rdf:Statement"), ("rdf:object", "dom", "rdf:Statement"),
    ("member", "dom", "res"), ("rdf:first", "dom", "rdf:List"), ("rdf:rest", "dom", "rdf:List"),
    ("rdfs:seeAlso", "dom", "res"), ("rdfs:isDefinedBy", "dom", "res"),
    ("rdfs:comment", "dom", "res"), ("rdfs:label", "dom", "res"), ("rdf:value", "dom", "res"),
    ("rdf:type", "range", "class"), ("dom", "range", "class"), ("range", "range", "class"),
    ("sp", "range", "prop"), ("sc", "range", "class"), ("rdf:subject", "range", "res"),
    ("rdf:predicate", "range", "res"), ("rdf:object", "range", "res"),
    ("member", "range", "res"), ("rdf:first", "range", "res"), ("rdf:rest", "range", "rdf:List"),
    ("rdfs:seeAlso", "range", "res"), ("rdfs:isDefinedBy", "range", "res"),
    ("rdfs:comment", "range", "literal"), ("rdfs:label", "range", "literal"),
    ("rdf:value", "range", "res"),
    ("rdf:Alt", "sc", "rdfs:Container"), ("rdf:Bag", "sc", "rdfs:Container"),
    ("rdf:Seq", "sc", "rdfs:Container"), ("contMP", "sc", "prop"),
    ("rdfs:isDefinedBy", "sp", "rdfs:seeAlso"), ("rdf:XMLLiteral", "type", "datatype"),
    ("rdf:XMLLiteral", "sc", "literal"), ("datatype", "sc", "class"),
]
_MEMBER_RE = re.compile(r"rdf:_(\d+)")


def container_bound(terms: Iterable[Term]) -> int:
    """Largest i such that rdf:_i occurs among ``terms`` (0 if none)."""
    k = 0
    for t in terms:
        m = _MEMBER_RE.fullmatch(t.lexical) if t.kind == IRI else None
        if m:
            k = max(k, int(m.group(1)))
    return k


def axiomatic_triples(k: int) -> frozenset[Triple]:
    out = {Triple(iri(s), iri(p), iri(o)) for s, p, o in _RDF_AXIOMS + _RDFS_AXIOMS}
    for i in range(1, k + 1):
        m = iri(f"rdf:_{i}")
        out |= {Triple(m, TYPE, PROP), Triple(m, TYPE, CONT_MP), Triple(m, DOM, RES), Triple(m, RANGE, RES)}
    return frozenset(out)


def _seed(g: Graph, cfg: ClosureConfig) -> set[Triple]:
    triples = set(g.triples)
    if cfg.axiomatic:
        terms = set(g.vocabulary)
        for t in cfg.context or ():
            terms.update(x for x in (t.s, t.p, t.o) if isinstance(x, Term))
        triples |= axiomatic_triples(container_bound(terms))
    return triples


# -- closure --------------------------------------------------------------------

def closure(g: Graph, cfg: ClosureConfig | None = None) -> Graph:
    """Least fixpoint of the configured rules over ``g`` (semi-naive)."""
    cfg = cfg or ClosureConfig()
    rules = cfg.rules()
    cap = cfg.limit()
    known = _seed(g, cfg)
    base = len(g.triples)
    st = _Store()
    for t in known:
        st.add(t)
    delta = set(known)
    while delta:
        new = set()
        for rule in rules:
            for t in _fire(rule, delta, st):
                if t not in known and storable(t):
                    new.add(t)
        for t in new:
            known.add(t)
            st.add(t)
        if len(known) - base > cap:
            raise ClosureLimitError(f"closure derived more than {cap} triples")
        delta = new
    return Graph(known)


def derived(g: Graph, cfg: ClosureConfig | None = None) -> frozenset[Triple]:
    return closure(g, cfg).triples - g.triples


def is_genuine(g: Graph) -> bool:
    return not any(t.s in RHODF or t.o in RHODF for t in g.triples)


def non_reflexive_closure(
    g: Graph, h: Iterable[Triple] = (), extended: bool = False, axiomatic: bool = False
) -> Graph:
    """Closure without the reflexivity rules, with rdf:_i axioms bounded by
    the terms of ``g`` and of the query pattern ``h``."""
    if not is_genuine(g):
        warnings.warn("graph is not genuine; answers may be incomplete", stacklevel=2)
    cfg = ClosureConfig(reflexive=False, extended=extended, axiomatic=axiomatic, context=tuple(h))
    return closure(g, cfg)


def answers_via_closure(q, g: Graph):
    from .engine import answer_query
    from .patterns import triples_of

    ctx = [Triple(t.s, t.p, t.o) for t in triples_of(q.where) if isinstance(t.p, Term)]
    return answer_query(q, non_reflexive_closure(g, ctx))
