import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathrdf import oracle
from pathrdf.closure import (
    CAP_ENV,
    ClosureConfig,
    ClosureLimitError,
    RuleId,
    axiomatic_triples,
    closure,
    derived,
    is_genuine,
    non_reflexive_closure,
)
from pathrdf.graph import Graph, parse_ntriples
from pathrdf.oracle import GraphShape, naive_closure, rule_instances
from pathrdf.terms import SP, TYPE, Triple, iri

CONFIGS = [
    ClosureConfig(),
    ClosureConfig(reflexive=True),
    ClosureConfig(extended=True),
    ClosureConfig(extended=True, reflexive=True),
]


def sp_chain(n):
    return Graph(Triple(iri(f"p{i}"), SP, iri(f"p{i + 1}")) for i in range(n))


def random_graph(seed, **kw):
    rng = random.Random(seed)
    shape = GraphShape(nodes=rng.randint(3, 15), triples=rng.randint(1, 30), **kw)
    return oracle.random_genuine_graph(rng, shape)


def test_gene_closure_derives_regulation(genes_schema):
    out = closure(genes_schema)
    assert Triple(iri("dm:hb"), iri("rn:regulates"), iri("dm:kni")) in out
    assert Triple(iri("dm:bcd"), iri("rn:regulates"), iri("dm:cad")) in out
    assert Triple(iri("dm:kni"), TYPE, iri("rn:gene")) in out


def test_empty_graph():
    assert len(closure(Graph())) == 0


def test_sp_chain_count():
    g = sp_chain(5)
    new = derived(g)
    # C(6, 2) ordered pairs along the chain minus the 5 given ones
    assert len(new) == 10
    assert len(oracle.naive_closure(g).triples - g.triples) == 10
    assert all(t.p == SP for t in new)


def test_reflexive_rules_add_self_loops():
    g = parse_ntriples("a sc b .\nx type prop .\n")
    plain = closure(g)
    refl = closure(g, ClosureConfig(reflexive=True))
    assert Triple(iri("x"), SP, iri("x")) not in plain
    assert Triple(iri("x"), SP, iri("x")) in refl


def test_literal_subject_conclusions_are_dropped():
    g = parse_ntriples("p range c .\nu p 3 .\n")
    out = closure(g)
    assert all(t.s.kind != "literal" for t in out)


def test_cap(monkeypatch):
    with pytest.raises(ClosureLimitError):
        closure(sp_chain(10), ClosureConfig(cap=5))
    monkeypatch.setenv(CAP_ENV, "3")
    with pytest.raises(ClosureLimitError):
        closure(sp_chain(10))


def test_axiomatic_needs_context():
    with pytest.raises(ValueError):
        ClosureConfig(axiomatic=True)


def test_axiomatic_bound_follows_context():
    g = parse_ntriples("c rdf:_2 x .\n")
    out = closure(g, ClosureConfig(extended=True, axiomatic=True, context=()))
    assert Triple(iri("rdf:_2"), TYPE, iri("rdfs:ContainerMembershipProperty")) in out
    assert Triple(iri("rdf:_3"), TYPE, iri("rdfs:ContainerMembershipProperty")) not in out
    assert axiomatic_triples(2) < axiomatic_triples(3)


def test_non_genuine_warns():
    g = parse_ntriples("a sp sc .\n")
    assert not is_genuine(g)
    with pytest.warns(UserWarning):
        non_reflexive_closure(g)


def test_genuine_does_not_warn(genes_schema):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        non_reflexive_closure(genes_schema)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CONFIGS))
def test_matches_naive_fixpoint(seed, cfg):
    g = random_graph(seed)
    assert closure(g, cfg) == naive_closure(g, cfg)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_extensive_idempotent_monotone(seed):
    g = random_graph(seed)
    h = Graph(list(g)[: len(g) // 2])
    cg = closure(g)
    assert g.triples <= cg.triples
    assert closure(cg) == cg
    assert closure(h).triples <= cg.triples


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CONFIGS))
def test_every_rule_instance_is_closed(seed, cfg):
    out = closure(random_graph(seed), cfg)
    for rule in cfg.rules():
        for _, conclusion in rule_instances(out, rule):
            if conclusion.s.kind != "literal":
                assert conclusion in out, (rule, conclusion)


def test_rule_ids_cover_rhodf():
    assert {RuleId.SP_TRANS, RuleId.SC_TRANS} <= set(ClosureConfig().rules())
