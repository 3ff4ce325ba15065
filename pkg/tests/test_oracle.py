import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import names
from pathrdf import fixtures, oracle
from pathrdf.closure import ClosureConfig, RuleId, closure, is_genuine
from pathrdf.engine import answer_query
from pathrdf.graph import parse_ntriples
from pathrdf.oracle import GraphShape
from pathrdf.paths.ast import dialect_of
from pathrdf.syntax import parse_pattern, parse_query
from pathrdf.terms import SP, Triple, iri


def test_rule_instances_sp_trans():
    g = parse_ntriples("a sp b .\nb sp c .\n")
    got = {c for _, c in oracle.rule_instances(g, RuleId.SP_TRANS)}
    assert got == {Triple(iri("a"), SP, iri("c"))}


def test_naive_closure_of_genes(genes_schema):
    assert oracle.naive_closure(genes_schema) == closure(genes_schema)


def test_naive_gene_query(genes, gene_query):
    assert names(oracle.naive_answers(gene_query, genes), "x", "y", "z") == {("dm:bcd", "dm:tll", "dm:Kr")}


def test_naive_optional(genes):
    q = parse_query("SELECT ?x ?y ?z WHERE { ?x rn:inhibits ?y . OPTIONAL { ?y rn:promotes ?z } }")
    assert oracle.naive_answers(q, genes) == answer_query(q, genes)
    assert len(oracle.naive_pattern_eval(genes, q.where)) == 3


def test_guard_on_large_patterns(genes):
    p = parse_pattern("{ ?a p ?b . ?c p ?d . ?e p ?f . ?g p ?h }")
    with pytest.raises(ValueError):
        oracle.naive_pattern_eval(genes, p)


def test_generators_are_seeded():
    g1 = oracle.random_genuine_graph(random.Random(7))
    g2 = oracle.random_genuine_graph(random.Random(7))
    assert g1 == g2
    q1 = oracle.random_bgp_query(random.Random(3), g1)
    q2 = oracle.random_bgp_query(random.Random(3), g2)
    assert q1 == q2


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_random_graphs_are_genuine(seed):
    rng = random.Random(seed)
    g = oracle.random_genuine_graph(rng, GraphShape(nodes=rng.randint(1, 40), triples=rng.randint(0, 60)))
    assert is_genuine(g)
    assert len(g) <= 60


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_random_nested_is_nsparql(seed):
    rng = random.Random(seed)
    e = oracle.random_nested_expr(rng, sorted(fixtures.travel().vocabulary))
    assert dialect_of(e) in ("nsparql", None)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_engine_matches_naive_answers(seed):
    rng = random.Random(seed)
    g = oracle.random_genuine_graph(rng, GraphShape(nodes=rng.randint(2, 12), triples=rng.randint(1, 25)))
    cl = oracle.naive_closure(g, ClosureConfig())
    q = oracle.random_bgp_query(rng, g, cl, max_triples=3)
    if len(cl.vocabulary) > oracle.MAX_VOC:
        return
    assert answer_query(q, cl) == oracle.naive_answers(q, cl)
