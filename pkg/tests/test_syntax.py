import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
import random

from pathrdf import fixtures, oracle
from pathrdf.graph import NEXT, SELF, ParseError
from pathrdf.paths.ast import (
    AxisConstrained,
    AxisNested,
    AxisTest,
    DialectError,
    Star,
    dialect_of,
    format_path,
    is_cpsparql,
)
from pathrdf.patterns import BGP, FilterPattern, OptPattern, UnionPattern, format_query
from pathrdf.syntax import parse_path, parse_query
from pathrdf.terms import iri, var


def test_constrained_step_shape():
    e = parse_path("next::[?x: { ?x (next::sp)* transport }]")
    assert isinstance(e, AxisConstrained) and e.axis == NEXT
    c = e.constraint
    assert c.head == var("x") and not c.exported
    (t,) = c.body
    assert t.p == Star(AxisTest(NEXT, iri("sp"))) and t.o == iri("transport")
    assert is_cpsparql(e)


def test_open_constraint_is_exported():
    e = parse_path("next::]?p: TRUE[")
    assert e.constraint.exported and e.constraint.body == ()


def test_nested_step():
    e = parse_path("(next::[(next::sp)*/self::transport])+")
    inner = e.inner
    assert isinstance(inner, AxisNested)
    assert inner.nested.right == AxisTest(SELF, iri("transport"))
    assert dialect_of(e) == "nsparql"


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_path("next::a / / next::b")
    assert info.value.pos == 10


def test_dialect_violation():
    with pytest.raises(DialectError):
        parse_path("next::[next::a]", dialect="psparql")
    with pytest.raises(DialectError):
        parse_path("next::]?x: TRUE[", dialect="nsparql")


def test_query_grammar():
    q = parse_query(
        """SELECT ?x ?y WHERE {
             ?x p ?y .
             { ?x q ?y } UNION { ?y q ?x }
             OPTIONAL { ?y r ?z }
             FILTER(?x != ?y)
           }"""
    )
    assert q.select == ("x", "y")
    assert isinstance(q.where, FilterPattern)
    assert isinstance(q.where.pattern, OptPattern)


def test_select_unknown_variable_rejected():
    with pytest.raises(ValueError):
        parse_query("SELECT ?w WHERE { ?x p ?y }")


@pytest.mark.parametrize("text", [fixtures.GENE_QUERY, fixtures.TRAVEL_QUERY, fixtures.TRAVEL_QUERY_NESTED])
def test_query_round_trip(text):
    q = parse_query(text)
    assert parse_query(format_query(q)) == q


@pytest.mark.parametrize(
    "text",
    [
        "next::a/next^-1::b",
        "(edge|node^-1)*",
        "self::[?s: { ?n next::s ?s } FILTER(?s > 3)]",
        "next::]?p: TRUE[/(next::sp)+",
        "a/!b/?v",
        "next::[next::a/self::b]",
    ],
)
def test_path_round_trip(text):
    e = parse_path(text)
    assert parse_path(format_path(e)) == e


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_random_path_round_trip(seed):
    rng = random.Random(seed)
    g = fixtures.travel()
    for e in (oracle.random_path_expr(rng, g), oracle.random_nested_expr(rng, sorted(g.vocabulary))):
        assert parse_path(format_path(e)) == e
