import pytest

from pathrdf import fixtures
from pathrdf.paths.ast import (
    AxisConstrained,
    AxisNested,
    DialectError,
    constraints_of,
    dialect_of,
    format_path,
    is_cpsparql,
)
from pathrdf.patterns import BGP, TriplePattern, UnionPattern, format_query, pattern_variables, skeleton
from pathrdf.rewrite import (
    CPSPARQL_TAU,
    NSPARQL_PHI,
    PSPARQL_TAU,
    Fresh,
    phi,
    rewrite_query,
    tau_cp,
    tau_ps,
    trans,
)
from pathrdf.syntax import parse_path, parse_query
from pathrdf.terms import SC, SP, TYPE, iri, var

X, Y = var("x"), var("y")


def test_tau_sc_is_plus():
    (t,) = tau_ps(TriplePattern(X, SC, Y)).triples
    assert format_path(t.p) == "sc+"


def test_tau_reflexive_variant():
    (t,) = tau_ps(TriplePattern(X, SP, Y), reflexive=True).triples
    assert t.p == parse_path("(sp)+|eps")


def test_tau_type_has_three_branches():
    out = tau_ps(TriplePattern(X, TYPE, iri("C")))
    assert isinstance(out, UnionPattern)
    fresh = {v for v in pattern_variables(out) if v.startswith("_r")}
    assert len(fresh) == 4


def test_tau_ordinary_predicate():
    out = tau_ps(TriplePattern(X, iri("p"), Y))
    first, second = out.triples
    assert first.p.kind == "var" and second.s == first.p
    assert format_path(second.p) == "sp*"


def test_phi_ordinary_predicate_is_nested():
    t = phi(TriplePattern(X, iri("p"), Y))
    assert isinstance(t.p, AxisNested)
    assert format_path(t.p) == "next::[next::sp*/self::p]"


def test_phi_rejects_variable_predicate():
    with pytest.raises(DialectError, match=r"\?p"):
        phi(TriplePattern(X, var("p"), Y))


def test_tau_cp_variable_predicate_is_open():
    t = tau_cp(TriplePattern(X, var("p"), Y))
    assert isinstance(t.p, AxisConstrained) and t.p.constraint.exported


def test_tau_cp_ordinary_predicate():
    t = tau_cp(TriplePattern(X, iri("p"), Y))
    assert is_cpsparql(t.p)
    (c,) = constraints_of(t.p)
    assert not c.exported


def test_fresh_avoids_taken():
    f = Fresh({"_r1", "_r3"})
    assert [f().lexical for _ in range(3)] == ["_r2", "_r4", "_r5"]


def test_fresh_names_do_not_clash_with_query():
    q = parse_query("SELECT ?_r1 WHERE { ?_r1 p ?y }")
    first, second = rewrite_query(q, PSPARQL_TAU).where.triples
    assert first.s == var("_r1")
    assert first.p.kind == "var" and first.p != var("_r1")
    assert second.s == first.p


@pytest.mark.parametrize("mode", [NSPARQL_PHI, CPSPARQL_TAU])
def test_skeleton_preserved(mode):
    q = parse_query("""SELECT ?x ?y WHERE { ?x p ?y . OPTIONAL { ?y q ?z } FILTER(?x != ?y) }""")
    assert skeleton(rewrite_query(q, mode).where) == skeleton(q.where)


@pytest.mark.parametrize("mode", [PSPARQL_TAU, NSPARQL_PHI, CPSPARQL_TAU])
def test_rewritten_query_round_trips(mode):
    out = rewrite_query(parse_query(fixtures.GENE_QUERY), mode)
    assert parse_query(format_query(out)) == out


def test_nsparql_output_dialect():
    out = rewrite_query(parse_query(fixtures.GENE_QUERY), NSPARQL_PHI)
    assert all(dialect_of(t.p) in ("nsparql", None) for t in out.where.triples if not isinstance(t.p, type(X)))


def test_rewrite_inside_user_paths(travel):
    q = parse_query(fixtures.TRAVEL_QUERY)
    (first, *_), = [rewrite_query(q, NSPARQL_PHI).where.triples]
    assert first.p == parse_path("(next::[(next::sp)*/self::transport])+")


# -- trans --

def test_trans_example():
    e = parse_path("(next::[(next::sp)*/self::transport])+")
    assert trans(e) == parse_path("(next::[?x: { ?x (next::sp)* transport }])+")


def test_trans_second_case():
    assert trans(parse_path("next::[next::b]")) == parse_path("next::[?x: { ?x next::b ?y }]")


def test_trans_output_is_cpsparql():
    e = parse_path("next::[next::[next::a]/self::b]/edge::[node::c]")
    assert is_cpsparql(trans(e))


def test_unknown_mode():
    with pytest.raises(ValueError):
        rewrite_query(parse_query(fixtures.GENE_QUERY), "owl-tau")


def test_empty_bgp_unchanged():
    assert BGP() == BGP(())
