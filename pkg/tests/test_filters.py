from hypothesis import given
from hypothesis import strategies as st

from pathrdf.filters import And, Bound, Compare, Not, Or, Regex, Truth, eval_filter, filter_variables
from pathrdf.syntax import parse_filter
from pathrdf.terms import iri, lit, var

S = var("s")


def test_numeric_comparison():
    assert eval_filter({"s": lit(4)}, Compare(">", S, lit(3)))
    assert not eval_filter({"s": lit(2)}, Compare(">", S, lit(3)))


def test_string_literal_compares_numerically():
    # "4" as written in the data still orders against 3
    assert eval_filter({"s": lit("4")}, parse_filter("?s > 3"))


def test_type_error_is_false_not_raise():
    k = parse_filter("?s > 3")
    assert not eval_filter({"s": iri("Paris")}, k)
    assert not eval_filter({"s": lit("abc")}, k)
    assert not eval_filter({}, k)


def test_bound_and_connectives():
    k = Or(Bound(S), Not(Truth(False)))
    assert eval_filter({}, k)
    assert not eval_filter({}, And(Bound(S), Truth()))


def test_regex():
    assert eval_filter({"s": iri("dm:Kr")}, Regex(S, "kr", "i"))
    assert not eval_filter({"s": iri("dm:hb")}, Regex(S, "^kr"))


def test_parse_precedence():
    k = parse_filter("?a = 1 || ?b = 2 && !bound(?c)")
    assert isinstance(k, Or) and isinstance(k.right, And)
    assert filter_variables(k) == {"a", "b", "c"}


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_comparison_matches_python(a, b):
    sigma = {"x": lit(a)}
    for op, fn in [("<", int.__lt__), ("<=", int.__le__), ("=", int.__eq__), ("!=", int.__ne__), (">", int.__gt__)]:
        assert eval_filter(sigma, Compare(op, var("x"), lit(b))) == fn(a, b)
