import pytest

from pathrdf import fixtures
from pathrdf.syntax import parse_query


@pytest.fixture
def genes():
    return fixtures.genes()


@pytest.fixture
def genes_schema():
    return fixtures.genes_with_schema()


@pytest.fixture
def travel():
    return fixtures.travel()


@pytest.fixture
def two_triples():
    return fixtures.two_triples()


@pytest.fixture
def gene_query():
    return parse_query(fixtures.GENE_QUERY)


@pytest.fixture
def travel_query():
    return parse_query(fixtures.TRAVEL_QUERY)


def names(answers, *vars):
    """Answers as a set of tuples of lexical forms, for readable asserts."""
    return {tuple(None if m.get(v) is None else m[v].lexical for v in vars) for m in answers}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
