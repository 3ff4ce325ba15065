import csv
import io
import json

import pytest

from pathrdf import fixtures
from pathrdf.cli import chain_graph, grid_graph, main
from pathrdf.graph import parse_ntriples
from pathrdf.oracle import naive_path_eval
from pathrdf.syntax import parse_path


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "genes": write("genes.nt", fixtures.GENES),
        "schema": write("schema.nt", fixtures.SCHEMA),
        "travel": write("travel.nt", fixtures.TRAVEL),
        "gq": write("gene.rq", fixtures.GENE_QUERY),
        "tq": write("travel.rq", fixtures.TRAVEL_QUERY),
        "vp": write("vp.rq", "SELECT ?s ?p ?o WHERE { ?s ?p ?o }"),
        "bad": write("bad.nt", "a p\n"),
        "empty": write("empty.nt", ""),
        "chain": write("chain.nt", "".join(f"p{i} sp p{i + 1} .\n" for i in range(5))),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_query_rdfs_three_rows(capsys, files):
    code, out, _ = run(capsys, "query", files["genes"], files["schema"], files["gq"], "--semantics", "rdfs-cpsparql")
    assert code == 0
    assert out.splitlines() == [
        "dm:bcd\tdm:cad\tdm:kni",
        "dm:bcd\tdm:tll\tdm:Kr",
        "dm:hb\tdm:kni\tdm:Kr",
    ]


def test_query_simple_one_row(capsys, files):
    code, out, _ = run(capsys, "query", files["genes"], files["schema"], files["gq"])
    assert code == 0 and out == "dm:bcd\tdm:tll\tdm:Kr\n"


def test_query_travel_json(capsys, files):
    code, out, _ = run(capsys, "query", files["travel"], files["tq"], "--semantics", "rdfs-nsparql", "--format", "json")
    assert code == 0
    assert json.loads(out) == [
        {"city1": "Grenoble", "city2": "Amman"},
        {"city1": "Paris", "city2": "Amman"},
    ]


def test_header(capsys, files):
    _, out, _ = run(capsys, "query", files["genes"], files["gq"], "--header")
    assert out.splitlines()[0] == "?x\t?y\t?z"


def test_output_is_byte_deterministic(capsys, files):
    args = ("query", files["genes"], files["schema"], files["gq"], "--semantics", "rdfs-psparql")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_parse_error_exit_1(capsys, files):
    code, _, err = run(capsys, "query", files["bad"], files["gq"])
    assert code == 1 and "line 1" in err


def test_missing_file_exit_1(capsys, files):
    code, _, _ = run(capsys, "closure", str(files["dir"] / "nope.nt"))
    assert code == 1


def test_closure_out_file(capsys, files):
    out_path = files["dir"] / "closed.nt"
    code, out, _ = run(capsys, "closure", files["genes"], files["schema"], "--out", str(out_path))
    assert code == 0
    g = parse_ntriples(out_path.read_text())
    assert parse_ntriples("dm:hb rn:regulates dm:kni .").triples <= g.triples
    assert int(out) == len(g) - 26


def test_closure_empty(capsys, files):
    code, out, err = run(capsys, "closure", files["empty"])
    assert code == 0 and out == "" and err.strip() == "0"


def test_closure_sp_chain(capsys, files):
    _, _, err = run(capsys, "closure", files["chain"])
    assert err.strip() == "10"


def test_rewrite_psparql(capsys, files):
    code, out, _ = run(capsys, "rewrite", files["gq"], "--mode", "psparql-tau")
    assert code == 0
    assert "sp*/dom/sc*" in out and "UNION" in out


def test_rewrite_nsparql(capsys, files):
    code, out, _ = run(capsys, "rewrite", files["gq"], "--mode", "nsparql-phi")
    assert code == 0
    assert "?x next::[next::sp*/self::rn:inhibits] ?y ." in out


def test_rewrite_variable_predicate_exit_2(capsys, files):
    code, _, err = run(capsys, "rewrite", files["vp"], "--mode", "nsparql-phi")
    assert code == 2 and "?p" in err


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "0,10,20", "--repeat", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["size"] for r in rows] == ["0", "10", "20"]
    assert rows[0]["pairs"] == "0"
    assert rows[1]["pairs"] == "1"


def test_bench_grid_matches_oracle(capsys):
    code, out, _ = run(capsys, "bench", "--shape", "grid", "--sizes", "30", "--expr", "next::p/next::p", "--repeat", "1")
    (row,) = csv.DictReader(io.StringIO(out))
    expected = naive_path_eval(grid_graph(30), parse_path("next::p/next::p"))
    assert int(row["pairs"]) == len(expected)


def test_chain_graph_shape():
    g = chain_graph(4)
    assert len(g) == 4 and len(g.vocabulary) == 6
