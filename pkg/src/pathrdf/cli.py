"""Command line: query, closure, rewrite and bench subcommands.

Exit status is 0 on success, 1 on unreadable or malformed input, 2 when a
construct is not allowed in the requested dialect.
"""

from __future__ import annotations

import argparse
import csv
import gc
import json
import sys
import time
from pathlib import Path

from .closure import ClosureConfig, ClosureLimitError, closure
from .engine import SEMANTICS, evaluate
from .graph import Graph, ParseError, parse_ntriples, serialize_ntriples
from .paths.ast import DialectError
from .paths.evaluate import UnboundVariable, eval_all_pairs, eval_pair
from .patterns import format_query
from .rewrite import REWRITE_MODES, rewrite_query
from .syntax import parse_path, parse_query
from .terms import Term, Triple, format_term, iri

EXIT_OK, EXIT_PARSE, EXIT_DIALECT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def load_graph(paths) -> Graph:
    triples = set()
    for p in paths:
        triples |= parse_ntriples(_read(p)).triples
    return Graph(triples)


def _cell(t: Term | None) -> str:
    return "" if t is None else format_term(t)


def format_answers(answers, select, fmt: str = "tsv") -> str:
    rows = sorted(tuple(_cell(m.get(v)) for v in select) for m in answers)
    if fmt == "json":
        data = [{v: (c if c != "" else None) for v, c in zip(select, row)} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    return "".join("\t".join(row) + "\n" for row in rows)


def cmd_query(args) -> int:
    g = load_graph(args.data)
    q = parse_query(_read(args.query))
    answers = evaluate(q, g, args.semantics)
    if args.header and args.format == "tsv":
        sys.stdout.write("\t".join("?" + v for v in q.select) + "\n")
    sys.stdout.write(format_answers(answers, q.select, args.format))
    return EXIT_OK


def cmd_closure(args) -> int:
    g = load_graph(args.data)
    cfg = ClosureConfig(reflexive=args.reflexive, extended=args.extended)
    out = closure(g, cfg)
    text = serialize_ntriples(out)
    count = len(out) - len(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(count)
    else:
        sys.stdout.write(text)
        print(count, file=sys.stderr)
    return EXIT_OK


def cmd_rewrite(args) -> int:
    q = parse_query(_read(args.query))
    sys.stdout.write(format_query(rewrite_query(q, args.mode, reflexive=args.reflexive)))
    return EXIT_OK


def chain_graph(n: int, pred: str = "p") -> Graph:
    p = iri(pred)
    return Graph(Triple(iri(f"c{i}"), p, iri(f"c{i + 1}")) for i in range(n))


def grid_graph(n: int, pred: str = "p") -> Graph:
    p = iri(pred)
    out = []
    for i in range(n):
        for j in range(n):
            here = iri(f"g{i}_{j}")
            if i + 1 < n:
                out.append(Triple(here, p, iri(f"g{i + 1}_{j}")))
            if j + 1 < n:
                out.append(Triple(here, p, iri(f"g{i}_{j + 1}")))
    return Graph(out)


def time_call(fn, repeat: int = 3) -> tuple[float, object]:
    """Best wall-clock time in milliseconds over ``repeat`` runs, with the
    cyclic collector paused during each run as timeit does."""
    best, result = None, None
    for _ in range(max(1, repeat)):
        enabled = gc.isenabled()
        gc.disable()
        try:
            t0 = time.perf_counter()
            result = fn()
            dt = (time.perf_counter() - t0) * 1000
        finally:
            if enabled:
                gc.enable()
        best = dt if best is None else min(best, dt)
    return best, result


def cmd_bench(args) -> int:
    e = parse_path(args.expr)
    method = args.method or ("pair" if args.shape == "chain" else "all")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["size", "pairs", "millis"])
    for n in args.sizes:
        if args.shape == "chain":
            g = chain_graph(n)
            a, b = iri("c0"), iri(f"c{n}")
        else:
            g = grid_graph(n)
            a, b = iri("g0_0"), iri(f"g{n - 1}_{n - 1}")
        if method == "pair" and n > 0:
            ms, found = time_call(lambda: eval_pair(g, e, a, b), args.repeat)
            pairs = int(found)
        else:
            ms, res = time_call(lambda: eval_all_pairs(g, e), args.repeat)
            pairs = len(res)
        writer.writerow([n, pairs, f"{ms:.3f}"])
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathrdf", description="Path queries over RDF graphs under RDFS.")
    sub = ap.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="evaluate a SELECT query")
    q.add_argument("data", nargs="+", help="graph files (merged)")
    q.add_argument("query", help="query file")
    q.add_argument("--semantics", choices=SEMANTICS, default="simple")
    q.add_argument("--format", choices=("tsv", "json"), default="tsv")
    q.add_argument("--header", action="store_true", help="print variable names first (tsv)")
    q.set_defaults(func=cmd_query)

    c = sub.add_parser("closure", help="saturate a graph")
    c.add_argument("data", nargs="+")
    c.add_argument("--reflexive", action="store_true")
    c.add_argument("--extended", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_closure)

    r = sub.add_parser("rewrite", help="rewrite a query into a path dialect")
    r.add_argument("query")
    r.add_argument("--mode", choices=REWRITE_MODES, required=True)
    r.add_argument("--reflexive", action="store_true")
    r.set_defaults(func=cmd_rewrite)

    b = sub.add_parser("bench", help="time path evaluation on synthetic graphs")
    b.add_argument("--shape", choices=("chain", "grid"), default="chain")
    b.add_argument("--sizes", type=_sizes, default=[1000, 2000, 4000, 8000])
    b.add_argument("--expr", default="(next::p)+")
    b.add_argument("--method", choices=("pair", "all"))
    b.add_argument("--repeat", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DialectError as exc:
        print(f"dialect error: {exc}", file=sys.stderr)
        return EXIT_DIALECT
    except (ParseError, UnboundVariable, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClosureLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
