"""Indexed triple storage, N-Triples-like I/O and basic graph pattern matching."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import Map
from .terms import (
    DEFAULT_PREFIXES,
    IRI,
    LITERAL,
    VARIABLE,
    Term,
    Triple,
    canonical_name,
    format_term,
)


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line number or column position."""

    def __init__(self, message: str, line: int | None = None, pos: int | None = None):
        where = f"line {line}: " if line is not None else (f"at {pos}: " if pos is not None else "")
        super().__init__(where + message)
        self.line = line
        self.pos = pos


@dataclass(frozen=True, order=True)
class Axis:
    base: str
    inverted: bool = False

    def __post_init__(self):
        if self.base not in ("self", "next", "edge", "node"):
            raise ValueError(f"unknown axis {self.base!r}")
        if self.base == "self" and self.inverted:
            # self^-1 relates a node to itself, same as self
            object.__setattr__(self, "inverted", False)

    def inverse(self) -> "Axis":
        return Axis(self.base, not self.inverted)

    def __str__(self) -> str:
        return self.base + ("^-1" if self.inverted else "")


SELF = Axis("self")
NEXT = Axis("next")
NEXT_INV = Axis("next", True)
EDGE = Axis("edge")
EDGE_INV = Axis("edge", True)
NODE = Axis("node")
NODE_INV = Axis("node", True)
AXES = (SELF, NEXT, NEXT_INV, EDGE, EDGE_INV, NODE, NODE_INV)


class Graph:
    """An immutable set of ground triples with SPO/POS/OSP indexes and the
    per-term adjacency lists used for path navigation.

    ``adjacency[u][axis][label]`` lists the terms reachable from ``u`` by one
    ``axis`` step whose label is ``label``: the predicate for next, the object
    for edge, the subject for node, and ``u`` itself for self.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        ts = set()
        for t in triples:
            _check_ground(t)
            ts.add(t)
        self.triples: frozenset[Triple] = frozenset(ts)
        self._spo: dict = defaultdict(lambda: defaultdict(set))
        self._pos: dict = defaultdict(lambda: defaultdict(set))
        self._osp: dict = defaultdict(lambda: defaultdict(set))
        adj: dict = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
        for s, p, o in sorted(self.triples):
            self._spo[s][p].add(o)
            self._pos[p][o].add(s)
            self._osp[o][s].add(p)
            adj[s][NEXT][p].append(o)
            adj[o][NEXT_INV][p].append(s)
            adj[s][EDGE][o].append(p)
            adj[p][EDGE_INV][o].append(s)
            adj[p][NODE][s].append(o)
            adj[o][NODE_INV][s].append(p)
        self.vocabulary: frozenset[Term] = frozenset(
            x for t in self.triples for x in t
        )
        for u in self.vocabulary:
            adj[u][SELF][u].append(u)
        self.adjacency = {u: {ax: dict(by_label) for ax, by_label in m.items()} for u, m in adj.items()}
        self.predicates: frozenset[Term] = frozenset(t.p for t in self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self.triples))

    def __contains__(self, t) -> bool:
        return t in self.triples

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __repr__(self) -> str:
        return f"Graph({len(self.triples)} triples)"

    def union(self, other: "Graph | Iterable[Triple]") -> "Graph":
        extra = other.triples if isinstance(other, Graph) else other
        return Graph(self.triples | set(extra))

    def match(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> Iterator[Triple]:
        """Triples agreeing with every non-None position."""
        if s is not None:
            by_p = self._spo.get(s, {})
            preds = [p] if p is not None else list(by_p)
            for pp in preds:
                for oo in by_p.get(pp, ()):
                    if o is None or oo == o:
                        yield Triple(s, pp, oo)
        elif p is not None:
            by_o = self._pos.get(p, {})
            objs = [o] if o is not None else list(by_o)
            for oo in objs:
                for ss in by_o.get(oo, ()):
                    yield Triple(ss, p, oo)
        elif o is not None:
            for ss, preds in self._osp.get(o, {}).items():
                for pp in preds:
                    yield Triple(ss, pp, o)
        else:
            yield from self.triples

    def count(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> int:
        if s is None and p is None and o is None:
            return len(self.triples)
        if s is not None and p is not None and o is not None:
            return int(Triple(s, p, o) in self.triples)
        if s is not None and p is not None:
            return len(self._spo.get(s, {}).get(p, ()))
        if p is not None and o is not None:
            return len(self._pos.get(p, {}).get(o, ()))
        if s is not None and o is not None:
            return len(self._osp.get(o, {}).get(s, ()))
        return sum(1 for _ in self.match(s, p, o))


def _check_ground(t: Triple) -> None:
    if any(x.kind == VARIABLE for x in t):
        raise ValueError(f"graphs are ground, got variable in {t}")
    if t.s.kind == LITERAL:
        raise ValueError(f"literal in subject position: {t}")
    if t.p.kind != IRI:
        raise ValueError(f"predicate must be an IRI: {t}")


def adjacency(g: Graph, u: Term, step: Axis, label: Term | None = None) -> list[Term]:
    """Terms reachable from ``u`` by one ``step``; ``label`` restricts the step."""
    by_label = g.adjacency.get(u, {}).get(step)
    if not by_label:
        return []
    if label is not None:
        return list(by_label.get(label, ()))
    out: list[Term] = []
    seen = set()
    for targets in by_label.values():
        for v in targets:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


# -- N-Triples-like text --------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iri><[^>\s]*>)
  | (?P<lit>"(?:[^"\\]|\\.)*")(?:\^\^(?:<[^>]*>|[A-Za-z_][\w\-]*:[\w\-]*)|@[A-Za-z\-]+)?
  | (?P<num>[+-]?(?:\d+\.\d+|\d+|\.\d+))
  | (?P<bnode>_:[\w\-]+)
  | (?P<name>[A-Za-z_][\w\-]*(?::[\w\-]*)?)
  | (?P<dot>\.)
  | (?P<comment>\#.*)
    """,
    re.VERBOSE,
)
_PREFIX_LINE = re.compile(r"\s*@prefix\s+([A-Za-z_][\w\-]*)?:\s*<([^>]*)>\s*\.?\s*$")


def unescape(body: str) -> str:
    return re.sub(r"\\(.)", lambda m: {"n": "\n", "t": "\t"}.get(m.group(1), m.group(1)), body)


def _tokens(line: str, lineno: int) -> list[tuple[str, str]]:
    pos = 0
    out = []
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise ParseError(f"unexpected character {line[pos]!r}", line=lineno)
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        if kind == "lit":
            out.append(("lit", m.group("lit")))
        else:
            out.append((kind, m.group(kind)))
    return out


def _to_term(kind: str, text: str, prefixes: dict[str, str]) -> Term:
    if kind == "lit":
        return Term(LITERAL, unescape(text[1:-1]))
    if kind == "num":
        return Term(LITERAL, text)
    if kind == "bnode":
        # blank nodes are plain constants
        return Term(IRI, text)
    if kind == "iri":
        return Term(IRI, canonical_name(text, prefixes))
    return Term(IRI, canonical_name(text, prefixes))


def parse_ntriples(text: str, prefixes: dict[str, str] | None = None) -> Graph:
    """Parse one ``subject predicate object .`` statement per line.

    Bare names, ``<iri>`` and ``prefix:local`` are IRIs; quoted strings and
    bare numbers are literals; ``#`` starts a comment and ``@prefix`` lines
    extend the default prefix table.
    """
    table = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)
    triples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _PREFIX_LINE.match(line)
        if m:
            table[m.group(1) or ""] = m.group(2)
            continue
        toks = _tokens(line, lineno)
        if not toks:
            continue
        if toks[-1][0] == "dot":
            toks = toks[:-1]
        else:
            raise ParseError("statement must end with '.'", line=lineno)
        if len(toks) != 3 or any(k == "dot" for k, _ in toks):
            raise ParseError(f"expected 3 terms, got {len(toks)}", line=lineno)
        (sk, st), (pk, pt), (ok, ot) = toks
        if sk in ("lit", "num") or pk in ("lit", "num"):
            raise ParseError("literal in subject or predicate position", line=lineno)
        if pk == "bnode":
            raise ParseError("blank node in predicate position", line=lineno)
        triples.append(Triple(_to_term(sk, st, table), _to_term(pk, pt, table), _to_term(ok, ot, table)))
    return Graph(triples)


def serialize_ntriples(g: Graph | Iterable[Triple]) -> str:
    triples = sorted(g.triples if isinstance(g, Graph) else g)
    return "".join(f"{format_term(t.s)} {format_term(t.p)} {format_term(t.o)} .\n" for t in triples)


# -- homomorphisms --------------------------------------------------------------

def find_homomorphisms(g: Graph, bgp: Iterable[Triple], initial: dict | None = None) -> frozenset[Map]:
    """All maps from the variables of ``bgp`` into ``g`` that send every
    triple of ``bgp`` onto a triple of ``g``.

    Backtracking search; at each level the remaining triple with the fewest
    candidates is expanded next, ties broken by input order. Returns maps as
    dicts keyed by variable name, duplicate-free, in discovery order.
    """
    patterns = list(dict.fromkeys(bgp))
    results: list[dict[str, Term]] = []
    seen = set()
    start = dict(initial or {})

    def resolve(t: Term, binding: dict) -> Term | None:
        if t.kind == VARIABLE:
            return binding.get(t.lexical)
        return t

    def search(remaining: list[Triple], binding: dict) -> None:
        if not remaining:
            key = frozenset(binding.items())
            if key not in seen:
                seen.add(key)
                results.append(dict(binding))
            return
        best_i, best_n = 0, None
        for i, t in enumerate(remaining):
            n = g.count(resolve(t.s, binding), resolve(t.p, binding), resolve(t.o, binding))
            if best_n is None or n < best_n:
                best_i, best_n = i, n
                if n == 0:
                    return
        t = remaining[best_i]
        rest = remaining[:best_i] + remaining[best_i + 1:]
        for match in list(g.match(resolve(t.s, binding), resolve(t.p, binding), resolve(t.o, binding))):
            extended = _unify(t, match, binding)
            if extended is not None:
                search(rest, extended)

    search(patterns, start)
    return frozenset(Map(r) for r in results)


def _unify(pattern: Triple, ground: Triple, binding: dict) -> dict | None:
    out = binding
    for pt, gt in zip(pattern, ground):
        if pt.kind == VARIABLE:
            cur = out.get(pt.lexical)
            if cur is None:
                if out is binding:
                    out = dict(binding)
                out[pt.lexical] = gt
            elif cur != gt:
                return None
        elif pt != gt:
            return None
    return out
