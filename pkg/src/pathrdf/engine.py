"""Compositional evaluation of graph patterns and SELECT queries."""

from __future__ import annotations

from itertools import product
from typing import Mapping

from .algebra import EMPTY, Map, compatible, difference, join, merge, project
from .filters import eval_filter
from .graph import Graph
from .paths.ast import (
    DIALECTS,
    AxisConstrained,
    DialectError,
    PathExpr,
    VarAtom,
    check_dialect,
    exported_variables,
    walk,
)
from .paths.evaluate import Evaluator
from .patterns import (
    BGP,
    AndPattern,
    FilterPattern,
    GraphPattern,
    OptPattern,
    Query,
    TriplePattern,
    UnionPattern,
)
from .terms import VARIABLE, Term

SPARQL = "sparql"
SEMANTICS = ("simple", "rdfs-closure", "rdfs-psparql", "rdfs-nsparql", "rdfs-cpsparql")


class _Context:
    """Per-query scratch: one evaluator per binding of exported variables."""

    def __init__(self, g: Graph, mode: str | None):
        self.g = g
        self.mode = mode
        self._evaluators: dict = {}
        self._triples: dict = {}

    def evaluator(self, env: Mapping[str, Term] | None = None) -> Evaluator:
        key = frozenset((env or {}).items())
        ev = self._evaluators.get(key)
        if ev is None:
            ev = Evaluator(self.g, env)
            self._evaluators[key] = ev
        return ev


def _check_mode(t: TriplePattern, mode: str | None) -> None:
    if mode is None or not t.is_path:
        return
    if mode == SPARQL:
        raise DialectError(f"path predicate in plain SPARQL mode: {t}")
    if mode not in DIALECTS:
        raise ValueError(f"unknown mode {mode!r}")
    check_dialect(t.p, mode)


def _bind(m: dict, t: Term, v: Term) -> bool:
    if t.kind != VARIABLE:
        return t == v
    cur = m.get(t.lexical)
    if cur is None:
        m[t.lexical] = v
        return True
    return cur == v


def _exported_domains(g: Graph, e: PathExpr) -> dict[str, frozenset]:
    """Candidate values for each exported variable, narrowed by the axis of
    every step that mentions it."""
    by_base = {
        "next": g.predicates,
        "edge": frozenset(t.o for t in g.triples),
        "node": frozenset(t.s for t in g.triples),
        "self": g.vocabulary,
    }
    doms: dict[str, frozenset] = {}
    for x in walk(e):
        if isinstance(x, VarAtom):
            name, cand = x.variable.lexical, g.predicates
        elif isinstance(x, AxisConstrained) and x.constraint.exported:
            name, cand = x.constraint.head.lexical, by_base[x.axis.base]
        else:
            continue
        doms[name] = doms[name] & cand if name in doms else cand
    return doms


def _path_pairs(ev: Evaluator, s: Term, e: PathExpr, o: Term):
    if s.kind != VARIABLE:
        return [(s, b) for b in ev.reach(s, e)]
    if o.kind != VARIABLE:
        return [(a, o) for a in ev.starts(e, [o])]
    return ev.all_pairs(e)


def eval_triple(g: Graph, t: TriplePattern, mode: str | None = None, _ctx: _Context | None = None) -> frozenset[Map]:
    """Answers to one triple pattern: homomorphism matching for a term
    predicate, path evaluation (plus exported witnesses) for a path."""
    _check_mode(t, mode)
    ctx = _ctx or _Context(g, mode)
    key = t
    hit = ctx._triples.get(key)
    if hit is not None:
        return hit
    out = set()
    if not t.is_path:
        value = lambda x: None if x.kind == VARIABLE else x  # noqa: E731
        for tr in g.match(value(t.s), value(t.p), value(t.o)):
            m: dict = {}
            if _bind(m, t.s, tr.s) and _bind(m, t.p, tr.p) and _bind(m, t.o, tr.o):
                out.add(Map(m))
    else:
        doms = _exported_domains(g, t.p)
        names = sorted(doms)
        for values in product(*(sorted(doms[n]) for n in names)):
            env = dict(zip(names, values))
            ev = ctx.evaluator(env)
            for a, b in _path_pairs(ev, t.s, t.p, t.o):
                m = dict(env)
                if _bind(m, t.s, a) and _bind(m, t.o, b):
                    out.add(Map(m))
    result = frozenset(out)
    ctx._triples[key] = result
    return result


def _substitute(t: TriplePattern, m: Mapping) -> TriplePattern:
    def sub(x: Term) -> Term:
        if x.kind == VARIABLE and m.get(x.lexical) is not None:
            return m[x.lexical]
        return x

    p = sub(t.p) if isinstance(t.p, Term) else t.p
    return TriplePattern(sub(t.s), p, sub(t.o))


def _plan(g: Graph, triples) -> list[TriplePattern]:
    """Greedy order: fewest unbound positions, then fewest matching triples
    counted on constants only, then input order."""
    remaining = list(dict.fromkeys(triples))
    bound: set[str] = set()
    voc = max(len(g.vocabulary), 1)
    order = []
    while remaining:
        def score(item):
            i, t = item
            positions = [t.s, t.o] + ([t.p] if isinstance(t.p, Term) else [])
            free = sum(1 for x in positions if x.kind == VARIABLE and x.lexical not in bound)
            if isinstance(t.p, Term):
                c = lambda x: None if x.kind == VARIABLE else x  # noqa: E731
                est = g.count(c(t.s), c(t.p), c(t.o))
            else:
                est = voc ** free
            return (free, est, i)

        i, t = min(enumerate(remaining), key=score)
        order.append(t)
        bound |= set(t.variables())
        remaining.pop(i)
    return order


def _eval_bgp(ctx: _Context, bgp: BGP) -> frozenset[Map]:
    maps = {EMPTY}
    for t in _plan(ctx.g, bgp.triples):
        nxt = set()
        for m in maps:
            for m2 in eval_triple(ctx.g, _substitute(t, m), ctx.mode, ctx):
                if compatible(m, m2):
                    nxt.add(merge(m, m2))
        maps = nxt
        if not maps:
            break
    return frozenset(maps)


def _eval(ctx: _Context, p: GraphPattern) -> frozenset[Map]:
    if isinstance(p, BGP):
        return _eval_bgp(ctx, p)
    if isinstance(p, AndPattern):
        return join(_eval(ctx, p.left), _eval(ctx, p.right))
    if isinstance(p, UnionPattern):
        return _eval(ctx, p.left) | _eval(ctx, p.right)
    if isinstance(p, OptPattern):
        left, right = _eval(ctx, p.left), _eval(ctx, p.right)
        return join(left, right) | difference(left, right)
    if isinstance(p, FilterPattern):
        return frozenset(m for m in _eval(ctx, p.pattern) if eval_filter(m, p.condition))
    raise TypeError(f"not a graph pattern: {p!r}")


def eval_pattern(g: Graph, p: GraphPattern, mode: str | None = None) -> frozenset[Map]:
    return _eval(_Context(g, mode), p)


def answer_query(
    q: Query, g: Graph, mode: str | None = None, graphs: Mapping[str, Graph] | None = None
) -> frozenset[Map]:
    """Answers restricted and completed to the selected variables."""
    if q.source is not None and graphs is not None:
        if q.source not in graphs:
            raise KeyError(f"unknown graph reference <{q.source}>")
        g = graphs[q.source]
    return project(eval_pattern(g, q.where, mode), q.select)


def evaluate(q: Query, g: Graph, semantics: str = "simple") -> frozenset[Map]:
    """Answer ``q`` under one of the entailment strategies in SEMANTICS."""
    from .closure import answers_via_closure
    from .rewrite import rewrite_query

    if semantics == "simple":
        return answer_query(q, g)
    if semantics == "rdfs-closure":
        return answers_via_closure(q, g)
    dialect = {
        "rdfs-psparql": ("psparql-tau", "psparql"),
        "rdfs-nsparql": ("nsparql-phi", "nsparql"),
        "rdfs-cpsparql": ("cpsparql-tau", "cpsparql"),
    }.get(semantics)
    if dialect is None:
        raise ValueError(f"unknown semantics {semantics!r}")
    rewrite_mode, path_dialect = dialect
    return answer_query(rewrite_query(q, rewrite_mode), g, mode=path_dialect)
