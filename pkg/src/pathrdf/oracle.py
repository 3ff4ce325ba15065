"""Brute-force reference implementations and seeded random generators.

Nothing here shares code with the engines it checks: rules are matched by
scanning every triple, paths use the relational semantics, and patterns are
answered by trying every assignment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .closure import ClosureConfig, ClosureLimitError, RuleId, axiomatic_triples, container_bound, storable
from .filters import Compare, Regex, eval_filter
from .graph import AXES, Graph
from .patterns import BGP, AndPattern, FilterPattern, GraphPattern, OptPattern, Query, TriplePattern, UnionPattern
from .paths.ast import (
    Alt,
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    ConstraintTriple,
    Epsilon,
    NegAtom,
    PathExpr,
    Plus,
    Seq,
    Star,
    exported_variables,
)
from .paths.semantics import denot_pairs
from .terms import (
    CLASS, CONT_MP, DATATYPE, DOM, LITERAL_CLASS, MEMBER, PROP, RANGE, RES, SC, SP, TYPE,
    VARIABLE, Term, Triple, iri, lit, var,
)

_p, _q, _r, _x, _y, _a, _b = (var(n) for n in "pqrxyab")

# premises => conclusion, written with variables
RULE_TABLE = {
    RuleId.SP_TRANS: ([(_p, SP, _q), (_q, SP, _r)], (_p, SP, _r)),
    RuleId.SC_TRANS: ([(_a, SC, _b), (_b, SC, _r)], (_a, SC, _r)),
    RuleId.SP_INHERIT: ([(_p, SP, _q), (_x, _p, _y)], (_x, _q, _y)),
    RuleId.SC_TYPE: ([(_a, SC, _b), (_x, TYPE, _a)], (_x, TYPE, _b)),
    RuleId.DOM_TYPE: ([(_p, DOM, _a), (_x, _p, _y)], (_x, TYPE, _a)),
    RuleId.RANGE_TYPE: ([(_p, RANGE, _a), (_x, _p, _y)], (_y, TYPE, _a)),
    RuleId.RDF2: ([(_x, _p, _y)], (_p, TYPE, PROP)),
    RuleId.RDFS8A: ([(_x, TYPE, PROP)], (_x, SP, _x)),
    RuleId.RDFS10: ([(_x, TYPE, CLASS)], (_x, SC, RES)),
    RuleId.RDFS12A: ([(_x, TYPE, CLASS)], (_x, SC, _x)),
    RuleId.RDFS13: ([(_x, TYPE, CONT_MP)], (_x, SP, MEMBER)),
    RuleId.RDFS14: ([(_x, TYPE, DATATYPE)], (_x, SC, LITERAL_CLASS)),
}
RULE_TABLE[RuleId.RDFS6] = RULE_TABLE[RuleId.DOM_TYPE]
RULE_TABLE[RuleId.RDFS7] = RULE_TABLE[RuleId.RANGE_TYPE]
RULE_TABLE[RuleId.RDFS8B] = RULE_TABLE[RuleId.SP_TRANS]
RULE_TABLE[RuleId.RDFS9] = RULE_TABLE[RuleId.SP_INHERIT]
RULE_TABLE[RuleId.RDFS11] = RULE_TABLE[RuleId.SC_TYPE]
RULE_TABLE[RuleId.RDFS12B] = RULE_TABLE[RuleId.SC_TRANS]


def _unify(pattern, triple, b: dict) -> dict | None:
    b = dict(b)
    for pt, gt in zip(pattern, triple):
        if pt.kind == VARIABLE:
            if b.setdefault(pt.lexical, gt) != gt:
                return None
        elif pt != gt:
            return None
    return b


def rule_instances(triples, rule: RuleId):
    """Every (premises, conclusion) instantiation of ``rule`` over ``triples``."""
    premises, conclusion = RULE_TABLE[rule]
    triples = list(triples)

    def go(i, b, used):
        if i == len(premises):
            yield tuple(used), Triple(*(b[t.lexical] if t.kind == VARIABLE else t for t in conclusion))
            return
        for t in triples:
            b2 = _unify(premises[i], t, b)
            if b2 is not None:
                yield from go(i + 1, b2, used + [t])

    yield from go(0, {}, [])


def apply_rules_once(triples, rules) -> set[Triple]:
    out = set()
    for rule in rules:
        for _, c in rule_instances(triples, rule):
            if storable(c):
                out.add(c)
    return out


def naive_closure(g: Graph, cfg: ClosureConfig | None = None) -> Graph:
    """Iterate all rules over the whole graph until nothing changes."""
    cfg = cfg or ClosureConfig()
    current = set(g.triples)
    if cfg.axiomatic:
        terms = set(g.vocabulary)
        for t in cfg.context or ():
            terms.update(x for x in (t.s, t.p, t.o) if isinstance(x, Term))
        current |= axiomatic_triples(container_bound(terms))
    while True:
        nxt = current | apply_rules_once(current, cfg.rules())
        if len(nxt) - len(g.triples) > cfg.limit():
            raise ClosureLimitError(f"closure derived more than {cfg.limit()} triples")
        if nxt == current:
            return Graph(current)
        current = nxt


def naive_path_eval(g: Graph, e: PathExpr, env=None) -> frozenset:
    return denot_pairs(g, e, env)


# -- patterns -------------------------------------------------------------------

MAX_VARS = 6
MAX_VOC = 40


def _variables(p: GraphPattern) -> list[str]:
    if isinstance(p, BGP):
        names = {}
        for t in p.triples:
            for v in t.variables():
                names[v] = None
        return list(names)
    if isinstance(p, FilterPattern):
        return _variables(p.pattern)
    return list(dict.fromkeys(_variables(p.left) + _variables(p.right)))


def naive_pattern_eval(g: Graph, p: GraphPattern) -> frozenset:
    """Answers by definition: every total assignment of a BGP's variables is
    tested against every triple, and the operators are applied literally."""
    from .algebra import Map

    if isinstance(p, BGP):
        names = _variables(p)
        if len(names) > MAX_VARS or len(g.vocabulary) > MAX_VOC:
            raise ValueError("pattern too large for exhaustive evaluation")
        voc = sorted(g.vocabulary)
        paths: dict = {}

        def holds(t: TriplePattern, b: dict) -> bool:
            val = lambda x: b[x.lexical] if x.kind == VARIABLE else x  # noqa: E731
            if isinstance(t.p, Term):
                return Triple(val(t.s), val(t.p), val(t.o)) in g.triples
            env = {v.lexical: b[v.lexical] for v in exported_variables(t.p)}
            key = (t.p, frozenset(env.items()))
            if key not in paths:
                paths[key] = naive_path_eval(g, t.p, env)
            return (val(t.s), val(t.o)) in paths[key]

        # check each triple as soon as its variables are assigned
        ready = [[] for _ in range(len(names) + 1)]
        for t in p.triples:
            idx = max((names.index(v) + 1 for v in t.variables()), default=0)
            ready[idx].append(t)
        out = set()

        def go(i, b):
            if not all(holds(t, b) for t in ready[i]):
                return
            if i == len(names):
                out.add(Map(b))
                return
            for v in voc:
                b[names[i]] = v
                go(i + 1, b)
                del b[names[i]]

        go(0, {})
        return frozenset(out)
    if isinstance(p, FilterPattern):
        return frozenset(m for m in naive_pattern_eval(g, p.pattern) if eval_filter(m, p.condition))
    left, right = naive_pattern_eval(g, p.left), naive_pattern_eval(g, p.right)
    if isinstance(p, UnionPattern):
        return left | right

    def ok(m1, m2):
        return all(m2[k] == v for k, v in m1.items() if k in m2)

    joined = {Map({**m1, **m2}) for m1 in left for m2 in right if ok(m1, m2)}
    if isinstance(p, AndPattern):
        return frozenset(joined)
    if isinstance(p, OptPattern):
        return frozenset(joined | {m1 for m1 in left if not any(ok(m1, m2) for m2 in right)})
    raise TypeError(p)


def naive_answers(q: Query, g: Graph) -> frozenset:
    from .algebra import Map

    return frozenset(
        Map({v: m.get(v) for v in q.select}) for m in naive_pattern_eval(g, q.where)
    )


# -- random generators ----------------------------------------------------------

@dataclass
class GraphShape:
    nodes: int = 12
    triples: int = 30
    schema_fraction: float = 0.3
    rhodf_ratio: float = 0.2
    properties: int = 4
    classes: int = 4
    literals: int = 0


def random_genuine_graph(rng: random.Random, shape: GraphShape | None = None) -> Graph:
    """Random graph in which rho-df terms occur only as predicates.

    A ``schema_fraction`` share of triples are sp/sc/dom/range statements;
    among the rest, ``rhodf_ratio`` are type statements and the others are
    data edges between nodes (or to literals).
    """
    shape = shape or GraphShape()
    nodes = [iri(f"ex:n{i}") for i in range(shape.nodes)]
    props = [iri(f"ex:p{i}") for i in range(shape.properties)]
    classes = [iri(f"ex:C{i}") for i in range(shape.classes)]
    lits = [lit(i) for i in range(shape.literals)]
    out = set()
    attempts = 0
    while len(out) < shape.triples and attempts < shape.triples * 20:
        attempts += 1
        r = rng.random()
        if r < shape.schema_fraction:
            kind = rng.choice(("sp", "sc", "dom", "range"))
            if kind == "sp":
                t = Triple(rng.choice(props), SP, rng.choice(props))
            elif kind == "sc":
                t = Triple(rng.choice(classes), SC, rng.choice(classes))
            else:
                t = Triple(rng.choice(props), DOM if kind == "dom" else RANGE, rng.choice(classes))
        elif rng.random() < shape.rhodf_ratio:
            t = Triple(rng.choice(nodes), TYPE, rng.choice(classes))
        else:
            obj = rng.choice(lits) if lits and rng.random() < 0.2 else rng.choice(nodes)
            t = Triple(rng.choice(nodes), rng.choice(props), obj)
        out.add(t)
    return Graph(out)


def random_bgp_query(rng: random.Random, g: Graph, closed: Graph | None = None, max_triples: int = 4) -> Query:
    """Constant-predicate BGP built by variabilizing triples drawn from
    ``closed`` (usually a closure of ``g``) so that answers are likely."""
    source = sorted((closed or g).triples)
    pool = [var(n) for n in ("a", "b", "c", "d")]
    preds = sorted({t.p for t in source} | {SC, SP, TYPE, DOM, RANGE})
    n = rng.randint(1, max_triples)
    triples = []
    for _ in range(n):
        if source and rng.random() < 0.8:
            s, p, o = rng.choice(source)
        else:
            s, p, o = rng.choice(sorted(g.vocabulary) or [iri("ex:n0")]), rng.choice(preds), var("d")
        s = rng.choice(pool) if rng.random() < 0.7 else s
        o = rng.choice(pool) if rng.random() < 0.7 else o
        if s.kind != VARIABLE and s.kind != "iri":
            s = rng.choice(pool)
        triples.append(TriplePattern(s, p, o))
    where = BGP(tuple(dict.fromkeys(triples)))
    names = []
    for t in where.triples:
        names.extend(t.variables())
    names = list(dict.fromkeys(names))
    select = tuple(x for x in names if rng.random() < 0.8) or tuple(names)
    return Query(select, where)


def _labels(g: Graph) -> list[Term]:
    return sorted(g.vocabulary)


def random_nested_expr(rng: random.Random, labels: list[Term], depth: int = 3) -> PathExpr:
    """nSPARQL expression whose nesting depth is at most ``depth``."""

    def leaf(d):
        axis = rng.choice(AXES)
        r = rng.random()
        if d > 0 and r < 0.3:
            return AxisNested(axis, expr(d - 1, 2))
        if r < 0.75 and labels:
            return AxisTest(axis, rng.choice(labels))
        return AxisStep(axis)

    def expr(d, size):
        if size <= 0:
            return leaf(d)
        r = rng.random()
        if r < 0.35:
            return Seq(expr(d, size - 1), expr(d, size - 1))
        if r < 0.55:
            return Alt(expr(d, size - 1), expr(d, size - 1))
        if r < 0.7:
            return Star(expr(d, size - 1))
        if r < 0.8:
            return Plus(expr(d, size - 1))
        return leaf(d)

    return expr(depth, 3)


def random_path_expr(rng: random.Random, g: Graph, depth: int = 2) -> PathExpr:
    """Variable-free expression mixing axis steps, nested steps, closed
    constraints with filters, and PSPARQL atoms."""
    labels = _labels(g)
    preds = sorted(g.predicates) or labels
    head, other = var("h"), var("w")

    def constraint(d) -> Constraint:
        body_path = expr(d - 1, 1)
        r = rng.random()
        if r < 0.4 and labels:
            body = (ConstraintTriple(head, body_path, rng.choice(labels)),)
            return Constraint(head, False, body)
        if r < 0.7:
            cond = rng.choice([
                Compare(rng.choice(("<", ">", "=", "!=")), other, lit(rng.randint(0, 3))),
                Regex(other, rng.choice(("1", "^ex:n", "p"))),
                Compare("!=", head, other),
            ])
            return Constraint(head, False, (ConstraintTriple(head, body_path, other),), cond)
        # subject is a fresh variable and the head sits in object position
        cond = Compare(">", head, lit(rng.randint(0, 2)))
        return Constraint(head, False, (ConstraintTriple(other, body_path, head),), cond)

    def leaf(d):
        r = rng.random()
        axis = rng.choice(AXES)
        if d > 0 and r < 0.15:
            return AxisNested(axis, expr(d - 1, 1))
        if d > 0 and r < 0.3:
            return AxisConstrained(axis, constraint(d))
        if r < 0.4 and preds:
            return Atom(rng.choice(preds))
        if r < 0.45 and preds:
            return NegAtom(rng.choice(preds))
        if r < 0.5:
            return Epsilon()
        if r < 0.8 and labels:
            return AxisTest(axis, rng.choice(labels))
        return AxisStep(axis)

    def expr(d, size):
        if size <= 0:
            return leaf(d)
        r = rng.random()
        if r < 0.35:
            return Seq(expr(d, size - 1), expr(d, size - 1))
        if r < 0.55:
            return Alt(expr(d, size - 1), expr(d, size - 1))
        if r < 0.7:
            return Star(expr(d, size - 1))
        if r < 0.8:
            return Plus(expr(d, size - 1))
        return leaf(d)

    return expr(depth, 3)
