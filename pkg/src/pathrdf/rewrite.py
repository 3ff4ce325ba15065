"""Query rewritings that encode RDFS reasoning into path expressions, and the
structural translation from nested to constrained expressions."""

from __future__ import annotations

import itertools

from .filters import filter_variables
from .graph import EDGE, NEXT, NODE_INV, SELF
from .paths.ast import (
    Alt,
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    ConstraintTriple,
    DialectError,
    Epsilon,
    PathExpr,
    Plus,
    Seq,
    Star,
    alt,
    constraints_of,
    exported_variables,
    invert,
    seq,
)
from .patterns import (
    BGP,
    AndPattern,
    FilterPattern,
    GraphPattern,
    OptPattern,
    Query,
    TriplePattern,
    UnionPattern,
    triples_of,
)
from .terms import DOM, RANGE, SC, SP, TYPE, VARIABLE, Term, var

PSPARQL_TAU = "psparql-tau"
NSPARQL_PHI = "nsparql-phi"
CPSPARQL_TAU = "cpsparql-tau"
REWRITE_MODES = (PSPARQL_TAU, NSPARQL_PHI, CPSPARQL_TAU)

FRESH_PREFIX = "_r"


class Fresh:
    """Generates variables named ``_r1, _r2, ...`` that avoid ``taken``."""

    def __init__(self, taken=()):
        self.taken = set(taken)
        self._n = itertools.count(1)

    def __call__(self) -> Term:
        while True:
            name = f"{FRESH_PREFIX}{next(self._n)}"
            if name not in self.taken:
                self.taken.add(name)
                return var(name)


def _nx(a: Term) -> AxisTest:
    return AxisTest(NEXT, a)


def _closure_step(e: PathExpr, reflexive: bool, identity: PathExpr) -> PathExpr:
    return Alt(Plus(e), identity) if reflexive else Plus(e)


# -- tau to PSPARQL -------------------------------------------------------------

def tau_ps(t: TriplePattern, fresh: Fresh | None = None, reflexive: bool = False) -> GraphPattern:
    fresh = fresh or Fresh(_names_in_triple(t))
    s, p, o = t.s, t.p, t.o
    if not isinstance(p, Term) or p.kind == VARIABLE:
        return BGP((t,))
    if p == SC:
        return BGP((TriplePattern(s, _closure_step(Atom(SC), reflexive, Epsilon()), o),))
    if p == SP:
        return BGP((TriplePattern(s, _closure_step(Atom(SP), reflexive, Epsilon()), o),))
    if p == TYPE:
        sc_star = Star(Atom(SC))
        first = BGP((TriplePattern(s, Seq(Atom(TYPE), sc_star), o),))
        p1, y1 = fresh(), fresh()
        second = BGP((
            TriplePattern(s, p1, y1),
            TriplePattern(p1, seq(Star(Atom(SP)), Atom(DOM), sc_star), o),
        ))
        p2, y2 = fresh(), fresh()
        third = BGP((
            TriplePattern(y2, p2, s),
            TriplePattern(p2, seq(Star(Atom(SP)), Atom(RANGE), sc_star), o),
        ))
        return UnionPattern(UnionPattern(first, second), third)
    x = fresh()
    return BGP((TriplePattern(s, x, o), TriplePattern(x, Star(Atom(SP)), p)))


# -- phi to nSPARQL and tau to cpSPARQL -----------------------------------------

def _type_expr() -> PathExpr:
    sc_star = Star(_nx(SC))
    sp_star = Star(_nx(SP))
    return alt(
        Seq(_nx(TYPE), sc_star),
        seq(_AXIS_EDGE, sp_star, _nx(DOM), sc_star),
        seq(_AXIS_NODE_INV, sp_star, _nx(RANGE), sc_star),
    )


_AXIS_EDGE = AxisStep(EDGE)
_AXIS_NODE_INV = AxisStep(NODE_INV)


def _predicate_expr(p: Term, mode: str, fresh: Fresh, reflexive: bool) -> PathExpr:
    if p == SC:
        return _closure_step(_nx(SC), reflexive, AxisStep(SELF))
    if p == SP:
        return _closure_step(_nx(SP), reflexive, AxisStep(SELF))
    if p == DOM:
        return _nx(DOM)
    if p == RANGE:
        return _nx(RANGE)
    if p == TYPE:
        return _type_expr()
    if mode == NSPARQL_PHI:
        return AxisNested(NEXT, Seq(Star(_nx(SP)), AxisTest(SELF, p)))
    head = fresh()
    return AxisConstrained(NEXT, Constraint(head, False, (ConstraintTriple(head, Star(_nx(SP)), p),)))


def phi(t: TriplePattern, fresh: Fresh | None = None, reflexive: bool = False) -> TriplePattern:
    return _rewrite_triple(t, NSPARQL_PHI, fresh or Fresh(_names_in_triple(t)), reflexive)


def tau_cp(t: TriplePattern, fresh: Fresh | None = None, reflexive: bool = False) -> TriplePattern:
    return _rewrite_triple(t, CPSPARQL_TAU, fresh or Fresh(_names_in_triple(t)), reflexive)


def _rewrite_triple(t: TriplePattern, mode: str, fresh: Fresh, reflexive: bool) -> TriplePattern:
    p = t.p
    if isinstance(p, Term):
        if p.kind == VARIABLE:
            if mode == NSPARQL_PHI:
                raise DialectError(
                    f"variable predicate ?{p.lexical} cannot be expressed by a nested regular expression"
                )
            return TriplePattern(t.s, AxisConstrained(NEXT, Constraint(p, exported=True)), t.o)
        return TriplePattern(t.s, _predicate_expr(p, mode, fresh, reflexive), t.o)
    return TriplePattern(t.s, rewrite_path(p, mode, fresh, reflexive), t.o)


def rewrite_path(e: PathExpr, mode: str, fresh: Fresh | None = None, reflexive: bool = False) -> PathExpr:
    """Replace each ``next::a`` and ``next^-1::a`` step by the encoding of
    ``a``; other steps are kept. PSPARQL paths are returned unchanged."""
    if mode == PSPARQL_TAU:
        return e
    fresh = fresh or Fresh()
    if isinstance(e, Seq):
        return Seq(rewrite_path(e.left, mode, fresh, reflexive), rewrite_path(e.right, mode, fresh, reflexive))
    if isinstance(e, Alt):
        return Alt(rewrite_path(e.left, mode, fresh, reflexive), rewrite_path(e.right, mode, fresh, reflexive))
    if isinstance(e, Star):
        return Star(rewrite_path(e.inner, mode, fresh, reflexive))
    if isinstance(e, Plus):
        return Plus(rewrite_path(e.inner, mode, fresh, reflexive))
    if isinstance(e, AxisTest) and e.axis.base == "next":
        enc = _predicate_expr(e.label, mode, fresh, reflexive)
        return invert(enc) if e.axis.inverted else enc
    return e


# -- trans: nested to constrained -----------------------------------------------

_X = var("x")
_Y = var("y")


def trans(e: PathExpr) -> PathExpr:
    if isinstance(e, Seq):
        return Seq(trans(e.left), trans(e.right))
    if isinstance(e, Alt):
        return Alt(trans(e.left), trans(e.right))
    if isinstance(e, Star):
        return Star(trans(e.inner))
    if isinstance(e, Plus):
        return Plus(trans(e.inner))
    if isinstance(e, AxisNested):
        inner = e.nested
        if isinstance(inner, Seq) and isinstance(inner.right, AxisTest) and inner.right.axis == SELF:
            body = ConstraintTriple(_X, trans(inner.left), inner.right.label)
        else:
            body = ConstraintTriple(_X, trans(inner), _Y)
        return AxisConstrained(e.axis, Constraint(_X, False, (body,)))
    return e


# -- queries --------------------------------------------------------------------

def _names_in_path(e: PathExpr) -> set[str]:
    names = {v.lexical for v in exported_variables(e)}
    for c in constraints_of(e):
        names |= c.variables()
    return names


def _names_in_triple(t: TriplePattern) -> set[str]:
    names = {x.lexical for x in (t.s, t.o) if x.kind == VARIABLE}
    if isinstance(t.p, Term):
        if t.p.kind == VARIABLE:
            names.add(t.p.lexical)
    else:
        names |= _names_in_path(t.p)
    return names


def _names_in_pattern(p: GraphPattern) -> set[str]:
    names = set()
    for t in triples_of(p):
        names |= _names_in_triple(t)
    stack = [p]
    while stack:
        x = stack.pop()
        if isinstance(x, FilterPattern):
            names |= filter_variables(x.condition)
            stack.append(x.pattern)
        elif not isinstance(x, BGP):
            stack.extend((x.left, x.right))
    return names


def rewrite_pattern(p: GraphPattern, mode: str, fresh: Fresh, reflexive: bool = False) -> GraphPattern:
    if isinstance(p, BGP):
        if mode != PSPARQL_TAU:
            return BGP(tuple(_rewrite_triple(t, mode, fresh, reflexive) for t in p.triples))
        plain: list[TriplePattern] = []
        unions: list[GraphPattern] = []
        for t in p.triples:
            r = tau_ps(t, fresh, reflexive)
            if isinstance(r, BGP):
                plain.extend(r.triples)
            else:
                unions.append(r)
        out: GraphPattern = BGP(tuple(dict.fromkeys(plain)))
        for u in unions:
            out = u if out == BGP() else AndPattern(out, u)
        return out
    if isinstance(p, FilterPattern):
        return FilterPattern(rewrite_pattern(p.pattern, mode, fresh, reflexive), p.condition)
    cls = type(p)
    return cls(rewrite_pattern(p.left, mode, fresh, reflexive), rewrite_pattern(p.right, mode, fresh, reflexive))


def rewrite_query(q: Query, mode: str, reflexive: bool = False) -> Query:
    if mode not in REWRITE_MODES:
        raise ValueError(f"unknown rewrite mode {mode!r}")
    fresh = Fresh(_names_in_pattern(q.where) | set(q.select))
    return Query(q.select, rewrite_pattern(q.where, mode, fresh, reflexive), q.source)
