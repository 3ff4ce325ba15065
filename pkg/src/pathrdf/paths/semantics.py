"""Reference semantics: path expressions as ternary relations (source,
target, label), evaluated bottom-up with no automata and no indexes beyond a
linear scan of the triples. Slow on purpose; used as a test oracle."""

from __future__ import annotations

from itertools import product
from typing import Mapping

from ..filters import eval_filter
from ..graph import Axis, Graph
from ..terms import VARIABLE, Term
from .ast import (
    Alt,
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    Epsilon,
    NegAtom,
    PathExpr,
    Plus,
    Seq,
    Star,
    VarAtom,
)

Rel = frozenset  # of (x, y, label)


def _axis_rel(g: Graph, axis: Axis) -> set:
    if axis.base == "self":
        return {(x, x, x) for x in g.vocabulary}
    if axis.base == "next":
        rel = {(t.s, t.o, t.p) for t in g.triples}
    elif axis.base == "edge":
        rel = {(t.s, t.p, t.o) for t in g.triples}
    else:
        rel = {(t.p, t.o, t.s) for t in g.triples}
    if axis.inverted:
        rel = {(y, x, z) for x, y, z in rel}
    return rel


def _compose(r1, r2) -> set:
    by_src: dict = {}
    for w, y, z in r2:
        by_src.setdefault(w, []).append((y, z))
    return {(x, y, z) for x, w, _ in r1 for y, z in by_src.get(w, ())}


def denot_eval(g: Graph, e: PathExpr, env: Mapping[str, Term] | None = None) -> Rel:
    return _Denot(g, env or {}).rel(e)


def denot_pairs(g: Graph, e: PathExpr, env: Mapping[str, Term] | None = None) -> frozenset:
    return frozenset((x, y) for x, y, _ in denot_eval(g, e, env))


class _Denot:
    def __init__(self, g: Graph, env):
        self.g = g
        self.env = env
        self.memo: dict = {}

    def rel(self, e: PathExpr) -> Rel:
        hit = self.memo.get(e)
        if hit is None:
            hit = Rel(self._rel(e))
            self.memo[e] = hit
        return hit

    def _rel(self, e):
        g = self.g
        if isinstance(e, AxisStep):
            return _axis_rel(g, e.axis)
        if isinstance(e, AxisTest):
            return {r for r in _axis_rel(g, e.axis) if r[2] == e.label}
        if isinstance(e, Atom):
            return {(t.s, t.o, t.p) for t in g.triples if t.p == e.label}
        if isinstance(e, NegAtom):
            return {(t.s, t.o, t.p) for t in g.triples if t.p != e.label}
        if isinstance(e, VarAtom):
            value = self.env.get(e.variable.lexical)
            if value is None:
                raise ValueError(f"unbound regex variable ?{e.variable.lexical}")
            return {(t.s, t.o, t.p) for t in g.triples if t.p == value}
        if isinstance(e, Epsilon):
            return _axis_rel(g, Axis("self"))
        if isinstance(e, AxisNested):
            starts = {x for x, _, _ in self.rel(e.nested)}
            return {r for r in _axis_rel(g, e.axis) if r[2] in starts}
        if isinstance(e, AxisConstrained):
            ok = self.constraint_set(e.constraint)
            return {r for r in _axis_rel(g, e.axis) if r[2] in ok}
        if isinstance(e, Seq):
            return _compose(self.rel(e.left), self.rel(e.right))
        if isinstance(e, Alt):
            return self.rel(e.left) | self.rel(e.right)
        if isinstance(e, Plus):
            return _compose(self.rel(e.inner), self.rel(Star(e.inner)))
        if isinstance(e, Star):
            base = self.rel(e.inner)
            acc = set(_axis_rel(g, Axis("self")))
            frontier = set(acc)
            while frontier:
                new = _compose(frontier, base) - acc
                acc |= new
                frontier = new
            return acc
        raise TypeError(f"not a path expression: {e!r}")

    def constraint_set(self, c: Constraint) -> set:
        """Labels z with some w such that (z, w) satisfies the constraint,
        found by trying every assignment of the body variables."""
        voc = sorted(self.g.vocabulary)
        if c.exported:
            value = self.env.get(c.head.lexical)
            if value is None:
                raise ValueError(f"unbound exported variable ?{c.head.lexical}")
            candidates = [value] if value in self.g.vocabulary else []
        else:
            candidates = voc
        body = c.body
        single_path = len(body) == 1 and not isinstance(body[0].p, Term)
        if single_path and body[0].s.kind == VARIABLE:
            pivot = body[0].s.lexical
        else:
            pivot = c.head.lexical
        names = sorted(
            {x.lexical for t in body for x in (t.s, t.p, t.o) if isinstance(x, Term) and x.kind == VARIABLE}
            - {pivot}
        )
        if c.head.lexical != pivot and c.head.lexical not in names:
            extra_head = True
        else:
            extra_head = False
        paths = {t.p: {(x, y) for x, y, _ in self.rel(t.p)} for t in body if not isinstance(t.p, Term)}
        out = set()
        for z in candidates:
            for values in product(voc, repeat=len(names)):
                b = dict(zip(names, values))
                b[pivot] = z
                if extra_head:
                    b[c.head.lexical] = z
                if all(self._holds(t, b, paths) for t in body) and (
                    c.filter is None or eval_filter(b, c.filter)
                ):
                    out.add(z)
                    break
        return out

    def _holds(self, t, b, paths) -> bool:
        def val(x):
            return b[x.lexical] if x.kind == VARIABLE else x

        s, o = val(t.s), val(t.o)
        if isinstance(t.p, Term):
            return any(tr.s == s and tr.p == val(t.p) and tr.o == o for tr in self.g.triples)
        return (s, o) in paths[t.p]
