"""Product-automaton evaluation of path expressions over a graph.

A configuration is a pair (graph term, NFA state). Forward search from
``(a, start)`` finds every ``b`` with ``(a, b)`` in the denotation; backward
search over inverted axes finds every source that can reach a given set of
accepting configurations, which is what LABEL needs for nested and
constrained steps.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from ..filters import eval_filter
from ..graph import NEXT, Axis, Graph
from ..terms import VARIABLE, Term
from .ast import (
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    ConstraintTriple,
    NegAtom,
    PathExpr,
    VarAtom,
    terms_of,
)
from .nfa import build_nfa


class UnboundVariable(ValueError):
    """A regex variable or exported head had no value during evaluation."""


class Evaluator:
    """Evaluates expressions over one graph under one binding of exported
    variables; all LABEL results and constraint checks are memoized."""

    def __init__(self, g: Graph, env: Mapping[str, Term] | None = None):
        self.g = g
        self.env = dict(env or {})
        self._labels: dict = {}
        self._leaf: dict = {}
        self._sat: dict = {}
        self._reach: dict = {}
        self._sorted_voc = None

    @property
    def _voc(self) -> list[Term]:
        if self._sorted_voc is None:
            self._sorted_voc = sorted(self.g.vocabulary)
        return self._sorted_voc

    # -- graph side of one letter --
    def _leaf_info(self, leaf):
        info = self._leaf.get(leaf)
        if info is not None:
            return info
        label = allowed = neg = None
        if isinstance(leaf, AxisStep):
            axis = leaf.axis
        elif isinstance(leaf, AxisTest):
            axis, label = leaf.axis, leaf.label
        elif isinstance(leaf, Atom):
            axis, label = NEXT, leaf.label
        elif isinstance(leaf, NegAtom):
            axis, neg = NEXT, leaf.label
        elif isinstance(leaf, VarAtom):
            value = self.env.get(leaf.variable.lexical)
            if value is None:
                raise UnboundVariable(f"regex variable ?{leaf.variable.lexical} is unbound")
            axis, label = NEXT, value
        elif isinstance(leaf, AxisNested):
            axis, allowed = leaf.axis, self.starts(leaf.nested)
        elif isinstance(leaf, AxisConstrained):
            axis, allowed = leaf.axis, self.constraint_set(leaf.constraint)
        else:
            raise TypeError(f"not a path letter: {leaf!r}")
        info = (axis, label, allowed, neg)
        self._leaf[leaf] = info
        return info

    def targets(self, u: Term, leaf, inverted: bool = False) -> Iterable[Term]:
        axis, label, allowed, neg = self._leaf_info(leaf)
        if inverted:
            axis = axis.inverse()
        by_label = self.g.adjacency.get(u, {}).get(axis)
        if not by_label:
            return ()
        if label is not None:
            return by_label.get(label, ())
        if allowed is not None:
            return [v for z, vs in by_label.items() if z in allowed for v in vs]
        if neg is not None:
            return [v for z, vs in by_label.items() if z != neg for v in vs]
        return [v for vs in by_label.values() for v in vs]

    # -- reachability --
    def reach(self, a: Term, e: PathExpr) -> frozenset[Term]:
        """All ``b`` with ``(a, b)`` in the denotation of ``e``."""
        key = (a, e)
        hit = self._reach.get(key)
        if hit is not None:
            return hit
        out: set[Term] = set()
        if a in self.g.vocabulary:
            nfa = build_nfa(e)
            finals = nfa.finals
            moves = nfa.moves
            seen = {(a, q) for q in nfa.initial}
            queue = deque(seen)
            while queue:
                u, p = queue.popleft()
                if p in finals:
                    out.add(u)
                for letter, qs in moves[p]:
                    for v in self.targets(u, letter):
                        for q in qs:
                            if (v, q) not in seen:
                                seen.add((v, q))
                                queue.append((v, q))
        result = frozenset(out)
        self._reach[key] = result
        return result

    def starts(self, e: PathExpr, ends: Iterable[Term] | None = None) -> frozenset[Term]:
        """Terms from which some ``e``-path leads to a term of ``ends``
        (any term when ``ends`` is None)."""
        key = (e, None if ends is None else frozenset(ends))
        hit = self._labels.get(key)
        if hit is not None:
            return hit
        nfa = build_nfa(e)
        rev, back = nfa.reverse_moves()
        targets = self._voc if ends is None else [v for v in ends if v in self.g.vocabulary]
        seen = set()
        for v in targets:
            for f in nfa.finals:
                for p in back.get(f, ()):
                    seen.add((v, p))
        queue = deque(seen)
        initial = nfa.initial
        out = set()
        while queue:
            v, q = queue.popleft()
            if q in initial:
                out.add(v)
            for letter, p in rev.get(q, ()):
                preds = back.get(p, ())
                for u in self.targets(v, letter, inverted=True):
                    for p2 in preds:
                        if (u, p2) not in seen:
                            seen.add((u, p2))
                            queue.append((u, p2))
        result = frozenset(out)
        self._labels[key] = result
        return result

    def all_pairs(self, e: PathExpr) -> frozenset[tuple[Term, Term]]:
        return frozenset((a, b) for a in self._voc for b in self.reach(a, e))

    # -- constraints --
    def constraint_set(self, c: Constraint) -> frozenset[Term]:
        """Terms of the graph that satisfy ``c`` as a step label."""
        key = ("set", c)
        hit = self._sat.get(key)
        if hit is not None:
            return hit
        if c.exported:
            value = self.env.get(c.head.lexical)
            if value is None:
                raise UnboundVariable(f"exported variable ?{c.head.lexical} is unbound")
            result = frozenset({value}) if self.constraint_sat(value, c) else frozenset()
        else:
            fast = self._fast_set(c)
            if fast is not None:
                result = fast
            else:
                result = frozenset(z for z in self._voc if self.constraint_sat(z, c))
        self._sat[key] = result
        return result

    def _fast_set(self, c: Constraint) -> frozenset | None:
        # <?x, R, const> with no filter: one backward sweep instead of |voc| forward ones
        if c.filter is not None or len(c.body) != 1:
            return None
        t = c.body[0]
        if isinstance(t.p, Term) or t.s.kind != VARIABLE or t.o.kind == VARIABLE:
            return None
        return self.starts(t.p, [t.o])

    def constraint_sat(self, z: Term, c: Constraint) -> bool:
        key = (z, c)
        hit = self._sat.get(key)
        if hit is None:
            hit = self._check(z, c)
            self._sat[key] = hit
        return hit

    def _check(self, z: Term, c: Constraint) -> bool:
        head = c.head.lexical
        if not c.body:
            return c.filter is None or eval_filter({head: z}, c.filter)
        if len(c.body) == 1 and not isinstance(c.body[0].p, Term):
            return self._check_single(z, c, c.body[0])
        return any(
            c.filter is None or eval_filter(m, c.filter)
            for m in body_matches(self, c.body, {head: z})
        )

    def _check_single(self, z: Term, c: Constraint, t: ConstraintTriple) -> bool:
        # The candidate stands in the subject position when that position is
        # a variable; otherwise it binds the head.
        binding: dict[str, Term] = {}
        if t.s.kind == VARIABLE:
            binding[t.s.lexical] = z
            subject = z
        else:
            binding[c.head.lexical] = z
            subject = t.s
        if c.head.lexical not in _vars_of(t):
            binding.setdefault(c.head.lexical, z)
        reached = self.reach(subject, t.p)
        if t.o.kind != VARIABLE:
            return t.o in reached and (c.filter is None or eval_filter(binding, c.filter))
        bound = binding.get(t.o.lexical)
        if bound is not None:
            return bound in reached and (c.filter is None or eval_filter(binding, c.filter))
        if c.filter is None:
            return bool(reached)
        name = t.o.lexical
        return any(eval_filter({**binding, name: w}, c.filter) for w in reached)

    # -- LABEL --
    def label(self, e: PathExpr) -> dict:
        """Satisfying sets for every depth-0 nested or constrained letter of
        ``e`` and, under key ``e``, the terms that start an ``e``-path."""
        out = {}
        for leaf in terms_of(e):
            if isinstance(leaf, AxisNested):
                out[leaf.nested] = self.starts(leaf.nested)
            elif isinstance(leaf, AxisConstrained):
                out[leaf.constraint] = self.constraint_set(leaf.constraint)
        out[e] = self.starts(e)
        return out


def _vars_of(t: ConstraintTriple) -> set[str]:
    names = {x.lexical for x in (t.s, t.o) if x.kind == VARIABLE}
    if isinstance(t.p, Term) and t.p.kind == VARIABLE:
        names.add(t.p.lexical)
    return names


def body_matches(ev: Evaluator, body, seed: dict) -> Iterable[dict]:
    """Bindings extending ``seed`` under which every body triple holds.

    Plain triples use the graph indexes; path triples use forward search from
    a bound subject, backward search to a bound object, or all pairs.
    """
    g = ev.g

    def value(t: Term, b: dict):
        return b.get(t.lexical) if t.kind == VARIABLE else t

    def extend(b: dict, t: Term, v: Term):
        if t.kind != VARIABLE:
            return b if t == v else None
        cur = b.get(t.lexical)
        if cur is None:
            return {**b, t.lexical: v}
        return b if cur == v else None

    def solve(i: int, b: dict):
        if i == len(body):
            yield b
            return
        t = body[i]
        s, o = value(t.s, b), value(t.o, b)
        if isinstance(t.p, Term):
            p = value(t.p, b)
            for tr in g.match(s, p, o):
                b2 = extend(b, t.s, tr.s)
                b2 = b2 and extend(b2, t.p, tr.p)
                b2 = b2 and extend(b2, t.o, tr.o)
                if b2 is not None:
                    yield from solve(i + 1, b2)
            return
        if s is not None:
            pairs = ((s, w) for w in ev.reach(s, t.p))
        elif o is not None:
            pairs = ((u, o) for u in ev.starts(t.p, [o]))
        else:
            pairs = ev.all_pairs(t.p)
        for u, w in pairs:
            b2 = extend(b, t.s, u)
            b2 = b2 and extend(b2, t.o, w)
            if b2 is not None:
                yield from solve(i + 1, b2)

    yield from solve(0, dict(seed))


# -- module-level entry points -------------------------------------------------

def label(g: Graph, e: PathExpr, env: Mapping[str, Term] | None = None) -> dict:
    return Evaluator(g, env).label(e)


def constraint_sat(g: Graph, candidate: Term, c: Constraint, env: Mapping[str, Term] | None = None) -> bool:
    return Evaluator(g, env).constraint_sat(candidate, c)


def eval_pair(g: Graph, e: PathExpr, a: Term, b: Term, env: Mapping[str, Term] | None = None) -> bool:
    return b in Evaluator(g, env).reach(a, e)


def eval_all_pairs(g: Graph, e: PathExpr, env: Mapping[str, Term] | None = None) -> frozenset[tuple[Term, Term]]:
    return Evaluator(g, env).all_pairs(e)
