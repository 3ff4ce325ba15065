"""Thompson construction of an epsilon-NFA whose letters are path leaves."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .ast import LEAVES, Alt, Epsilon, PathExpr, Plus, Seq, Star, terms_of


@dataclass
class NFA:
    n_states: int
    start: int
    finals: frozenset[int]
    # delta[p][letter] -> set of states; eps[p] -> set of states
    delta: list[dict] = field(default_factory=list)
    eps: list[set] = field(default_factory=list)
    alphabet: frozenset = frozenset()

    def __post_init__(self):
        self.closure = [self._eclose(q) for q in range(self.n_states)]
        # transitions with the epsilon closure of the target folded in
        self.moves: list[list[tuple]] = []
        for p in range(self.n_states):
            row = []
            for letter, qs in self.delta[p].items():
                targets = set()
                for q in qs:
                    targets |= self.closure[q]
                row.append((letter, frozenset(targets)))
            self.moves.append(row)
        self._reverse = None

    def _eclose(self, q: int) -> frozenset[int]:
        seen = {q}
        stack = [q]
        while stack:
            x = stack.pop()
            for y in self.eps[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    @property
    def initial(self) -> frozenset[int]:
        return self.closure[self.start]

    def reverse_moves(self):
        """``rev[q]`` lists ``(letter, p)`` with a move from ``p`` landing
        in ``q``; ``back[f]`` is the set of states that epsilon-reach ``f``."""
        if self._reverse is None:
            rev = defaultdict(list)
            for p in range(self.n_states):
                for letter, qs in self.moves[p]:
                    for q in qs:
                        rev[q].append((letter, p))
            back = defaultdict(set)
            for p in range(self.n_states):
                for q in self.closure[p]:
                    back[q].add(p)
            self._reverse = (dict(rev), dict(back))
        return self._reverse

    def accepts(self, word) -> bool:
        """Word membership over the leaf alphabet."""
        current = set(self.initial)
        for letter in word:
            nxt = set()
            for p in current:
                for lt, qs in self.moves[p]:
                    if lt == letter:
                        nxt |= qs
            current = nxt
        return bool(current & self.finals)


class _Builder:
    def __init__(self):
        self.delta: list[dict] = []
        self.eps: list[set] = []

    def state(self) -> int:
        self.delta.append(defaultdict(set))
        self.eps.append(set())
        return len(self.delta) - 1

    def build(self, e: PathExpr) -> tuple[int, int]:
        if isinstance(e, Seq):
            s1, f1 = self.build(e.left)
            s2, f2 = self.build(e.right)
            self.eps[f1].add(s2)
            return s1, f2
        if isinstance(e, Alt):
            s, f = self.state(), self.state()
            for part in (e.left, e.right):
                si, fi = self.build(part)
                self.eps[s].add(si)
                self.eps[fi].add(f)
            return s, f
        if isinstance(e, Star):
            s, f = self.state(), self.state()
            si, fi = self.build(e.inner)
            self.eps[s] |= {si, f}
            self.eps[fi] |= {si, f}
            return s, f
        if isinstance(e, Plus):
            return self.build(Seq(e.inner, Star(e.inner)))
        s, f = self.state(), self.state()
        if isinstance(e, Epsilon):
            self.eps[s].add(f)
        elif isinstance(e, LEAVES):
            self.delta[s][e].add(f)
        else:
            raise TypeError(f"not a path expression: {e!r}")
        return s, f


@lru_cache(maxsize=4096)
def build_nfa(e: PathExpr) -> NFA:
    b = _Builder()
    start, final = b.build(e)
    return NFA(
        n_states=len(b.delta),
        start=start,
        finals=frozenset({final}),
        delta=[dict(d) for d in b.delta],
        eps=b.eps,
        alphabet=terms_of(e),
    )
