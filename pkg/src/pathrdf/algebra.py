"""Maps (partial variable bindings) and the set operations on them."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable

from .terms import Term


class Map(Mapping):
    """Immutable, hashable binding of variable names to terms.

    A value of ``None`` is the null introduced by completion; matching never
    produces it.
    """

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping[str, Term | None] | Iterable = ()):
        self._d = dict(data)
        self._hash = None

    def __getitem__(self, key: str) -> Term | None:
        return self._d[key]

    def __iter__(self):
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Map):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"?{k}<-{v}" for k, v in sorted(self._d.items()))
        return "{" + inner + "}"

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self._d)

    def restrict(self, names: Iterable[str]) -> "Map":
        names = set(names)
        return Map({k: v for k, v in self._d.items() if k in names})

    def complete(self, names: Iterable[str]) -> "Map":
        d = dict(self._d)
        for n in names:
            d.setdefault(n, None)
        return Map(d)


EMPTY = Map()


def compatible(m1: Mapping, m2: Mapping) -> bool:
    if len(m2) < len(m1):
        m1, m2 = m2, m1
    return all(m2[k] == v for k, v in m1.items() if k in m2)


def merge(m1: Mapping, m2: Mapping) -> Map:
    if not compatible(m1, m2):
        raise ValueError(f"cannot merge incompatible maps {m1!r} and {m2!r}")
    d = dict(m1)
    d.update(m2)
    return Map(d)


def join(left: Iterable[Map], right: Iterable[Map]) -> frozenset[Map]:
    right = list(right)
    return frozenset(merge(a, b) for a in left for b in right if compatible(a, b))


def difference(left: Iterable[Map], right: Iterable[Map]) -> frozenset[Map]:
    """Maps of ``left`` compatible with no map of ``right``."""
    right = list(right)
    return frozenset(a for a in left if not any(compatible(a, b) for b in right))


def project(answers: Iterable[Map], names: Iterable[str]) -> frozenset[Map]:
    names = list(names)
    return frozenset(m.restrict(names).complete(names) for m in answers)
