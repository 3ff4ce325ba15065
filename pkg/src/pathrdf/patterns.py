"""Graph patterns and SELECT queries over any of the path dialects."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .filters import FilterExpr, format_filter
from .paths.ast import PathExpr, exported_variables, format_path
from .terms import VARIABLE, Term, format_term


@dataclass(frozen=True)
class TriplePattern:
    s: Term
    p: "Term | PathExpr"
    o: Term

    @property
    def is_path(self) -> bool:
        return not isinstance(self.p, Term)

    def variables(self) -> list[str]:
        """Variables this pattern binds: subject, object, a variable
        predicate, and the exported variables of a path predicate."""
        out = []
        if self.s.kind == VARIABLE:
            out.append(self.s.lexical)
        if isinstance(self.p, Term):
            if self.p.kind == VARIABLE:
                out.append(self.p.lexical)
        else:
            out.extend(v.lexical for v in exported_variables(self.p))
        if self.o.kind == VARIABLE:
            out.append(self.o.lexical)
        return list(dict.fromkeys(out))

    def __str__(self) -> str:
        p = format_term(self.p, short=True) if isinstance(self.p, Term) else format_path(self.p)
        return f"{format_term(self.s, short=True)} {p} {format_term(self.o, short=True)}"


@dataclass(frozen=True)
class BGP:
    triples: tuple[TriplePattern, ...] = ()


@dataclass(frozen=True)
class AndPattern:
    left: "GraphPattern"
    right: "GraphPattern"


@dataclass(frozen=True)
class UnionPattern:
    left: "GraphPattern"
    right: "GraphPattern"


@dataclass(frozen=True)
class OptPattern:
    left: "GraphPattern"
    right: "GraphPattern"


@dataclass(frozen=True)
class FilterPattern:
    pattern: "GraphPattern"
    condition: FilterExpr


GraphPattern = Union[BGP, AndPattern, UnionPattern, OptPattern, FilterPattern]


def pattern_variables(p: GraphPattern) -> list[str]:
    """Variables that answers to ``p`` may bind, in order of appearance."""
    out: dict[str, None] = {}
    for t in triples_of(p):
        for v in t.variables():
            out[v] = None
    return list(out)


def triples_of(p: GraphPattern) -> Iterator[TriplePattern]:
    if isinstance(p, BGP):
        yield from p.triples
    elif isinstance(p, FilterPattern):
        yield from triples_of(p.pattern)
    else:
        yield from triples_of(p.left)
        yield from triples_of(p.right)


def skeleton(p: GraphPattern) -> tuple:
    """Operator tree with BGP contents erased."""
    if isinstance(p, BGP):
        return ("BGP",)
    if isinstance(p, FilterPattern):
        return ("FILTER", skeleton(p.pattern), p.condition)
    return (type(p).__name__, skeleton(p.left), skeleton(p.right))


@dataclass(frozen=True)
class Query:
    select: tuple[str, ...]
    where: GraphPattern
    source: str | None = None

    def __post_init__(self):
        known = set(pattern_variables(self.where))
        extra = [v for v in self.select if v not in known]
        if extra:
            raise ValueError(
                "selected variables do not occur in the pattern: " + ", ".join("?" + v for v in extra)
            )


def format_pattern(p: GraphPattern, indent: int = 1) -> str:
    pad = "  " * indent
    if isinstance(p, BGP):
        return "".join(f"{pad}{t} .\n" for t in p.triples)
    if isinstance(p, AndPattern):
        return format_pattern(p.left, indent) + _group(p.right, indent)
    if isinstance(p, UnionPattern):
        return (
            f"{pad}{{\n{format_pattern(p.left, indent + 1)}{pad}}}\n"
            f"{pad}UNION\n{pad}{{\n{format_pattern(p.right, indent + 1)}{pad}}}\n"
        )
    if isinstance(p, OptPattern):
        return (
            format_pattern(p.left, indent)
            + f"{pad}OPTIONAL {{\n{format_pattern(p.right, indent + 1)}{pad}}}\n"
        )
    if isinstance(p, FilterPattern):
        return format_pattern(p.pattern, indent) + f"{pad}FILTER({format_filter(p.condition)})\n"
    raise TypeError(p)


def _group(p: GraphPattern, indent: int) -> str:
    pad = "  " * indent
    if isinstance(p, UnionPattern):
        return f"{pad}{{\n{format_pattern(p, indent + 1)}{pad}}}\n"
    return f"{pad}{{\n{format_pattern(p, indent + 1)}{pad}}}\n"


def format_query(q: Query) -> str:
    head = "SELECT " + " ".join("?" + v for v in q.select)
    if q.source:
        head += f" FROM <{q.source}>"
    return f"{head}\nWHERE {{\n{format_pattern(q.where)}}}\n"
