"""Abstract syntax shared by regular expression patterns, nested regular
expressions and constrained regular expressions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from ..filters import FilterExpr, Truth, filter_variables, format_filter
from ..graph import Axis
from ..terms import VARIABLE, Term, format_term

PSPARQL = "psparql"
NSPARQL = "nsparql"
CPSPARQL = "cpsparql"
CPSPARQL_FULL = "cpsparql-full"
DIALECTS = (PSPARQL, NSPARQL, CPSPARQL, CPSPARQL_FULL)


class DialectError(ValueError):
    """A construct was used outside the dialects that allow it."""


@dataclass(frozen=True)
class AxisStep:
    axis: Axis


@dataclass(frozen=True)
class AxisTest:
    axis: Axis
    label: Term


@dataclass(frozen=True)
class AxisNested:
    axis: Axis
    nested: "PathExpr"


@dataclass(frozen=True)
class AxisConstrained:
    axis: Axis
    constraint: "Constraint"


@dataclass(frozen=True)
class Atom:
    label: Term


@dataclass(frozen=True)
class NegAtom:
    label: Term


@dataclass(frozen=True)
class VarAtom:
    variable: Term


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Seq:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Alt:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Star:
    inner: "PathExpr"


@dataclass(frozen=True)
class Plus:
    inner: "PathExpr"


PathExpr = Union[
    AxisStep, AxisTest, AxisNested, AxisConstrained,
    Atom, NegAtom, VarAtom, Epsilon, Seq, Alt, Star, Plus,
]
LEAVES = (AxisStep, AxisTest, AxisNested, AxisConstrained, Atom, NegAtom, VarAtom)


@dataclass(frozen=True)
class ConstraintTriple:
    s: Term
    p: "PathExpr | Term"
    o: Term

    def __post_init__(self):
        # a lone atom and next::a denote the same step; keep one spelling
        if isinstance(self.p, Atom):
            object.__setattr__(self, "p", AxisTest(Axis("next"), self.p.label))


@dataclass(frozen=True)
class Constraint:
    """``?head: {body} FILTER(filter)``; ``exported`` is the open-bracket form
    whose head variable is bound in answers."""

    head: Term
    exported: bool = False
    body: tuple[ConstraintTriple, ...] = ()
    filter: FilterExpr | None = None

    def __post_init__(self):
        if self.head.kind != VARIABLE:
            raise ValueError("constraint head must be a variable")
        object.__setattr__(self, "body", tuple(dict.fromkeys(self.body)))
        if isinstance(self.filter, Truth) and self.filter.value:
            object.__setattr__(self, "filter", None)

    def variables(self) -> set[str]:
        names = {self.head.lexical}
        for t in self.body:
            for x in (t.s, t.o):
                if x.kind == VARIABLE:
                    names.add(x.lexical)
            if isinstance(t.p, Term) and t.p.kind == VARIABLE:
                names.add(t.p.lexical)
        if self.filter is not None:
            names |= filter_variables(self.filter)
        return names


def plus(e: PathExpr) -> Plus:
    return Plus(e)


def seq(*parts: PathExpr) -> PathExpr:
    out = parts[0]
    for p in parts[1:]:
        out = Seq(out, p)
    return out


def alt(*parts: PathExpr) -> PathExpr:
    out = parts[0]
    for p in parts[1:]:
        out = Alt(out, p)
    return out


def children(e: PathExpr) -> tuple:
    if isinstance(e, (Seq, Alt)):
        return (e.left, e.right)
    if isinstance(e, (Star, Plus)):
        return (e.inner,)
    return ()


def walk(e: PathExpr) -> Iterator[PathExpr]:
    """Pre-order traversal that does not descend into constraint bodies or
    nested expressions."""
    stack = [e]
    while stack:
        x = stack.pop()
        yield x
        stack.extend(reversed(children(x)))


def terms_of(e: PathExpr) -> frozenset:
    """The alphabet of ``e``: its axis steps, labeled steps, nested and
    constrained steps and atoms, each an indivisible letter."""
    return frozenset(x for x in walk(e) if isinstance(x, LEAVES))


def nullable(e: PathExpr) -> bool:
    if isinstance(e, (Star, Epsilon)):
        return True
    if isinstance(e, Plus):
        return nullable(e.inner)
    if isinstance(e, Seq):
        return nullable(e.left) and nullable(e.right)
    if isinstance(e, Alt):
        return nullable(e.left) or nullable(e.right)
    return False


def exported_variables(e: PathExpr) -> list[Term]:
    """Head variables of open-bracket constraints, plus regex variables."""
    out: dict[Term, None] = {}
    for x in walk(e):
        if isinstance(x, AxisConstrained) and x.constraint.exported:
            out[x.constraint.head] = None
        elif isinstance(x, VarAtom):
            out[x.variable] = None
    return list(out)


def constraints_of(e: PathExpr) -> list[Constraint]:
    return list(dict.fromkeys(x.constraint for x in walk(e) if isinstance(x, AxisConstrained)))


def invert(e: PathExpr) -> PathExpr:
    """Expression denoting the converse relation."""
    if isinstance(e, Seq):
        return Seq(invert(e.right), invert(e.left))
    if isinstance(e, Alt):
        return Alt(invert(e.left), invert(e.right))
    if isinstance(e, Star):
        return Star(invert(e.inner))
    if isinstance(e, Plus):
        return Plus(invert(e.inner))
    if isinstance(e, AxisStep):
        return AxisStep(e.axis.inverse())
    if isinstance(e, AxisTest):
        return AxisTest(e.axis.inverse(), e.label)
    if isinstance(e, AxisNested):
        return AxisNested(e.axis.inverse(), e.nested)
    if isinstance(e, AxisConstrained):
        return AxisConstrained(e.axis.inverse(), e.constraint)
    if isinstance(e, Atom):
        return AxisTest(Axis("next", True), e.label)
    if isinstance(e, Epsilon):
        return e
    raise DialectError(f"cannot invert {format_path(e)}")


# -- dialects -------------------------------------------------------------------

def _leaf_ok(x: PathExpr, dialect: str) -> bool:
    if isinstance(x, (Atom, NegAtom, VarAtom, Epsilon)):
        return dialect == PSPARQL
    if isinstance(x, (AxisStep, AxisTest)):
        return dialect != PSPARQL
    if isinstance(x, AxisNested):
        return dialect == NSPARQL and is_legal(x.nested, NSPARQL)
    if isinstance(x, AxisConstrained):
        if dialect == CPSPARQL:
            return _cp_constraint(x.constraint)
        if dialect == CPSPARQL_FULL:
            return all(
                not isinstance(t.p, (Seq, Alt, Star, Plus) + LEAVES) or is_legal(t.p, CPSPARQL_FULL)
                for t in x.constraint.body
            )
        return False
    return True


def offending(e: PathExpr, dialect: str) -> PathExpr | None:
    for x in walk(e):
        if not _leaf_ok(x, dialect):
            return x
    return None


def is_legal(e: PathExpr, dialect: str) -> bool:
    return offending(e, dialect) is None


def check_dialect(e: PathExpr, dialect: str) -> None:
    bad = offending(e, dialect)
    if bad is not None:
        raise DialectError(f"{format_path(bad)} is not allowed in {dialect}")


def dialect_of(e: PathExpr) -> str | None:
    """The narrowest dialect in which ``e`` is legal."""
    for d in (NSPARQL, CPSPARQL, CPSPARQL_FULL, PSPARQL):
        if is_legal(e, d):
            return d
    return None


def _cp_constraint(c: Constraint) -> bool:
    if not c.body:
        return c.exported and c.filter is None
    if c.exported or len(c.body) != 1:
        return False
    t = c.body[0]
    if t.s != c.head or isinstance(t.p, Term) or not is_cpsparql(t.p):
        return False
    if t.o.kind == VARIABLE and t.o == c.head:
        return False
    allowed = {c.head.lexical} | ({t.o.lexical} if t.o.kind == VARIABLE else set())
    return c.filter is None or filter_variables(c.filter) <= allowed


def is_cpsparql(e: PathExpr) -> bool:
    """Single traversal; nested constraint bodies are checked recursively."""
    for x in walk(e):
        if isinstance(x, AxisConstrained):
            if not _cp_constraint(x.constraint):
                return False
        elif not isinstance(x, (AxisStep, AxisTest, Seq, Alt, Star, Plus)):
            return False
    return True


# -- printing -------------------------------------------------------------------

def _prec(e: PathExpr) -> int:
    if isinstance(e, Alt):
        return 1
    if isinstance(e, Seq):
        return 2
    if isinstance(e, (Star, Plus)):
        return 3
    return 4


def format_path(e: PathExpr) -> str:
    """Text in the surface grammar; parses back to an equal AST."""
    return _fmt(e, 0)


def _wrap(e: PathExpr, min_prec: int) -> str:
    text = _fmt(e, min_prec)
    return f"({text})" if _prec(e) < min_prec else text


def _fmt(e: PathExpr, _ctx: int) -> str:
    if isinstance(e, Alt):
        return f"{_wrap(e.left, 1)}|{_wrap(e.right, 2)}"
    if isinstance(e, Seq):
        return f"{_wrap(e.left, 2)}/{_wrap(e.right, 3)}"
    if isinstance(e, Star):
        return f"{_wrap(e.inner, 4)}*"
    if isinstance(e, Plus):
        return f"{_wrap(e.inner, 4)}+"
    if isinstance(e, AxisStep):
        return str(e.axis)
    if isinstance(e, AxisTest):
        return f"{e.axis}::{format_term(e.label, short=True)}"
    if isinstance(e, AxisNested):
        return f"{e.axis}::[{format_path(e.nested)}]"
    if isinstance(e, AxisConstrained):
        return f"{e.axis}::{format_constraint(e.constraint)}"
    if isinstance(e, Atom):
        return format_term(e.label, short=True)
    if isinstance(e, NegAtom):
        return "!" + format_term(e.label, short=True)
    if isinstance(e, VarAtom):
        return format_term(e.variable)
    if isinstance(e, Epsilon):
        return "eps"
    raise TypeError(f"not a path expression: {e!r}")


def format_constraint(c: Constraint) -> str:
    parts = []
    if c.body:
        triples = " . ".join(
            f"{format_term(t.s, short=True)} "
            f"{format_term(t.p, short=True) if isinstance(t.p, Term) else format_path(t.p)} "
            f"{format_term(t.o, short=True)}"
            for t in c.body
        )
        parts.append("{ " + triples + " }")
    if c.filter is not None:
        parts.append(f"FILTER({format_filter(c.filter)})")
    if not parts:
        parts.append("TRUE")
    inner = f"{format_term(c.head)}: " + " ".join(parts)
    return f"]{inner}[" if c.exported else f"[{inner}]"
