"""Recursive-descent parser for path expressions, filters and SELECT queries.

Precedence inside paths is postfix ``*``/``+`` over ``/`` over ``|``; both
binary operators associate to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .filters import And, Bound, Compare, FilterExpr, Not, Or, Regex, Truth
from .graph import Axis, ParseError, unescape
from .paths.ast import (
    Alt,
    Atom,
    AxisConstrained,
    AxisNested,
    AxisStep,
    AxisTest,
    Constraint,
    ConstraintTriple,
    DIALECTS,
    Epsilon,
    NegAtom,
    PathExpr,
    Plus,
    Seq,
    Star,
    VarAtom,
    check_dialect,
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
    pattern_variables,
)
from .terms import DEFAULT_PREFIXES, IRI, LITERAL, VARIABLE, Term, canonical_name

_LEX = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iri><[^<>\s]*>)
  | (?P<str>"(?:[^"\\]|\\.)*")(?:\^\^(?:<[^>]*>|[A-Za-z_][\w\-]*:[\w\-]*)|@[A-Za-z\-]+)?
  | (?P<num>[+-]?(?:\d+\.\d+|\d+))
  | (?P<var>[?$][A-Za-z_]\w*)
  | (?P<bnode>_:[\w\-]+)
  | (?P<name>[A-Za-z_][\w\-]*(?::(?!:)[\w\-]*)?)
  | (?P<op>::|\^-1|&&|\|\||!=|<=|>=|[\^*+|/()\[\]{}.,:;!=<>])
    """,
    re.VERBOSE,
)

_AXIS_WORDS = {
    "self": Axis("self"),
    "next": Axis("next"),
    "edge": Axis("edge"),
    "node": Axis("node"),
    "self-1": Axis("self", True),
    "next-1": Axis("next", True),
    "edge-1": Axis("edge", True),
    "node-1": Axis("node", True),
}


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(kind), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str, prefixes: dict[str, str] | None = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.prefixes = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)
        self._fresh = 0

    # -- token helpers --
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        shown = tok.text or "end of input"
        return ParseError(f"{message} (found {shown!r})", pos=tok.pos)

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text in texts

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "name" and self.tok.text.upper() == word

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        tok = self.tok
        self.i += 1
        return tok

    def expect_keyword(self, word: str) -> None:
        if not self.at_keyword(word):
            raise self.error(f"expected {word}")
        self.i += 1

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")

    # -- terms --
    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "var":
            self.i += 1
            return Term(VARIABLE, tok.text[1:])
        if tok.kind in ("iri", "name", "bnode"):
            self.i += 1
            return Term(IRI, canonical_name(tok.text, self.prefixes))
        if tok.kind == "str":
            self.i += 1
            return Term(LITERAL, unescape(tok.text[1:-1]))
        if tok.kind == "num":
            self.i += 1
            return Term(LITERAL, tok.text)
        raise self.error("expected a term")

    # -- paths --
    def path(self) -> PathExpr:
        e = self.seq_path()
        while self.at("|"):
            self.i += 1
            e = Alt(e, self.seq_path())
        return e

    def seq_path(self) -> PathExpr:
        e = self.postfix_path()
        while self.at("/"):
            self.i += 1
            e = Seq(e, self.postfix_path())
        return e

    def postfix_path(self) -> PathExpr:
        e = self.primary_path()
        while self.at("*", "+"):
            e = Star(e) if self.tok.text == "*" else Plus(e)
            self.i += 1
        return e

    def _axis_word(self) -> Axis | None:
        if self.tok.kind == "name" and self.tok.text in _AXIS_WORDS:
            return _AXIS_WORDS[self.tok.text]
        return None

    def primary_path(self) -> PathExpr:
        tok = self.tok
        if self.at("("):
            self.i += 1
            e = self.path()
            self.expect(")")
            return e
        if self.at("^") and self.peek().kind == "name" and self.peek().text in _AXIS_WORDS:
            self.i += 1
            return self.axis_expr(inverted=True)
        if self._axis_word() is not None:
            return self.axis_expr()
        if tok.kind == "name" and tok.text == "eps":
            self.i += 1
            return Epsilon()
        if self.at("!"):
            self.i += 1
            t = self.term()
            if t.kind != IRI:
                raise self.error("negated atom needs an IRI", tok)
            return NegAtom(t)
        if tok.kind == "var":
            self.i += 1
            return VarAtom(Term(VARIABLE, tok.text[1:]))
        if tok.kind in ("iri", "name", "bnode"):
            return Atom(self.term())
        raise self.error("expected a path expression")

    def axis_expr(self, inverted: bool = False) -> PathExpr:
        axis = _AXIS_WORDS[self.tok.text]
        self.i += 1
        if self.at("^-1"):
            self.i += 1
            inverted = not inverted
        if inverted:
            axis = axis.inverse()
        if self.at("::"):
            self.i += 1
            if self.at("["):
                return self.bracket(axis)
            if self.at("]"):
                return AxisConstrained(axis, self.open_constraint())
            label = self.term()
            if label.kind == VARIABLE:
                raise self.error("axis labels must be constants")
            return AxisTest(axis, label)
        if self.at("["):
            return self.bracket(axis)
        return AxisStep(axis)

    def bracket(self, axis: Axis) -> PathExpr:
        self.expect("[")
        if self.tok.kind == "var" and self.peek().kind == "op" and self.peek().text in (":", ";"):
            head = self.term()
            self.i += 1
            c = self.constraint_body(head, exported=False)
            self.expect("]")
            return AxisConstrained(axis, c)
        nested = self.path()
        self.expect("]")
        return AxisNested(axis, nested)

    def open_constraint(self) -> Constraint:
        self.expect("]")
        if self.tok.kind != "var":
            raise self.error("expected the constraint head variable")
        head = self.term()
        if not self.at(":", ";"):
            raise self.error("expected ':'")
        self.i += 1
        c = self.constraint_body(head, exported=True)
        self.expect("[")
        return c

    def constraint_body(self, head: Term, exported: bool) -> Constraint:
        if self.at_keyword("TRUE"):
            self.i += 1
            return Constraint(head, exported)
        body: list[ConstraintTriple] = []
        cond = None
        if self.at("{"):
            self.i += 1
            while not self.at("}"):
                if self.at("."):
                    self.i += 1
                    continue
                if self.at_keyword("FILTER"):
                    cond = self._and_filter(cond, self.filter_clause())
                    continue
                s = self.term()
                p = self.predicate()
                o = self.term()
                if isinstance(p, Atom):
                    p = AxisTest(Axis("next"), p.label)
                elif isinstance(p, VarAtom):
                    p = p.variable
                body.append(ConstraintTriple(s, p, o))
            self.expect("}")
        if self.at("."):
            self.i += 1
        if self.at_keyword("FILTER"):
            cond = self._and_filter(cond, self.filter_clause())
        if not body and cond is None:
            raise self.error("expected TRUE, a triple block or FILTER")
        return Constraint(head, exported, tuple(body), cond)

    @staticmethod
    def _and_filter(a, b):
        return b if a is None else And(a, b)

    def predicate(self) -> PathExpr:
        return self.path()

    # -- filters --
    def filter_clause(self) -> FilterExpr:
        self.expect_keyword("FILTER")
        self.expect("(")
        e = self.filter_expr()
        self.expect(")")
        return e

    def filter_expr(self) -> FilterExpr:
        e = self.filter_and()
        while self.at("||"):
            self.i += 1
            e = Or(e, self.filter_and())
        return e

    def filter_and(self) -> FilterExpr:
        e = self.filter_unary()
        while self.at("&&"):
            self.i += 1
            e = And(e, self.filter_unary())
        return e

    def filter_unary(self) -> FilterExpr:
        if self.at("!"):
            self.i += 1
            return Not(self.filter_unary())
        if self.at("("):
            self.i += 1
            e = self.filter_expr()
            self.expect(")")
            return e
        if self.tok.kind == "name":
            word = self.tok.text.lower()
            if word == "bound" and self.peek().text == "(":
                self.i += 2
                if self.tok.kind != "var":
                    raise self.error("bound() takes a variable")
                v = self.term()
                self.expect(")")
                return Bound(v)
            if word == "regex" and self.peek().text == "(":
                self.i += 2
                target = self.term()
                self.expect(",")
                pat = self._string()
                flags = ""
                if self.at(","):
                    self.i += 1
                    flags = self._string()
                self.expect(")")
                return Regex(target, pat, flags)
            if word in ("true", "false") and not (self.peek().kind == "op" and self.peek().text in _RELOPS):
                self.i += 1
                return Truth(word == "true")
        left = self.term()
        if not (self.tok.kind == "op" and self.tok.text in _RELOPS):
            raise self.error("expected a comparison operator")
        op = self.tok.text
        self.i += 1
        right = self.term()
        return Compare(op, left, right)

    def _string(self) -> str:
        if self.tok.kind != "str":
            raise self.error("expected a string")
        text = unescape(self.tok.text[1:-1])
        self.i += 1
        return text

    # -- queries --
    def query(self) -> Query:
        self.expect_keyword("SELECT")
        if self.at_keyword("DISTINCT"):
            self.i += 1
        select: list[str] | None = []
        if self.at("*"):
            self.i += 1
            select = None
        else:
            while self.tok.kind == "var":
                select.append(self.tok.text[1:])
                self.i += 1
                if self.at(","):
                    self.i += 1
            if not select:
                raise self.error("expected selected variables")
        source = None
        if self.at_keyword("FROM"):
            self.i += 1
            if self.tok.kind not in ("iri", "name"):
                raise self.error("expected a graph IRI after FROM")
            source = self.tok.text.strip("<>")
            self.i += 1
        if self.at_keyword("WHERE"):
            self.i += 1
        where = self.group()
        self.done()
        names = tuple(select) if select is not None else tuple(pattern_variables(where))
        try:
            return Query(names, where, source)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def group(self) -> GraphPattern:
        self.expect("{")
        current: GraphPattern | None = None
        pending: list[TriplePattern] = []
        filters: list[FilterExpr] = []

        def attach(p: GraphPattern) -> None:
            nonlocal current
            current = p if current is None else AndPattern(current, p)

        def flush() -> None:
            if pending:
                attach(BGP(tuple(dict.fromkeys(pending))))
                pending.clear()

        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated group")
            if self.at("."):
                self.i += 1
            elif self.at("{"):
                flush()
                g = self.group()
                while self.at_keyword("UNION"):
                    self.i += 1
                    g = UnionPattern(g, self.group())
                attach(g)
            elif self.at_keyword("OPTIONAL"):
                flush()
                self.i += 1
                g = self.group()
                current = OptPattern(current if current is not None else BGP(), g)
            elif self.at_keyword("FILTER"):
                filters.append(self.filter_clause())
            else:
                pending.append(self.triple_pattern())
        self.expect("}")
        flush()
        out = current if current is not None else BGP()
        for k in filters:
            out = FilterPattern(out, k)
        return out

    def triple_pattern(self) -> TriplePattern:
        s = self.term()
        p = self.path()
        o = self.term()
        if isinstance(p, Atom):
            p = p.label
        elif isinstance(p, VarAtom):
            p = p.variable
        return TriplePattern(s, p, o)


_RELOPS = ("=", "!=", "<", "<=", ">", ">=")


def parse_path(text: str, dialect: str | None = None, prefixes: dict[str, str] | None = None) -> PathExpr:
    """Parse a path expression; with ``dialect`` set, reject constructs the
    dialect does not allow."""
    if dialect is not None and dialect not in DIALECTS:
        raise ValueError(f"unknown dialect {dialect!r}")
    p = Parser(text, prefixes)
    e = p.path()
    p.done()
    if dialect is not None:
        check_dialect(e, dialect)
    return e


def parse_filter(text: str) -> FilterExpr:
    p = Parser(text)
    e = p.filter_expr()
    p.done()
    return e


def parse_query(text: str, prefixes: dict[str, str] | None = None) -> Query:
    text, table = _strip_prefix_lines(text, prefixes)
    return Parser(text, table).query()


def parse_pattern(text: str) -> GraphPattern:
    p = Parser(text)
    g = p.group()
    p.done()
    return g


def _strip_prefix_lines(text: str, prefixes):
    table = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)
    kept = []
    for line in text.splitlines():
        m = re.match(r"\s*(?:@prefix|PREFIX)\s+([A-Za-z_][\w\-]*)?:\s*<([^>]*)>\s*\.?\s*$", line, re.I)
        if m:
            table[m.group(1) or ""] = m.group(2)
            kept.append("")
        else:
            kept.append(line)
    return "\n".join(kept), table
