"""RDF terms, triples and the prefix table used to canonicalize names."""

from __future__ import annotations

import re
from dataclasses import dataclass

IRI = "iri"
LITERAL = "literal"
VARIABLE = "var"

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"

DEFAULT_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "dm": "http://example.org/dm#",
    "rn": "http://example.org/rn#",
    "ex": "http://example.org/ex#",
}


@dataclass(frozen=True, order=True)
class Term:
    kind: str
    lexical: str

    def __str__(self) -> str:
        return format_term(self)

    @property
    def is_var(self) -> bool:
        return self.kind == VARIABLE

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL


def iri(name: str) -> Term:
    return Term(IRI, canonical_name(name))


def lit(value) -> Term:
    return Term(LITERAL, str(value))


def var(name: str) -> Term:
    return Term(VARIABLE, name.lstrip("?$"))


# Short aliases used throughout the literature for the rho-df vocabulary.
_ALIASES = {
    "sc": "rdfs:subClassOf",
    "sp": "rdfs:subPropertyOf",
    "type": "rdf:type",
    "dom": "rdfs:domain",
    "range": "rdfs:range",
    "prop": "rdf:Property",
    "class": "rdfs:Class",
    "res": "rdfs:Resource",
    "literal": "rdfs:Literal",
    "datatype": "rdfs:Datatype",
    "contMP": "rdfs:ContainerMembershipProperty",
    "member": "rdfs:member",
}


def canonical_name(name: str, prefixes: dict[str, str] | None = None) -> str:
    """Map aliases and full IRIs onto the compact form used as the IRI lexical."""
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("<") and name.endswith(">"):
        name = name[1:-1]
    table = DEFAULT_PREFIXES if prefixes is None else prefixes
    for pfx, ns in table.items():
        if name.startswith(ns) and len(name) > len(ns):
            local = name[len(ns):]
            if _LOCAL_RE.fullmatch(local):
                return f"{pfx}:{local}"
    return name


_LOCAL_RE = re.compile(r"[A-Za-z_][\w\-]*")
_TOKEN_RE = re.compile(r"(?:_:)?[A-Za-z_][\w\-]*(?::[\w\-]+)?")

SC = iri("sc")
SP = iri("sp")
TYPE = iri("type")
DOM = iri("dom")
RANGE = iri("range")
PROP = iri("prop")
CLASS = iri("class")
RES = iri("res")
LITERAL_CLASS = iri("literal")
DATATYPE = iri("datatype")
CONT_MP = iri("contMP")
MEMBER = iri("member")

RHODF = frozenset({SC, SP, TYPE, DOM, RANGE})

_SHORT = {SC: "sc", SP: "sp", TYPE: "type", DOM: "dom", RANGE: "range"}


def format_term(t: Term | None, short: bool = False) -> str:
    """Serialize a term; ``short`` writes rho-df names with their aliases."""
    if t is None:
        return ""
    if t.kind == VARIABLE:
        return "?" + t.lexical
    if t.kind == LITERAL:
        escaped = t.lexical.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{escaped}"'
    if short and t in _SHORT:
        return _SHORT[t]
    if _TOKEN_RE.fullmatch(t.lexical) and t.lexical not in _RESERVED_WORDS:
        return t.lexical
    return f"<{t.lexical}>"


# Bare words that a parser would read as something other than an IRI.
_RESERVED_WORDS = frozenset(
    {"self", "next", "edge", "node", "eps", "TRUE", "FILTER", "SELECT", "WHERE",
     "UNION", "OPTIONAL", "FROM", "bound", "regex"}
    | set(_ALIASES)
)


@dataclass(frozen=True, order=True)
class Triple:
    s: Term
    p: Term
    o: Term

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    def __str__(self) -> str:
        return f"{format_term(self.s)} {format_term(self.p)} {format_term(self.o)} ."

    def variables(self) -> set[Term]:
        return {t for t in (self.s, self.p, self.o) if t.kind == VARIABLE}


def numeric_value(t: Term | None):
    """Integer or decimal value of a term's lexical form, else None."""
    if t is None or t.kind == VARIABLE:
        return None
    text = t.lexical
    if re.fullmatch(r"[+-]?\d+", text):
        return int(text)
    if re.fullmatch(r"[+-]?(\d+\.\d*|\.\d+)", text):
        return float(text)
    return None
