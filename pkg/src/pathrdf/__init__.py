"""Regular, nested and constrained path queries over RDF graphs, answered
under RDFS either by saturating the graph or by rewriting the query."""

from .algebra import Map
from .closure import ClosureConfig, closure, non_reflexive_closure
from .engine import SEMANTICS, answer_query, eval_pattern, eval_triple, evaluate
from .graph import Graph, ParseError, parse_ntriples, serialize_ntriples
from .paths import DialectError, eval_all_pairs, eval_pair
from .rewrite import phi, rewrite_query, tau_cp, tau_ps, trans
from .syntax import parse_filter, parse_path, parse_query
from .terms import Term, Triple, iri, lit, var

__version__ = "0.1.0"
