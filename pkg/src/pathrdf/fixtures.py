"""Small reference graphs and queries: a gene regulation network with its
schema, and a travel network with a transport-mode hierarchy."""

from __future__ import annotations

from .graph import Graph, parse_ntriples

GENES = """\
dm:bcd rdf:type rn:gene .
dm:bcd rn:inhibits_translation dm:cad .
dm:bcd rn:promotes dm:hb .
dm:bcd rn:promotes dm:kni .
dm:bcd rn:promotes dm:Kr .
dm:bcd rn:inhibits dm:tll .
dm:cad rn:promotes dm:kni .
dm:hb rn:inhibits dm:kni .
dm:hb rn:promotes dm:Kr .
dm:kni rn:inhibits dm:Kr .
dm:tll rn:regulates dm:Kr .
dm:tll rdf:type rn:gene .
"""

SCHEMA = """\
dm:maternal rdfs:subClassOf rn:gene .
dm:gap rdfs:subClassOf rn:gene .
rn:regulates rdfs:domain rn:gene .
rn:regulates rdfs:range rn:gene .
rn:inhibits rdfs:subPropertyOf rn:regulates .
rn:promotes rdfs:subPropertyOf rn:regulates .
rn:inhibits_translation rdfs:subPropertyOf rn:inhibits .
rn:inhibits_transcription rdfs:subPropertyOf rn:inhibits .
dm:kni rdf:type dm:gap .
dm:hb rdf:type dm:gap .
dm:Kr rdf:type dm:gap .
dm:tll rdf:type dm:gap .
dm:bcd rdf:type dm:maternal .
dm:cad rdf:type dm:maternal .
"""

TRAVEL = """\
Grenoble TGV Paris .
Grenoble cityIn France .
Madrid TGV Grenoble .
Madrid plane Paris .
Paris cityIn France .
Madrid cityIn Spain .
Amman cityIn Jordan .
Roma cityIn Italy .
Paris plane Amman .
Paris plane Roma .
Roma plane Amman .
TGV sp train .
plane sp transport .
train sp transport .
"""

GENE_QUERY = """\
SELECT ?x ?y ?z
WHERE {
  ?x rn:inhibits ?y .
  ?x rn:promotes ?z .
  ?y rn:regulates ?z .
  ?x rdf:type rn:gene .
}
"""

TRAVEL_QUERY = """\
SELECT ?city1 ?city2
WHERE {
  ?city1 (next::transport)+ ?city2 .
  ?city1 next::cityIn France .
  ?city2 next::cityIn Jordan .
}
"""

TRAVEL_QUERY_NESTED = """\
SELECT ?city1 ?city2
WHERE {
  ?city1 (next::[(next::sp)*/self::transport])+ ?city2 .
  ?city1 next::cityIn France .
  ?city2 next::cityIn Jordan .
}
"""

# {<u, s, 2>, <v, s, 4>}
TWO_TRIPLES = """\
u s 2 .
v s 4 .
"""


def genes() -> Graph:
    return parse_ntriples(GENES)


def schema() -> Graph:
    return parse_ntriples(SCHEMA)


def genes_with_schema() -> Graph:
    return parse_ntriples(GENES + SCHEMA)


def travel() -> Graph:
    return parse_ntriples(TRAVEL)


def two_triples() -> Graph:
    return parse_ntriples(TWO_TRIPLES)


def all_graphs() -> dict[str, Graph]:
    return {
        "genes": genes(),
        "schema": schema(),
        "genes+schema": genes_with_schema(),
        "travel": travel(),
        "two-triples": two_triples(),
    }
