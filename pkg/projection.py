"""
Проекция онтологии в простой RDF-граф без пустых узлов
"""
import logging
from itertools import permutations
from typing import Iterable, Iterator, List, Set

from rdflib import Graph, URIRef

from models import (
    RDF_TYPE, RDFS_SUBCLASS_OF,
    Axiom, ClassAssertion, EquivalentClasses, Named, ObjectPropertyAssertion, Only, Some, SubClassOf,
    Triple,
)
from ontology import Ontology

logger = logging.getLogger(__name__)


def _expand(axiom: Axiom) -> Iterator[Axiom]:
    if isinstance(axiom, EquivalentClasses):
        for x, y in permutations(axiom.operands, 2):
            yield SubClassOf(x, y)
    else:
        yield axiom


def project_axiom(axiom: Axiom, only_taxonomy: bool = False) -> List[Triple]:
    """Тройки, которые даёт одна аксиома; не подходящие ни под одно правило не дают ничего"""
    triples = []
    for ax in _expand(axiom):
        if isinstance(ax, SubClassOf) and isinstance(ax.sub, Named):
            if isinstance(ax.sup, Named):
                triples.append(Triple(ax.sub.iri, RDFS_SUBCLASS_OF, ax.sup.iri))
            elif (not only_taxonomy and isinstance(ax.sup, (Some, Only))
                  and isinstance(ax.sup.filler, Named)):
                triples.append(Triple(ax.sub.iri, ax.sup.role, ax.sup.filler.iri))
        elif only_taxonomy:
            continue
        elif isinstance(ax, ClassAssertion) and isinstance(ax.concept, Named):
            triples.append(Triple(ax.individual, RDF_TYPE, ax.concept.iri))
        elif isinstance(ax, ObjectPropertyAssertion):
            triples.append(Triple(ax.subject, ax.role, ax.object))
    return triples


def project(onto: Ontology, only_taxonomy: bool = False) -> Set[Triple]:
    """Множество троек по всем аксиомам онтологии"""
    triples: Set[Triple] = set()
    for axiom in onto.axioms:
        triples.update(project_axiom(axiom, only_taxonomy))
    logger.debug(f"Проекция: аксиом {len(onto)}, троек {len(triples)}")
    return triples


def to_graph(triples: Iterable[Triple]) -> Graph:
    graph = Graph()
    for s, p, o in triples:
        graph.add((URIRef(s), URIRef(p), URIRef(o)))
    return graph


def to_ntriples(triples: Iterable[Triple]) -> str:
    """N-Triples, строки отсортированы для побайтовой воспроизводимости"""
    lines = sorted(
        f"{URIRef(s).n3()} {URIRef(p).n3()} {URIRef(o).n3()} .\n"
        for s, p, o in set(triples)
    )
    return "".join(lines)
