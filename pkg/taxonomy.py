"""
Таксономия: ациклический граф прямых подчинений с корнем owl:Thing
"""
import logging
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from models import OWL_THING, EntityNotFoundError
from ontology import Ontology
from reasoner import SubsumptionClosure, classify, direct_subsumers

logger = logging.getLogger(__name__)


class Taxonomy:
    """Граф child -> parent над представителями классов эквивалентности.

    У каждого узла атрибут members с множеством эквивалентных концептов.
    """

    def __init__(self, graph: nx.DiGraph, representative: Dict[str, str]):
        self.graph = graph
        self.root = OWL_THING
        self._representative = representative

    def __contains__(self, iri: str) -> bool:
        return iri in self._representative or iri == self.root

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def nodes(self) -> Set[str]:
        return set(self.graph.nodes)

    @property
    def edges(self) -> Set[Tuple[str, str]]:
        return set(self.graph.edges)

    def resolve(self, iri: str) -> str:
        """Представитель узла для любого члена класса эквивалентности"""
        if iri == self.root:
            return iri
        try:
            return self._representative[iri]
        except KeyError:
            raise EntityNotFoundError(iri, "узел таксономии")

    def members(self, iri: str) -> Set[str]:
        return set(self.graph.nodes[self.resolve(iri)].get("members", {iri}))

    def parents(self, iri: str) -> List[str]:
        return sorted(self.graph.successors(self.resolve(iri)))

    def children(self, iri: str) -> List[str]:
        return sorted(self.graph.predecessors(self.resolve(iri)))

    def ancestors(self, iri: str) -> Set[str]:
        return nx.descendants(self.graph, self.resolve(iri))

    def descendants(self, iri: str) -> Set[str]:
        return nx.ancestors(self.graph, self.resolve(iri))

    def depth(self, iri: str) -> int:
        """Длина кратчайшего пути до корня"""
        return nx.shortest_path_length(self.graph, self.resolve(iri), self.root)

    def leaves(self) -> List[str]:
        return sorted(n for n in self.graph.nodes if self.graph.in_degree(n) == 0)

    def iter_edges(self) -> Iterator[Tuple[str, str]]:
        """Рёбра в детерминированном порядке (child, parent)"""
        yield from sorted(self.graph.edges)

    def to_tsv(self) -> str:
        return "".join(f"{child}\t{parent}\n" for child, parent in self.iter_edges())


def build_taxonomy(onto: Ontology, closure: Optional[SubsumptionClosure] = None) -> Taxonomy:
    """Таксономия из замыкания: рёбра к прямым надклассам, циклы свёрнуты к представителям"""
    if closure is None:
        closure = classify(onto)

    representative: Dict[str, str] = {}
    members: Dict[str, Set[str]] = {}
    for concept in sorted(onto.concepts):
        rep = closure.representative(concept)
        representative[concept] = rep
        members.setdefault(rep, set()).add(concept)

    graph = nx.DiGraph()
    graph.add_node(OWL_THING, members={OWL_THING})
    for rep, group in members.items():
        graph.add_node(rep, members=group)
    for rep in members:
        for parent in direct_subsumers(closure, rep):
            graph.add_edge(rep, parent)

    collapsed = sum(1 for group in members.values() if len(group) > 1)
    logger.debug(f"Таксономия: узлов {graph.number_of_nodes()}, рёбер {graph.number_of_edges()}, "
                 f"свёрнутых классов {collapsed}")
    return Taxonomy(graph, representative)
