"""
Удаление концептов из онтологии с сохранением иерархии подчинения между оставшимися
"""
import logging
from typing import Iterable, List, Set

import networkx as nx

from models import (
    OWL_THING, EntityNotFoundError, EquivalentClasses, Named, SubClassOf, ValidationError,
    expression_concepts,
)
from ontology import Ontology, equivalence_parent_links
from reasoner import told_closure

logger = logging.getLogger(__name__)


def removal_order(onto: Ontology, remove: Set[str]) -> List[str]:
    """Дети раньше родителей, при равенстве лексикографически; при циклах просто сортировка"""
    closure = told_closure(onto)
    graph = nx.DiGraph()
    graph.add_nodes_from(remove)
    graph.add_edges_from((c, d) for c, d in closure.restrict(remove) if c != d)
    try:
        return list(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible:
        logger.debug("Цикл эквивалентности среди удаляемых концептов, порядок по IRI")
        return sorted(remove)


def _bridges(result: Ontology, x: str) -> List[SubClassOf]:
    bridges: List[SubClassOf] = []
    parents = sorted(result.asserted_parents(x), key=str)
    for child in sorted(result.asserted_children(x)):
        if child == x:
            continue
        for parent in parents:
            if parent == Named(child) or x in expression_concepts(parent):
                continue
            bridges.append(SubClassOf(Named(child), parent))

    # прочие члены удаляемых эквивалентностей сохраняют своих родителей
    for axiom in result.axioms_mentioning(x):
        if not isinstance(axiom, EquivalentClasses):
            continue
        for member, parent in equivalence_parent_links(axiom):
            if member == x or parent == Named(member) or x in expression_concepts(parent):
                continue
            bridges.append(SubClassOf(Named(member), parent))
    return bridges


def prune(onto: Ontology, remove: Iterable[str]) -> Ontology:
    """Новая онтология без концептов из remove; исходная не меняется.

    Для каждого удаляемого x добавляются аксиомы child ⊑ parent по всем заявленным
    детям и родителям x (включая сложных родителей), после чего удаляются все
    аксиомы, упоминающие x, и сам x из сигнатуры.
    """
    remove = set(remove)
    if OWL_THING in remove:
        raise ValidationError("owl:Thing нельзя удалить")
    for iri in sorted(remove):
        if iri not in onto.concepts:
            raise EntityNotFoundError(iri, "концепт")

    result = onto.copy()
    if not remove:
        return result

    added = 0
    deleted = 0
    for x in removal_order(onto, remove):
        bridges = _bridges(result, x)
        for axiom in result.axioms_mentioning(x):
            result.remove_axiom(axiom)
            deleted += 1
        result.drop_from_signature(x)
        for bridge in bridges:
            if bridge not in result:
                result.add_axiom(bridge)
                added += 1

    logger.info(f"Прунинг: удалено концептов {len(remove)}, аксиом удалено {deleted}, добавлено {added}")
    return result


def prune_keep(onto: Ontology, keep: Iterable[str]) -> Ontology:
    """Обратный режим: остаются только концепты из keep"""
    keep = set(keep)
    missing = sorted(keep - onto.concepts - {OWL_THING})
    if missing:
        raise EntityNotFoundError(missing[0], "концепт")
    return prune(onto, onto.concepts - keep)
