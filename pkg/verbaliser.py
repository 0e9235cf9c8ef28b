"""
Вербализация выражений концептов и текстовые контексты IC/PC/BC
"""
import logging
from collections import deque
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Union

from models import (
    OWL_THING, RDFS_LABEL,
    And, Bottom, ConceptExpression, EntityNotFoundError, ModelConstants, Named, Not, Only, Or, Some, Top,
    VerbalisationError, local_name,
)
from ontology import Ontology
from owl_parser import SyntaxNode
from taxonomy import Taxonomy
from utils.text_utils import identifier_to_label, normalise_label

logger = logging.getLogger(__name__)

SEPARATOR = f" {ModelConstants.SEP_TOKEN} "


class ContextMode(str, Enum):
    IC = "IC"
    PC = "PC"
    BC = "BC"


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


def entity_label(onto: Ontology, iri: str, properties: Sequence[str] = (RDFS_LABEL,)) -> Optional[str]:
    """Первая метка по списку свойств, нормализованная; None если меток нет"""
    labels = onto.get_labels(iri, properties)
    return normalise_label(labels[0]) if labels else None


class Verbaliser:
    """Рекурсивная вербализация: дочерние фразы склеиваются по шаблону родительского узла"""

    def __init__(self, onto: Ontology, properties: Sequence[str] = (RDFS_LABEL,)):
        self.onto = onto
        self.properties = tuple(properties)

    def concept(self, iri: str) -> str:
        label = entity_label(self.onto, iri, self.properties)
        if label is None:
            raise VerbalisationError(iri)
        return label

    def role(self, iri: str) -> str:
        label = entity_label(self.onto, iri, self.properties)
        if label is not None:
            return label
        fallback = identifier_to_label(local_name(iri))
        if not fallback:
            raise VerbalisationError(iri)
        return fallback

    def restriction(self, expr: Union[Some, Only], attached: bool) -> str:
        role = self.role(expr.role)
        filler = self.verbalise(expr.filler)
        if isinstance(expr, Only):
            return f"{role} only {filler}"
        return f"{role} {filler}" if attached else f"{role} some {filler}"

    def verbalise(self, expr: ConceptExpression) -> str:
        if isinstance(expr, Named):
            return self.concept(expr.iri)
        if isinstance(expr, Top):
            return "thing"
        if isinstance(expr, Bottom):
            return "nothing"
        if isinstance(expr, Or):
            return " or ".join(self.verbalise(op) for op in expr.operands)
        if isinstance(expr, Not):
            return f"not {self.verbalise(expr.operand)}"
        if isinstance(expr, (Some, Only)):
            return self.restriction(expr, attached=False)

        heads = [op for op in expr.operands if not isinstance(op, (Some, Only))]
        restrictions = [op for op in expr.operands if isinstance(op, (Some, Only))]
        if not restrictions:
            return " and ".join(self.verbalise(op) for op in heads)
        if not heads:
            return " and ".join(self.restriction(op, attached=False) for op in restrictions)
        head = " and ".join(self.verbalise(op) for op in heads)
        tail = " and ".join(self.restriction(op, attached=True) for op in restrictions)
        return f"{head} that {tail}"


def verbalise(tree: Union[SyntaxNode, ConceptExpression], onto: Ontology,
              properties: Sequence[str] = (RDFS_LABEL,)) -> str:
    expr = tree.to_expression() if isinstance(tree, SyntaxNode) else tree
    return Verbaliser(onto, properties).verbalise(expr)


# Контексты

def _node_label(onto: Ontology, taxonomy: Taxonomy, node: str, properties: Sequence[str]) -> Optional[str]:
    for member in sorted(taxonomy.members(node)):
        label = entity_label(onto, member, properties)
        if label is not None:
            return label
    return None


def _path(taxonomy: Taxonomy, start: str, direction: Direction) -> Iterable[str]:
    node = start
    seen = {node}
    while True:
        yield node
        step = taxonomy.parents(node) if direction == Direction.UP else taxonomy.children(node)
        step = [n for n in step if n != OWL_THING and n not in seen]
        if not step:
            return
        node = step[0]
        seen.add(node)


def _breadth_first(taxonomy: Taxonomy, start: str, direction: Direction) -> Iterable[str]:
    seen = {start}
    level = [start]
    while level:
        yield from level
        following = []
        for node in level:
            step = taxonomy.parents(node) if direction == Direction.UP else taxonomy.children(node)
            following.extend(n for n in step if n != OWL_THING and n not in seen)
            seen.update(following)
        level = sorted(set(following))


def context_text(onto: Ontology, taxonomy: Taxonomy, concept: str,
                 mode: Union[ContextMode, str] = ContextMode.IC,
                 direction: Union[Direction, str] = Direction.UP,
                 limit: int = 5, strict: bool = False,
                 properties: Sequence[str] = (RDFS_LABEL,)) -> str:
    """Текстовый контекст концепта; метки разделяются токеном <SEP>.

    Узлы без метки пропускаются с предупреждением, при strict=True вызывают ошибку.
    """
    mode = ContextMode(mode)
    direction = Direction(direction)
    if concept not in taxonomy:
        raise EntityNotFoundError(concept, "концепт")
    start = taxonomy.resolve(concept)

    if mode == ContextMode.IC:
        nodes: Iterable[str] = [concept]
    elif mode == ContextMode.PC:
        nodes = _path(taxonomy, start, direction)
    else:
        nodes = _breadth_first(taxonomy, start, direction)

    labels: List[str] = []
    for node in nodes:
        if len(labels) >= limit:
            break
        if mode == ContextMode.IC:
            label = entity_label(onto, node, properties)
        else:
            label = _node_label(onto, taxonomy, node, properties)
        if label is None:
            if strict:
                raise VerbalisationError(node)
            logger.warning(f"⚠️ Нет метки у {node}, пропущено в контексте {mode.value}")
            continue
        labels.append(label)

    return SEPARATOR.join(labels)
