"""
Хранилище онтологии: сигнатура, аксиомы, аннотации и индексы по IRI
"""
import logging
from collections import defaultdict
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple, Type

from models import (
    OWL_NOTHING, OWL_THING, RDFS_LABEL,
    AnnotationAssertion, Axiom, ConceptExpression, EntityNotFoundError, EquivalentClasses,
    And, Named, SubClassOf, axiom_mentions, axiom_signature, validate_axiom, validate_iri,
)

logger = logging.getLogger(__name__)


class EntityKind(str, Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"
    ANNOTATION_PROPERTY = "AnnotationProperty"


_BUILTIN_CONCEPTS = {OWL_THING, OWL_NOTHING}


class Ontology:
    """Онтология в памяти с идемпотентным добавлением аксиом"""

    def __init__(self, iri: str = "", prefixes: Optional[Dict[str, str]] = None):
        self.iri = iri
        self.prefixes: Dict[str, str] = dict(prefixes or {})

        self.concepts: Set[str] = set()
        self.roles: Set[str] = set()
        self.individuals: Set[str] = set()
        self.annotation_properties: Set[str] = set()

        # dict сохраняет порядок вставки и служит упорядоченным множеством
        self._axioms: Dict[Axiom, None] = {}
        self._annotations: Dict[str, List[Tuple[str, str, Optional[str]]]] = defaultdict(list)
        self._mentions: Dict[str, Dict[Axiom, None]] = defaultdict(dict)

        self._parents: Optional[Dict[str, Set[ConceptExpression]]] = None
        self._children: Optional[Dict[str, Set[str]]] = None
        self.cache: Dict[Any, Any] = {}
        self.version = 0

    def __len__(self) -> int:
        return len(self._axioms)

    def __contains__(self, axiom: Axiom) -> bool:
        return axiom in self._axioms

    def __repr__(self) -> str:
        return (f"Ontology({self.iri!r}, concepts={len(self.concepts)}, "
                f"roles={len(self.roles)}, axioms={len(self._axioms)})")

    @property
    def axioms(self) -> List[Axiom]:
        return list(self._axioms)

    @property
    def signature(self) -> Set[str]:
        return self.concepts | self.roles | self.individuals | self.annotation_properties

    def _touch(self):
        """Любая мутация делает производные индексы и кэши ризонера устаревшими"""
        self.version += 1
        self.cache.clear()
        self._parents = None
        self._children = None

    # Сигнатура

    def declare(self, iri: str, kind: EntityKind) -> "Ontology":
        validate_iri(iri)
        if kind == EntityKind.CLASS:
            if iri not in _BUILTIN_CONCEPTS:
                self.concepts.add(iri)
        elif kind == EntityKind.OBJECT_PROPERTY:
            self.roles.add(iri)
        elif kind == EntityKind.NAMED_INDIVIDUAL:
            self.individuals.add(iri)
        else:
            self.annotation_properties.add(iri)
        self._touch()
        return self

    def entity_kind(self, iri: str) -> Optional[EntityKind]:
        if iri in self.concepts:
            return EntityKind.CLASS
        if iri in self.roles:
            return EntityKind.OBJECT_PROPERTY
        if iri in self.individuals:
            return EntityKind.NAMED_INDIVIDUAL
        if iri in self.annotation_properties:
            return EntityKind.ANNOTATION_PROPERTY
        return None

    def drop_from_signature(self, iri: str) -> None:
        """Удаляет IRI из сигнатуры и его аннотации; используется только прунингом"""
        self.concepts.discard(iri)
        self.roles.discard(iri)
        self.individuals.discard(iri)
        self.annotation_properties.discard(iri)
        self._annotations.pop(iri, None)
        self._touch()

    # Аксиомы

    def add_axiom(self, axiom: Axiom) -> "Ontology":
        """Добавляет аксиому (повторное добавление ничего не меняет), расширяя сигнатуру"""
        validate_axiom(axiom)
        if axiom in self._axioms:
            logger.debug(f"Аксиома уже есть: {axiom}")
            return self

        self._axioms[axiom] = None
        sig = axiom_signature(axiom)
        self.concepts.update(c for c in sig.concepts if c not in _BUILTIN_CONCEPTS)
        self.roles.update(sig.roles)
        self.individuals.update(sig.individuals)
        self.annotation_properties.update(sig.annotation_properties)

        for iri in axiom_mentions(axiom):
            self._mentions[iri][axiom] = None

        if isinstance(axiom, AnnotationAssertion):
            self._annotations[axiom.subject].append((axiom.property, axiom.literal, axiom.language))

        self._touch()
        return self

    def add_axioms(self, axioms: Iterable[Axiom]) -> "Ontology":
        for axiom in axioms:
            self.add_axiom(axiom)
        return self

    def remove_axiom(self, axiom: Axiom) -> bool:
        """Удаляет аксиому; сигнатура не меняется. Возвращает, была ли аксиома"""
        if axiom not in self._axioms:
            return False

        del self._axioms[axiom]
        for iri in axiom_mentions(axiom):
            bucket = self._mentions.get(iri)
            if bucket is not None:
                bucket.pop(axiom, None)
                if not bucket:
                    del self._mentions[iri]

        if isinstance(axiom, AnnotationAssertion):
            entries = self._annotations.get(axiom.subject, [])
            entry = (axiom.property, axiom.literal, axiom.language)
            if entry in entries:
                entries.remove(entry)

        self._touch()
        return True

    def get_axioms(self, axiom_type: Optional[Type] = None) -> List[Axiom]:
        if axiom_type is None:
            return self.axioms
        return [ax for ax in self._axioms if isinstance(ax, axiom_type)]

    def axioms_mentioning(self, iri: str) -> List[Axiom]:
        return list(self._mentions.get(iri, {}))

    # Аннотации

    def labels(self, entity: str, property: str = RDFS_LABEL) -> List[str]:
        """Литералы аннотаций сущности по одному свойству в порядке добавления"""
        return [literal for prop, literal, _ in self._annotations.get(entity, []) if prop == property]

    def get_labels(self, entity: str, properties: Iterable[str] = (RDFS_LABEL,)) -> List[str]:
        """Метки по нескольким свойствам: сначала по первому свойству, затем по следующим"""
        result: List[str] = []
        for prop in properties:
            for literal in self.labels(entity, prop):
                if literal not in result:
                    result.append(literal)
        return result

    # Родители и дети

    def _build_hierarchy_index(self):
        parents: Dict[str, Set[ConceptExpression]] = defaultdict(set)
        for axiom in self._axioms:
            if isinstance(axiom, SubClassOf) and isinstance(axiom.sub, Named):
                parents[axiom.sub.iri].add(axiom.sup)
            elif isinstance(axiom, EquivalentClasses):
                for member, parent in equivalence_parent_links(axiom):
                    parents[member].add(parent)

        children: Dict[str, Set[str]] = defaultdict(set)
        for child, sups in parents.items():
            for sup in sups:
                if isinstance(sup, Named):
                    children[sup.iri].add(child)

        self._parents = parents
        self._children = children

    def _require_concept(self, iri: str):
        if iri not in self.concepts:
            raise EntityNotFoundError(iri, "концепт")

    def asserted_parents(self, concept: str) -> Set[ConceptExpression]:
        """Заявленные родители: правые части SubClassOf и конъюнкты эквивалентностей"""
        self._require_concept(concept)
        if self._parents is None:
            self._build_hierarchy_index()
        return set(self._parents.get(concept, ()))

    def asserted_children(self, concept: str) -> Set[str]:
        """Именованные концепты, у которых concept является заявленным родителем"""
        self._require_concept(concept)
        if self._children is None:
            self._build_hierarchy_index()
        return set(self._children.get(concept, ()))

    def copy(self) -> "Ontology":
        clone = Ontology(self.iri, self.prefixes)
        clone.concepts = set(self.concepts)
        clone.roles = set(self.roles)
        clone.individuals = set(self.individuals)
        clone.annotation_properties = set(self.annotation_properties)
        clone._axioms = dict(self._axioms)
        clone._annotations = defaultdict(list, {k: list(v) for k, v in self._annotations.items()})
        clone._mentions = defaultdict(dict, {k: dict(v) for k, v in self._mentions.items()})
        return clone


def equivalence_parent_links(axiom: EquivalentClasses) -> List[Tuple[str, ConceptExpression]]:
    """Пары (именованный член, родитель), которые даёт аксиома эквивалентности.

    Для C ≡ D1 ⊓ ... ⊓ Dn родителями C становятся все Di,
    для C ≡ X без пересечения берётся само X.
    """
    links = []
    for i, member in enumerate(axiom.operands):
        if not isinstance(member, Named):
            continue
        for j, other in enumerate(axiom.operands):
            if i == j or other == member:
                continue
            if isinstance(other, And):
                links.extend((member.iri, op) for op in other.operands if op != member)
            else:
                links.append((member.iri, other))
    return links
