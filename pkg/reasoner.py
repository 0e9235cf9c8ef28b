"""
Ризонеры: структурное замыкание заявленных подклассов и классификация EL по правилам пополнения
"""
import logging
from collections import defaultdict, deque
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from models import OWL_NOTHING, OWL_THING, Bottom, ClassAssertion, EntityNotFoundError, Named, ValidationError
from normalisation import (
    AtomicSub, ConjSub, ExistsLeft, ExistsRight, NormalisedAxiom, RoleChain, RoleSub, normalise,
)
from ontology import Ontology

logger = logging.getLogger(__name__)


class ReasonerTier(str, Enum):
    STRUCTURAL = "structural"
    EL = "el"


class SubsumptionClosure:
    """Неизменяемое отношение подчинения над именованными концептами онтологии.

    Пары (c, d) означают c ⊑ d. Отношение рефлексивно на концептах и содержит (c, ⊤)
    для каждого c; пара (c, ⊥) есть только у невыполнимых концептов.
    """

    def __init__(self, relation: Iterable[Tuple[str, str]], tier: ReasonerTier,
                 concepts: Iterable[str], version: int = 0):
        self.relation: FrozenSet[Tuple[str, str]] = frozenset(relation)
        self.tier = ReasonerTier(tier)
        self.concepts: FrozenSet[str] = frozenset(concepts)
        self.version = version

        supers: Dict[str, Set[str]] = defaultdict(set)
        subs: Dict[str, Set[str]] = defaultdict(set)
        for c, d in self.relation:
            supers[c].add(d)
            subs[d].add(c)
        self._supers = {c: frozenset(v) for c, v in supers.items()}
        self._subs = {d: frozenset(v) for d, v in subs.items()}
        self._unsatisfiable = frozenset(
            c for c, d in self.relation if d == OWL_NOTHING and c != OWL_THING
        )

    def __len__(self) -> int:
        return len(self.relation)

    def __contains__(self, pair: Tuple[str, str]) -> bool:
        return pair in self.relation

    def __repr__(self) -> str:
        return f"SubsumptionClosure(tier={self.tier.value}, concepts={len(self.concepts)}, pairs={len(self.relation)})"

    def require(self, iri: str) -> None:
        if iri not in self.concepts and iri not in (OWL_THING, OWL_NOTHING):
            raise EntityNotFoundError(iri, "концепт")

    def entails(self, c: str, d: str) -> bool:
        self.require(c)
        self.require(d)
        if c == d or d == OWL_THING or c == OWL_NOTHING:
            return True
        return (c, d) in self.relation or (c, OWL_NOTHING) in self.relation

    def subsumers(self, c: str) -> FrozenSet[str]:
        """Все d ≠ c с c ⊑ d (включая ⊤)"""
        self.require(c)
        return self._supers.get(c, frozenset()) - {c}

    def subsumees(self, c: str) -> FrozenSet[str]:
        """Все именованные e ≠ c с e ⊑ c"""
        self.require(c)
        if c == OWL_THING:
            return self.concepts - {c}
        return self._subs.get(c, frozenset()) - {c}

    def equivalents(self, c: str) -> FrozenSet[str]:
        """Класс эквивалентности c (сам c включён)"""
        self.require(c)
        return frozenset({c} | {d for d in self._supers.get(c, ()) if (d, c) in self.relation})

    def representative(self, c: str) -> str:
        """Лексикографически наименьший член класса эквивалентности"""
        return min(self.equivalents(c))

    def is_unsatisfiable(self, c: str) -> bool:
        self.require(c)
        return c == OWL_NOTHING or (c, OWL_NOTHING) in self.relation

    @property
    def unsatisfiable(self) -> FrozenSet[str]:
        return self._unsatisfiable

    def restrict(self, concepts: Iterable[str]) -> Set[Tuple[str, str]]:
        """Пары отношения, у которых обе стороны лежат в заданном множестве"""
        keep = set(concepts)
        return {(c, d) for c, d in self.relation if c in keep and d in keep}


# Структурный ризонер

def told_closure(onto: Ontology) -> SubsumptionClosure:
    """Рефлексивно-транзитивное замыкание заявленных рёбер между именованными концептами"""
    graph = nx.DiGraph()
    graph.add_nodes_from(onto.concepts)
    for concept in onto.concepts:
        for parent in onto.asserted_parents(concept):
            if isinstance(parent, Named):
                graph.add_edge(concept, parent.iri)

    relation = set()
    for concept in onto.concepts:
        relation.add((concept, concept))
        relation.add((concept, OWL_THING))
        relation.update((concept, ancestor) for ancestor in nx.descendants(graph, concept))

    closure = SubsumptionClosure(relation, ReasonerTier.STRUCTURAL, onto.concepts, onto.version)
    logger.debug(f"Структурное замыкание: {closure!r}")
    return closure


# Классификация EL

class ELSaturation:
    """Насыщение правилами пополнения EL над нормализованными аксиомами.

    Роли-иерархия учитывается явным добавлением связей по всем надролям,
    поэтому остальные правила сравнивают роли на точное совпадение.
    """

    def __init__(self, axioms: Iterable[NormalisedAxiom], concepts: Iterable[str] = ()):
        self.atomic: Dict[str, List[str]] = defaultdict(list)
        self.conj: Dict[str, List[Tuple[str, str]]] = defaultdict(list)
        self.exists_right: Dict[str, List[Tuple[str, str]]] = defaultdict(list)
        self.exists_left: Dict[str, List[Tuple[str, str]]] = defaultdict(list)
        self.exists_left_by_role: Dict[Tuple[str, str], List[str]] = defaultdict(list)
        self.role_sups: Dict[str, List[str]] = defaultdict(list)
        self.chain_first: Dict[str, List[Tuple[str, str]]] = defaultdict(list)
        self.chain_second: Dict[str, List[Tuple[str, str]]] = defaultdict(list)

        contexts: Set[str] = set(concepts) | {OWL_THING}
        for ax in axioms:
            if isinstance(ax, AtomicSub):
                self.atomic[ax.sub].append(ax.sup)
                contexts.update((ax.sub, ax.sup))
            elif isinstance(ax, ConjSub):
                self.conj[ax.left].append((ax.right, ax.sup))
                if ax.left != ax.right:
                    self.conj[ax.right].append((ax.left, ax.sup))
                contexts.update((ax.left, ax.right, ax.sup))
            elif isinstance(ax, ExistsRight):
                self.exists_right[ax.sub].append((ax.role, ax.filler))
                contexts.update((ax.sub, ax.filler))
            elif isinstance(ax, ExistsLeft):
                self.exists_left[ax.filler].append((ax.role, ax.sup))
                self.exists_left_by_role[(ax.role, ax.filler)].append(ax.sup)
                contexts.update((ax.filler, ax.sup))
            elif isinstance(ax, RoleSub):
                self.role_sups[ax.sub].append(ax.sup)
            elif isinstance(ax, RoleChain):
                self.chain_first[ax.first].append((ax.second, ax.sup))
                self.chain_second[ax.second].append((ax.first, ax.sup))

        contexts.discard(OWL_NOTHING)
        self.contexts = contexts
        self.subsumers: Dict[str, Set[str]] = {c: set() for c in contexts}
        self.out_links: Dict[str, Dict[str, Set[str]]] = defaultdict(lambda: defaultdict(set))
        self.in_links: Dict[str, Dict[str, Set[str]]] = defaultdict(lambda: defaultdict(set))
        self._queue: deque = deque()
        self.saturated = False

    def _add_subsumer(self, x: str, a: str):
        if a in self.subsumers[x]:
            return
        self.subsumers[x].add(a)
        queue = self._queue

        for b in self.atomic.get(a, ()):
            queue.append(("sub", x, b))
        for other, b in self.conj.get(a, ()):
            if other in self.subsumers[x]:
                queue.append(("sub", x, b))
        for role, filler in self.exists_right.get(a, ()):
            queue.append(("link", x, role, filler))
        for role, d in self.exists_left.get(a, ()):
            for w in self.in_links[x].get(role, ()):
                queue.append(("sub", w, d))
        if a == OWL_NOTHING:
            for preds in self.in_links[x].values():
                for w in preds:
                    queue.append(("sub", w, OWL_NOTHING))

    def _add_link(self, x: str, role: str, y: str):
        if y in self.out_links[x][role]:
            return
        self.out_links[x][role].add(y)
        self.in_links[y][role].add(x)
        queue = self._queue

        for a in self.subsumers[y]:
            for d in self.exists_left_by_role.get((role, a), ()):
                queue.append(("sub", x, d))
        if OWL_NOTHING in self.subsumers[y]:
            queue.append(("sub", x, OWL_NOTHING))
        for sup in self.role_sups.get(role, ()):
            queue.append(("link", x, sup, y))
        for second, sup in self.chain_first.get(role, ()):
            for z in list(self.out_links[y].get(second, ())):
                queue.append(("link", x, sup, z))
        for first, sup in self.chain_second.get(role, ()):
            for w in list(self.in_links[x].get(first, ())):
                queue.append(("link", w, sup, y))

    def saturate(self) -> "ELSaturation":
        if self.saturated:
            return self
        for context in self.contexts:
            self._queue.append(("sub", context, context))
            self._queue.append(("sub", context, OWL_THING))

        steps = 0
        while self._queue:
            item = self._queue.popleft()
            steps += 1
            if item[0] == "sub":
                self._add_subsumer(item[1], item[2])
            else:
                self._add_link(item[1], item[2], item[3])

        self.saturated = True
        logger.debug(f"Насыщение EL: контекстов {len(self.contexts)}, шагов {steps}")
        return self


def el_classify(onto: Ontology, strict: bool = True) -> SubsumptionClosure:
    """Классификация EL: нормализация, насыщение, ограничение на исходную сигнатуру.

    NonELError из нормализации пробрасывается при strict=True.
    """
    normalised = normalise(onto, strict=strict)
    saturation = ELSaturation(normalised.axioms, onto.concepts).saturate()

    keep = onto.concepts | {OWL_THING, OWL_NOTHING}
    relation = set()
    for concept in onto.concepts:
        subsumers = saturation.subsumers[concept]
        # невыполнимый концепт подчинён всему
        relation.update((concept, d) for d in (keep if OWL_NOTHING in subsumers else subsumers) if d in keep)
    if OWL_NOTHING in saturation.subsumers[OWL_THING]:
        relation.add((OWL_THING, OWL_NOTHING))

    closure = SubsumptionClosure(relation, ReasonerTier.EL, onto.concepts, onto.version)
    if closure.unsatisfiable:
        logger.warning(f"⚠️ Невыполнимых концептов: {len(closure.unsatisfiable)}")
    logger.debug(f"Замыкание EL: {closure!r}")
    return closure


def classify(onto: Ontology, tier: str = ReasonerTier.STRUCTURAL, strict: bool = True) -> SubsumptionClosure:
    """Замыкание выбранного уровня с кэшированием до следующей мутации онтологии"""
    tier = ReasonerTier(tier)
    key = ("closure", tier, strict)
    cached = onto.cache.get(key)
    if cached is not None and cached.version == onto.version:
        return cached

    closure = told_closure(onto) if tier == ReasonerTier.STRUCTURAL else el_classify(onto, strict)
    onto.cache[key] = closure
    return closure


def is_consistent(onto: Ontology, closure: Optional[SubsumptionClosure] = None) -> bool:
    """Онтология противоречива, если ⊤ ⊑ ⊥ или индивид отнесён к невыполнимому концепту"""
    closure = closure or classify(onto, ReasonerTier.EL, strict=False)
    if (OWL_THING, OWL_NOTHING) in closure.relation:
        return False
    for axiom in onto.get_axioms(ClassAssertion):
        if isinstance(axiom.concept, Bottom):
            return False
        if isinstance(axiom.concept, Named) and closure.is_unsatisfiable(axiom.concept.iri):
            return False
    return True


# Запросы

def entails_subsumption(closure: SubsumptionClosure, c: str, d: str) -> bool:
    return closure.entails(c, d)


def direct_subsumers(closure: SubsumptionClosure, c: str) -> Set[str]:
    """Прямые надклассы c; классы эквивалентности сворачиваются к представителям"""
    closure.require(c)
    if c == OWL_THING:
        return set()
    if c == OWL_NOTHING:
        raise ValidationError("прямые надклассы ⊥ не определены")

    strict_supers = {
        d for d in closure.subsumers(c)
        if d not in (OWL_THING, OWL_NOTHING) and (d, c) not in closure.relation
    }
    candidates = {closure.representative(d) for d in strict_supers}

    direct = set()
    for d in candidates:
        below = any(
            e != d and (e, d) in closure.relation and (d, e) not in closure.relation
            for e in candidates
        )
        if not below:
            direct.add(d)
    return direct or {OWL_THING}


DisjointnessCriterion = Callable[[SubsumptionClosure, str, str], bool]


def incomparable_without_common_subsumee(closure: SubsumptionClosure, c: str, d: str) -> bool:
    """c и d несравнимы и не имеют общего выполнимого именованного подкласса"""
    if c == d or closure.entails(c, d) or closure.entails(d, c):
        return False
    unsatisfiable = closure.unsatisfiable
    common = (closure.subsumees(c) & closure.subsumees(d)) - unsatisfiable - {OWL_NOTHING}
    return not common


def no_shared_direct_parent(closure: SubsumptionClosure, c: str, d: str) -> bool:
    """Вариант критерия: дополнительно не считаются непересекающимися братья по прямому родителю"""
    if not incomparable_without_common_subsumee(closure, c, d):
        return False
    shared = (direct_subsumers(closure, c) & direct_subsumers(closure, d)) - {OWL_THING}
    return not shared


DISJOINTNESS_CRITERIA: Dict[str, DisjointnessCriterion] = {
    "default": incomparable_without_common_subsumee,
    "siblings": no_shared_direct_parent,
}


def assumed_disjoint(closure: SubsumptionClosure, c: str, d: str,
                     criterion: Optional[DisjointnessCriterion] = None) -> bool:
    closure.require(c)
    closure.require(d)
    if c == d:
        return False
    return (criterion or incomparable_without_common_subsumee)(closure, c, d)
