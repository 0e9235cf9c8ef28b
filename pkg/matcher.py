"""
Лексическое сопоставление онтологий: инвертированный индекс, отбор кандидатов, оценка,
расширение по локальности и ремонт конфликтов
"""
import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import Levenshtein
import networkx as nx
from nltk.tokenize import RegexpTokenizer

from config import MatcherConfig
from models import OWL_THING, RDFS_LABEL, Mapping, Named, Relation, ValidationError
from ontology import Ontology
from reasoner import DisjointnessCriterion, SubsumptionClosure, assumed_disjoint, classify
from utils.text_utils import normalise_label

logger = logging.getLogger(__name__)


class Tokeniser:
    """Слова (буквы и цифры любого алфавита) в нижнем регистре плюс символьные триграммы каждого слова"""

    def __init__(self, ngram: int = 3):
        self.ngram = ngram
        self._words = RegexpTokenizer(r"[^\W_]+")

    def words(self, text: str) -> List[str]:
        return self._words.tokenize(normalise_label(text))

    def tokens(self, text: str) -> Set[str]:
        result: Set[str] = set()
        for word in self.words(text):
            result.add(word)
            n = self.ngram
            result.update(word[i:i + n] for i in range(len(word) - n + 1))
        return result

    def tokens_of(self, labels: Iterable[str]) -> Set[str]:
        result: Set[str] = set()
        for label in labels:
            result |= self.tokens(label)
        return result


class InvertedIndex:
    """Постинги token -> концепты; после построения не меняется"""

    def __init__(self, tokeniser: Optional[Tokeniser] = None):
        self.tokeniser = tokeniser or Tokeniser()
        self.postings: Dict[str, Set[str]] = defaultdict(set)
        self.documents: Set[str] = set()

    def __len__(self) -> int:
        return len(self.documents)

    def add(self, iri: str, labels: Iterable[str]) -> None:
        tokens = self.tokeniser.tokens_of(labels)
        if not tokens:
            return
        self.documents.add(iri)
        for token in tokens:
            self.postings[token].add(iri)

    @property
    def token_stats(self) -> Dict[str, int]:
        return {token: len(iris) for token, iris in self.postings.items()}

    def idf(self, token: str) -> float:
        df = len(self.postings.get(token, ()))
        return math.log(len(self.documents) / df) if df else 0.0

    def pool(self, labels: Iterable[str]) -> Dict[str, float]:
        """Все концепты хотя бы с одним общим токеном и их сумма idf"""
        scores: Dict[str, float] = defaultdict(float)
        for token in self.tokeniser.tokens_of(labels):
            iris = self.postings.get(token)
            if not iris:
                continue
            weight = self.idf(token)
            for iri in iris:
                scores[iri] += weight
        return dict(scores)


def concept_labels(onto: Ontology, iri: str, properties: Sequence[str] = (RDFS_LABEL,)) -> List[str]:
    """Нормализованные метки без повторов, в порядке добавления"""
    labels: List[str] = []
    for label in onto.get_labels(iri, properties):
        label = normalise_label(label)
        if label and label not in labels:
            labels.append(label)
    return labels


def build_index(onto: Ontology, properties: Sequence[str] = (RDFS_LABEL,),
                tokeniser: Optional[Tokeniser] = None) -> InvertedIndex:
    index = InvertedIndex(tokeniser)
    for iri in sorted(onto.concepts):
        index.add(iri, concept_labels(onto, iri, properties))
    logger.debug(f"Индекс: документов {len(index)}, токенов {len(index.postings)}")
    return index


def rank_candidates(index: InvertedIndex, source_labels: Iterable[str]) -> List[Tuple[str, float]]:
    """Весь пул кандидатов по убыванию суммы idf, равные по IRI"""
    return sorted(index.pool(source_labels).items(), key=lambda item: (-item[1], item[0]))


def select_candidates(index: InvertedIndex, source_labels: Iterable[str], k: int) -> List[str]:
    if k < 1:
        raise ValidationError(f"k должно быть >= 1, получено {k}")
    return [iri for iri, _ in rank_candidates(index, source_labels)[:k]]


def lexical_score(labels_c: Sequence[str], labels_d: Sequence[str]) -> float:
    """Максимум нормализованного редакционного сходства по парам меток"""
    if not labels_c or not labels_d:
        raise ValidationError("для оценки нужны непустые списки меток")
    best = 0.0
    for x in map(normalise_label, labels_c):
        for y in map(normalise_label, labels_d):
            if x == y:
                return 1.0
            longest = max(len(x), len(y))
            best = max(best, 1.0 - Levenshtein.distance(x, y) / longest)
    return best


# Расширение и ремонт

def _named_parents(onto: Ontology, iri: str) -> List[str]:
    return sorted(p.iri for p in onto.asserted_parents(iri) if isinstance(p, Named) and p.iri != OWL_THING)


def _named_children(onto: Ontology, iri: str) -> List[str]:
    return sorted(onto.asserted_children(iri))


def extend(mappings: List[Mapping], src: Ontology, tgt: Ontology, kappa: float,
           properties: Sequence[str] = (RDFS_LABEL,)) -> List[Mapping]:
    """Итеративное расширение: пары родителей и пары детей принятых маппингов"""
    result = list(mappings)
    scored: Set[Tuple[str, str]] = {(m.source, m.target) for m in mappings}
    frontier = [m for m in mappings if m.source in src.concepts and m.target in tgt.concepts]
    rounds = 0

    while frontier:
        rounds += 1
        accepted = []
        for m in frontier:
            pairs = [
                (c, d)
                for neighbours in (
                    (_named_parents(src, m.source), _named_parents(tgt, m.target)),
                    (_named_children(src, m.source), _named_children(tgt, m.target)),
                )
                for c in neighbours[0] for d in neighbours[1]
            ]
            for c, d in pairs:
                if (c, d) in scored:
                    continue
                scored.add((c, d))
                labels_c = concept_labels(src, c, properties)
                labels_d = concept_labels(tgt, d, properties)
                if not labels_c or not labels_d:
                    continue
                score = lexical_score(labels_c, labels_d)
                if score >= kappa:
                    accepted.append(Mapping(c, d, m.relation, score))
        result.extend(accepted)
        frontier = accepted

    added = len(result) - len(mappings)
    if added:
        logger.info(f"Расширение: добавлено маппингов {added} за {rounds} итераций")
    return result


class ConflictChecker:
    """Конфликт: c1 ⊑ c2 в источнике при предполагаемой непересекаемости d1, d2 в цели, и наоборот"""

    def __init__(self, src_closure: SubsumptionClosure, tgt_closure: SubsumptionClosure,
                 criterion: Optional[DisjointnessCriterion] = None):
        self.src = src_closure
        self.tgt = tgt_closure
        self.criterion = criterion
        self._disjoint: Dict[Tuple[str, str, str], bool] = {}

    def known(self, m: Mapping) -> bool:
        return m.source in self.src.concepts and m.target in self.tgt.concepts

    def _is_disjoint(self, side: str, closure: SubsumptionClosure, a: str, b: str) -> bool:
        key = (side, min(a, b), max(a, b))
        if key not in self._disjoint:
            self._disjoint[key] = assumed_disjoint(closure, a, b, self.criterion)
        return self._disjoint[key]

    def _one_way(self, m1: Mapping, m2: Mapping) -> bool:
        if self.src.entails(m1.source, m2.source) and self._is_disjoint("tgt", self.tgt, m1.target, m2.target):
            return True
        return self.tgt.entails(m1.target, m2.target) and self._is_disjoint("src", self.src, m1.source, m2.source)

    def conflicts(self, m1: Mapping, m2: Mapping) -> bool:
        if m1 == m2 or not (self.known(m1) and self.known(m2)):
            return False
        return self._one_way(m1, m2) or self._one_way(m2, m1)

    def conflict_graph(self, mappings: Sequence[Mapping]) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(mappings)
        for i, m1 in enumerate(mappings):
            for m2 in mappings[i + 1:]:
                if self.conflicts(m1, m2):
                    graph.add_edge(m1, m2)
        return graph


def repair(mappings: List[Mapping], src_closure: SubsumptionClosure, tgt_closure: SubsumptionClosure,
           criterion: Optional[DisjointnessCriterion] = None) -> List[Mapping]:
    """Жадное удаление: сначала маппинг с наибольшим числом конфликтов, затем с меньшей оценкой"""
    unique = list(dict.fromkeys(mappings))
    checker = ConflictChecker(src_closure, tgt_closure, criterion)
    graph = checker.conflict_graph(unique)

    removed = []
    while graph.number_of_edges():
        victim = min(
            (m for m in graph.nodes if graph.degree(m) > 0),
            key=lambda m: (-graph.degree(m), m.score, m.source, m.target),
        )
        graph.remove_node(victim)
        removed.append(victim)

    if removed:
        logger.info(f"Ремонт: удалено маппингов {len(removed)}")
        for m in removed:
            logger.debug(f"Удалён конфликтный маппинг {m.source} -> {m.target} ({m.score:.6f})")
    dropped = set(removed)
    return [m for m in unique if m not in dropped]


def one_to_one(mappings: Iterable[Mapping]) -> List[Mapping]:
    """Жадный проход по убыванию оценки: каждый источник и каждая цель используются один раз"""
    used_src: Set[str] = set()
    used_tgt: Set[str] = set()
    kept = []
    for m in sort_mappings(mappings):
        if m.source in used_src or m.target in used_tgt:
            continue
        used_src.add(m.source)
        used_tgt.add(m.target)
        kept.append(m)
    return kept


def sort_mappings(mappings: Iterable[Mapping]) -> List[Mapping]:
    return sorted(mappings, key=lambda m: (-m.score, m.source, m.target))


# Конвейер

class LexicalMatcher:
    """Конвейер сопоставления с параметрами MatcherConfig"""

    def __init__(self, cfg: Optional[MatcherConfig] = None):
        self.cfg = cfg or MatcherConfig()

    def _best_for(self, src: Ontology, tgt: Ontology, index: InvertedIndex, source: str) -> List[Mapping]:
        labels = concept_labels(src, source, self.cfg.annotation_properties)
        if not labels:
            return []
        scored = []
        for target in select_candidates(index, labels, self.cfg.k):
            target_labels = concept_labels(tgt, target, self.cfg.annotation_properties)
            scored.append((target, lexical_score(labels, target_labels)))
        if not scored:
            return []
        best = max(score for _, score in scored)
        if best < self.cfg.threshold:
            return []
        return [Mapping(source, target, Relation.EQUIVALENCE, score) for target, score in scored if score == best]

    def score_all(self, src: Ontology, tgt: Ontology, index: Optional[InvertedIndex] = None) -> List[Mapping]:
        """Лучшие кандидаты с оценкой не ниже порога для каждого концепта источника"""
        index = index or build_index(tgt, self.cfg.annotation_properties)
        sources = sorted(src.concepts)
        with ThreadPoolExecutor(max_workers=self.cfg.threads) as executor:
            per_source = list(executor.map(lambda s: self._best_for(src, tgt, index, s), sources))
        return [m for group in per_source for m in group]

    def match(self, src: Ontology, tgt: Ontology,
              src_closure: Optional[SubsumptionClosure] = None,
              tgt_closure: Optional[SubsumptionClosure] = None) -> List[Mapping]:
        logger.info(f"🔎 Сопоставление: источник {len(src.concepts)} концептов, цель {len(tgt.concepts)}")
        mappings = self.score_all(src, tgt)
        logger.info(f"Отобрано маппингов с оценкой >= {self.cfg.threshold}: {len(mappings)}")

        mappings = extend(mappings, src, tgt, self.cfg.extension_threshold, self.cfg.annotation_properties)

        src_closure = src_closure or classify(src, self.cfg.reasoner, strict=False)
        tgt_closure = tgt_closure or classify(tgt, self.cfg.reasoner, strict=False)
        mappings = repair(mappings, src_closure, tgt_closure)

        if self.cfg.one_to_one:
            mappings = one_to_one(mappings)
        result = sort_mappings(mappings)
        logger.info(f"✅ Итого маппингов: {len(result)}")
        return result


def match(src: Ontology, tgt: Ontology, cfg: Optional[MatcherConfig] = None) -> List[Mapping]:
    return LexicalMatcher(cfg).match(src, tgt)


def substring_match(src: Ontology, tgt: Ontology, properties: Sequence[str] = (RDFS_LABEL,)) -> List[Mapping]:
    """Пары концептов, у которых метка одного является подстрокой метки другого"""
    target_labels = {iri: concept_labels(tgt, iri, properties) for iri in sorted(tgt.concepts)}
    found: Dict[Tuple[str, str], None] = {}
    for source in sorted(src.concepts):
        for x in concept_labels(src, source, properties):
            for target, labels in target_labels.items():
                if (source, target) in found:
                    continue
                if any(x in y or y in x for y in labels):
                    found[(source, target)] = None
    mappings = [Mapping(s, t, Relation.EQUIVALENCE, 1.0) for s, t in found]
    logger.info(f"Подстрочное сопоставление: найдено {len(mappings)}")
    return mappings
