"""
Оценка сопоставления: глобальные метрики, ранжирование, разбиения эталона,
кандидаты для ранжирования и построение эталона подчинений
"""
import logging
from dataclasses import asdict, dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from models import (
    OWL_THING, RDFS_LABEL,
    EntityNotFoundError, Mapping, MetricReport, ModelConstants, ReferenceSplit, Relation, SplitSetting,
    ValidationError,
)
from matcher import InvertedIndex, build_index, concept_labels, rank_candidates
from ontology import Ontology
from pruning import prune
from reasoner import SubsumptionClosure, classify
from taxonomy import Taxonomy

logger = logging.getLogger(__name__)


def _f_score(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0


def global_metrics(pred: Iterable[Mapping], ref: Iterable[Mapping],
                   ignored: Iterable[Mapping] = ()) -> MetricReport:
    """Precision, Recall и F по (source, target, relation); ignored исключаются с обеих сторон"""
    ignored = set(ignored)
    pred_set = set(pred) - ignored
    ref_set = set(ref) - ignored
    hits = len(pred_set & ref_set)

    report = MetricReport()
    if pred_set:
        report.precision = hits / len(pred_set)
    else:
        report.warnings.append("precision: пустое множество предсказаний, принято 0")
    if ref_set:
        report.recall = hits / len(ref_set)
    else:
        report.warnings.append("recall: пустой эталон, принято 0")
    report.f_score = _f_score(report.precision, report.recall)

    for warning in report.warnings:
        logger.warning(f"⚠️ {warning}")
    return report


def gold_rank(gold: str, candidates: Sequence[str], case: int = 0) -> int:
    occurrences = [i for i, c in enumerate(candidates) if c == gold]
    if len(occurrences) != 1:
        problem = "отсутствует" if not occurrences else f"встречается {len(occurrences)} раз"
        raise ValidationError(f"кейс {case}: эталонная цель {gold} {problem} в списке кандидатов")
    return occurrences[0] + 1


def metrics_from_ranks(ranks: Sequence[int], hits_at: Sequence[int] = ModelConstants.DEFAULT_HITS_AT) -> MetricReport:
    report = MetricReport()
    if not len(ranks):
        report.mrr = 0.0
        report.hits_at = {k: 0.0 for k in hits_at}
        report.warnings.append("нет кейсов ранжирования")
        return report
    ranks = np.asarray(ranks, dtype=float)
    report.mrr = float(np.mean(1.0 / ranks))
    report.hits_at = {int(k): float(np.mean(ranks <= k)) for k in sorted(hits_at)}
    return report


def ranking_metrics(cases: Iterable[Tuple[str, Sequence[str]]],
                    hits_at: Sequence[int] = ModelConstants.DEFAULT_HITS_AT) -> MetricReport:
    """MRR и Hits@K по кейсам (эталонная цель, ранжированный список кандидатов); ранги с 1"""
    ranks = [gold_rank(gold, candidates, i) for i, (gold, candidates) in enumerate(cases)]
    return metrics_from_ranks(ranks, hits_at)


def rank_by_scores(candidates: Sequence[str], scores: Sequence[float]) -> List[str]:
    """Сортировка по убыванию оценки; при равенстве сохраняется исходный порядок"""
    if len(candidates) != len(scores):
        raise ValidationError("число кандидатов и оценок не совпадает")
    order = np.argsort(-np.asarray(scores, dtype=float), kind="stable")
    return [candidates[i] for i in order]


# Разбиения

def split_references(refs: Iterable[Mapping], setting=SplitSetting.UNSUPERVISED, seed: int = 42) -> ReferenceSplit:
    """Равномерное разбиение эталона под сидом; доли берутся с округлением вниз, остаток в test.

    unsupervised: 0% / 10% / 90%, semi_supervised: 20% / 10% / 70%.
    """
    setting = SplitSetting(setting)
    ordered = sorted(set(refs), key=lambda m: m.key)
    n = len(ordered)
    if n < ModelConstants.MIN_REFERENCES_FOR_SPLIT:
        raise ValidationError(f"для разбиения нужно минимум {ModelConstants.MIN_REFERENCES_FOR_SPLIT} маппингов, получено {n}")

    permutation = np.random.default_rng(seed).permutation(n)
    shuffled = [ordered[i] for i in permutation]

    n_train = n * 2 // 10 if setting == SplitSetting.SEMI_SUPERVISED else 0
    n_val = n // 10
    split = ReferenceSplit(
        train=shuffled[:n_train],
        validation=shuffled[n_train:n_train + n_val],
        test=shuffled[n_train + n_val:],
        setting=setting,
    )
    logger.info(f"Разбиение {setting.value}: train/val/test = {split.sizes}")
    return split


# Кандидаты для ранжирования

def generate_ranking_candidates(ref: Mapping, tgt: Ontology, n: int = ModelConstants.DEFAULT_RANKING_CANDIDATES,
                                seed: int = 42, closure: Optional[SubsumptionClosure] = None,
                                strategy: str = "random", index: Optional[InvertedIndex] = None,
                                properties: Sequence[str] = (RDFS_LABEL,)) -> List[str]:
    """n целевых IRI: эталон ровно один раз и n-1 негативов без повторов.

    Негативы не включают эталон и эквивалентные ему концепты. Стратегия index берёт
    сначала ближайшие по индексу концепты, остаток добирается случайно.
    """
    if n < 2:
        raise ValidationError(f"n должно быть >= 2, получено {n}")
    if strategy not in ("random", "index"):
        raise ValidationError(f"неизвестная стратегия негативов: {strategy}")
    if ref.target not in tgt.concepts:
        raise EntityNotFoundError(ref.target, "целевой концепт")
    if len(tgt.concepts) < n:
        raise ValidationError(f"в целевой онтологии {len(tgt.concepts)} концептов, нужно минимум {n}")

    closure = closure or classify(tgt)
    excluded = set(closure.equivalents(ref.target)) | {ref.target}
    pool = sorted(tgt.concepts - excluded)
    if len(pool) < n - 1:
        raise ValidationError(f"после исключения эквивалентов осталось {len(pool)} негативов, нужно {n - 1}")

    rng = np.random.default_rng(seed)
    negatives: List[str] = []
    if strategy == "index":
        index = index or build_index(tgt, properties)
        labels = concept_labels(tgt, ref.target, properties)
        for iri, _ in rank_candidates(index, labels):
            if iri not in excluded and len(negatives) < n - 1:
                negatives.append(iri)

    remaining = [iri for iri in pool if iri not in set(negatives)]
    need = n - 1 - len(negatives)
    if need:
        picks = rng.choice(len(remaining), size=need, replace=False)
        negatives.extend(remaining[i] for i in sorted(picks))

    candidates = [ref.target] + negatives
    return [candidates[i] for i in rng.permutation(len(candidates))]


def generate_ranking_cases(refs: Iterable[Mapping], tgt: Ontology, n: int = ModelConstants.DEFAULT_RANKING_CANDIDATES,
                           seed: int = 42, strategy: str = "random",
                           properties: Sequence[str] = (RDFS_LABEL,)) -> List[Tuple[Mapping, List[str]]]:
    """Кандидаты для каждого эталонного маппинга; сид кейса выводится из общего сида и номера"""
    closure = classify(tgt)
    index = build_index(tgt, properties) if strategy == "index" else None
    cases = []
    for i, ref in enumerate(sorted(set(refs), key=lambda m: m.key)):
        candidates = generate_ranking_candidates(
            ref, tgt, n, seed=[seed, i], closure=closure, strategy=strategy, index=index, properties=properties,
        )
        cases.append((ref, candidates))
    logger.info(f"Сгенерировано кейсов ранжирования: {len(cases)} по {n} кандидатов")
    return cases


# Эталон подчинений

@dataclass
class SubsumptionDatasetReport:
    equivalence_refs: int = 0
    subsumption_refs: int = 0
    root_only: int = 0
    deleted_targets: int = 0
    dropped_deleted_target: int = 0

    def to_report_text(self) -> str:
        return "".join(f"{key}: {value}\n" for key, value in asdict(self).items())


class SubsumptionDataset(NamedTuple):
    references: List[Mapping]
    ontology: Ontology
    report: SubsumptionDatasetReport


def build_subsumption_dataset(equiv_refs: Iterable[Mapping], tgt: Ontology,
                              tgt_taxonomy: Taxonomy) -> SubsumptionDataset:
    """Из эквивалентностей c ≡ d строятся c ⊑ e для прямых родителей e концепта d, затем d удаляются"""
    refs = sorted(set(equiv_refs), key=lambda m: m.key)
    report = SubsumptionDatasetReport(equivalence_refs=len(refs))

    emitted: List[Mapping] = []
    deleted = set()
    for ref in refs:
        if ref.target not in tgt.concepts:
            raise EntityNotFoundError(ref.target, "целевой концепт")
        parents = [p for p in tgt_taxonomy.parents(ref.target) if p != OWL_THING]
        if not parents:
            report.root_only += 1
            continue
        emitted.extend(Mapping(ref.source, parent, Relation.SUBSUMPTION, 1.0) for parent in parents)
        deleted.add(ref.target)

    pruned = prune(tgt, deleted)
    kept = [m for m in dict.fromkeys(emitted) if m.target not in deleted]

    report.deleted_targets = len(deleted)
    report.dropped_deleted_target = len(dict.fromkeys(emitted)) - len(kept)
    report.subsumption_refs = len(kept)
    logger.info(f"Эталон подчинений: {report.subsumption_refs} маппингов, удалено целей {report.deleted_targets}, "
                f"без родителя {report.root_only}")
    return SubsumptionDataset(kept, pruned, report)
