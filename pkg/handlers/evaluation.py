"""
Подкоманды оценки: evaluate, split, subsumption-dataset
"""
import argparse
import logging
import os

from config import RunConfig
from evaluation import build_subsumption_dataset, global_metrics, ranking_metrics, split_references
from models import MetricReport, Relation, ValidationError
from owl_parser import serialize_ontology
from reasoner import ReasonerTier, classify
from taxonomy import build_taxonomy
from utils.mapping_io import mappings_to_tsv, read_ranking_cases
from utils.run_report import RunReport

from handlers.common import echo, load, load_mappings, write_output

logger = logging.getLogger(__name__)


def handle_evaluate(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    if not args.pred and not args.ranked:
        raise ValidationError("нужен --pred и/или --ranked")
    relation = Relation(args.relation)
    refs = load_mappings(args.ref, report, relation)
    ignored = [m for path in args.ignore or [] for m in load_mappings(path, report, relation)]

    metrics = MetricReport()
    if args.pred:
        metrics = global_metrics(load_mappings(args.pred, report, relation), refs, ignored)
    if args.ranked:
        report.add_input(args.ranked)
        cases = [(ref.target, candidates) for ref, candidates in read_ranking_cases(args.ranked, relation)]
        ranking = ranking_metrics(cases, config.evaluation.hits_at)
        metrics.mrr = ranking.mrr
        metrics.hits_at = ranking.hits_at
        metrics.warnings.extend(ranking.warnings)

    text = metrics.to_report_text()
    write_output(args.out, text, report, args)
    report.summary.update(precision=metrics.precision, recall=metrics.recall, f_score=metrics.f_score,
                          mrr=metrics.mrr, hits_at=metrics.hits_at)


def handle_split(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    config.override("evaluation", setting=args.setting)
    refs = load_mappings(args.ref, report)
    split = split_references(refs, config.evaluation.setting, config.seed)

    os.makedirs(args.out_dir, exist_ok=True)
    for name, part in (("train", split.train), ("val", split.validation), ("test", split.test)):
        write_output(os.path.join(args.out_dir, f"{name}.tsv"), mappings_to_tsv(part), report, args)
    report.summary.update(sizes=list(split.sizes))
    echo(args, f"✅ Разбиение {split.setting.value}: train/val/test = {split.sizes}")


def handle_subsumption_dataset(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    refs = load_mappings(args.ref, report)
    tgt = load(args.target, report)
    taxonomy = build_taxonomy(tgt, classify(tgt, args.reasoner, strict=False))

    dataset = build_subsumption_dataset(refs, tgt, taxonomy)
    write_output(args.out_ref, mappings_to_tsv(dataset.references), report, args)
    write_output(args.out_onto, serialize_ontology(dataset.ontology), report, args)
    report.summary.update(vars(dataset.report))
    echo(args, dataset.report.to_report_text().rstrip("\n"))


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("evaluate", parents=[common], help="метрики сопоставления и ранжирования")
    p.add_argument("--pred")
    p.add_argument("--ref", required=True)
    p.add_argument("--ignore", action="append", help="маппинги, исключаемые из подсчёта (можно несколько)")
    p.add_argument("--ranked", help="TSV кейсов с ранжированными кандидатами")
    p.add_argument("--relation", choices=[r.value for r in Relation], default=Relation.EQUIVALENCE.value)
    p.add_argument("--out")
    p.set_defaults(handler=handle_evaluate)

    p = subparsers.add_parser("split", parents=[common], help="разбиение эталона train/val/test")
    p.add_argument("--ref", required=True)
    p.add_argument("--setting", choices=["unsupervised", "semi_supervised"])
    p.add_argument("--out-dir", required=True)
    p.set_defaults(handler=handle_split)

    p = subparsers.add_parser("subsumption-dataset", parents=[common], help="эталон подчинений из эквивалентностей")
    p.add_argument("--ref", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--reasoner", choices=[t.value for t in ReasonerTier], default=ReasonerTier.STRUCTURAL.value)
    p.add_argument("--out-ref", required=True)
    p.add_argument("--out-onto", required=True)
    p.set_defaults(handler=handle_subsumption_dataset)
