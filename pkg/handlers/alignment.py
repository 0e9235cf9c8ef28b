"""
Подкоманды сопоставления: match, substring-match, candidates
"""
import argparse
import logging

from config import RunConfig
from matcher import LexicalMatcher, substring_match
from evaluation import generate_ranking_cases
from utils.mapping_io import mappings_to_tsv, ranking_cases_to_tsv
from utils.run_report import RunReport

from handlers.common import echo, load, load_mappings, write_output

logger = logging.getLogger(__name__)


def handle_match(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    config.override(
        "matcher",
        k=args.k, threshold=args.threshold, extension_threshold=args.kappa, reasoner=args.reasoner,
        one_to_one=True if args.one_to_one else None,
    )
    src = load(args.source, report)
    tgt = load(args.target, report)

    mappings = LexicalMatcher(config.matcher).match(src, tgt)
    write_output(args.out, mappings_to_tsv(mappings), report, args)
    report.summary.update(mappings=len(mappings))
    echo(args, f"✅ Маппингов: {len(mappings)} (λ={config.matcher.threshold}, κ={config.matcher.extension_threshold}, "
               f"k={config.matcher.k})")


def handle_substring_match(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    src = load(args.source, report)
    tgt = load(args.target, report)
    mappings = substring_match(src, tgt, config.matcher.annotation_properties)
    write_output(args.out, mappings_to_tsv(mappings), report, args)
    report.summary.update(mappings=len(mappings))
    echo(args, f"✅ Маппингов по подстрокам: {len(mappings)}")


def handle_candidates(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    config.override("evaluation", ranking_candidates=args.n, negative_strategy=args.strategy)
    ev = config.evaluation
    tgt = load(args.target, report)
    refs = load_mappings(args.ref, report)
    cases = generate_ranking_cases(refs, tgt, ev.ranking_candidates, config.seed, ev.negative_strategy,
                                   config.matcher.annotation_properties)
    write_output(args.out, ranking_cases_to_tsv(cases), report, args)
    report.summary.update(cases=len(cases))
    echo(args, f"✅ Кейсов ранжирования: {len(cases)}")


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("match", parents=[common], help="лексическое сопоставление")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--lambda", dest="threshold", type=float)
    p.add_argument("--kappa", type=float, help="порог расширения")
    p.add_argument("--k", type=int, help="число кандидатов на концепт")
    p.add_argument("--reasoner", choices=["structural", "el"])
    p.add_argument("--one-to-one", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=handle_match)

    p = subparsers.add_parser("substring-match", parents=[common], help="базовое сопоставление по подстрокам")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=handle_substring_match)

    p = subparsers.add_parser("candidates", parents=[common], help="кандидаты для локального ранжирования")
    p.add_argument("--target", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--strategy", choices=["random", "index"])
    p.add_argument("--out")
    p.set_defaults(handler=handle_candidates)
