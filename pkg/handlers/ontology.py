"""
Подкоманды над одной онтологией: parse, classify, prune, normalise, taxonomy, project, verbalise, context
"""
import argparse
import logging

from config import RunConfig
from models import OWL_THING, ParseError
from normalisation import normalise, render_definitions
from owl_parser import parse_concept_expression, parse_ontology, render_axiom, serialize_ontology
from projection import project, to_ntriples
from pruning import prune, prune_keep
from reasoner import ReasonerTier, classify
from taxonomy import build_taxonomy
from utils.file_utils import read_lines, read_text
from utils.run_report import RunReport
from verbaliser import ContextMode, Direction, context_text, verbalise

from handlers.common import echo, load, load_iris, write_output

logger = logging.getLogger(__name__)


def handle_parse(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    report.add_input(args.onto)
    result = parse_ontology(read_text(args.onto))
    for diagnostic in result.diagnostics:
        print(f"{args.onto}:{diagnostic}")
    if not result.ok:
        raise ParseError(result.diagnostics)

    onto = result.ontology
    report.summary.update(concepts=len(onto.concepts), roles=len(onto.roles),
                          axioms=len(onto), skipped=result.skipped)
    if args.out:
        write_output(args.out, serialize_ontology(onto), report, args)
    echo(args, f"✅ {args.onto}: концептов {len(onto.concepts)}, ролей {len(onto.roles)}, "
               f"аксиом {len(onto)}, пропущено {result.skipped}")


def handle_classify(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    closure = classify(onto, args.reasoner, strict=not args.lenient)
    pairs = sorted((c, d) for c, d in closure.relation if c != d)
    write_output(args.out, "".join(f"{c}\t{d}\n" for c, d in pairs), report, args)
    report.summary.update(pairs=len(pairs), unsatisfiable=sorted(closure.unsatisfiable))
    echo(args, f"✅ Замыкание ({closure.tier.value}): пар {len(pairs)}, "
               f"невыполнимых {len(closure.unsatisfiable)}")


def handle_prune(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    iris = load_iris(args.iris, report)
    pruned = prune_keep(onto, iris) if args.keep else prune(onto, iris)
    write_output(args.out, serialize_ontology(pruned), report, args)
    removed = len(onto.concepts) - len(pruned.concepts)
    report.summary.update(removed=removed, axioms=len(pruned))
    echo(args, f"✅ Удалено концептов {removed}, аксиом в результате {len(pruned)}")


def handle_normalise(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    result = normalise(onto, strict=not args.lenient)
    lines = "".join(render_axiom(ax.to_axiom(), onto.prefixes) + "\n" for ax in result.axioms)
    write_output(args.out, lines, report, args)
    if args.definitions:
        write_output(args.definitions, render_definitions(result.definitions, onto.prefixes), report, args)
    report.summary.update(axioms=len(result.axioms), fresh=len(result.definitions), skipped=len(result.skipped))
    echo(args, f"✅ Нормальных форм {len(result.axioms)}, свежих имён {len(result.definitions)}, "
               f"пропущено {len(result.skipped)}")


def handle_taxonomy(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    taxonomy = build_taxonomy(onto, classify(onto, args.reasoner, strict=False))
    write_output(args.out, taxonomy.to_tsv(), report, args)
    report.summary.update(nodes=len(taxonomy), edges=len(taxonomy.edges))
    echo(args, f"✅ Таксономия: узлов {len(taxonomy)}, рёбер {len(taxonomy.edges)}")


def handle_project(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    triples = project(onto, only_taxonomy=args.only_taxonomy)
    write_output(args.out, to_ntriples(triples), report, args)
    report.summary.update(triples=len(triples))
    echo(args, f"✅ Троек: {len(triples)}")


def handle_verbalise(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    onto = load(args.onto, report)
    report.add_input(args.expr)
    properties = config.matcher.annotation_properties
    sentences = [verbalise(parse_concept_expression(line, onto), onto, properties) for line in read_lines(args.expr)]
    write_output(args.out, "".join(f"{s}\n" for s in sentences), report, args)
    report.summary.update(sentences=len(sentences))


def handle_context(args: argparse.Namespace, config: RunConfig, report: RunReport) -> None:
    config.override("context", mode=args.mode, direction=args.direction, limit=args.limit,
                    strict=True if args.strict else None)
    ctx = config.context
    onto = load(args.onto, report)
    taxonomy = build_taxonomy(onto, classify(onto, ReasonerTier.STRUCTURAL))
    concepts = load_iris(args.iris, report) if args.iris else sorted(onto.concepts)

    rows = []
    for iri in concepts:
        if iri == OWL_THING:
            continue
        text = context_text(onto, taxonomy, iri, ctx.mode, ctx.direction, ctx.limit, ctx.strict,
                            config.matcher.annotation_properties)
        rows.append(f"{iri}\t{ctx.mode}\t{text}\n")
    write_output(args.out, "".join(rows), report, args)
    report.summary.update(contexts=len(rows))


def register(subparsers, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("parse", parents=[common], help="проверить и переписать онтологию")
    p.add_argument("--onto", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=handle_parse)

    p = subparsers.add_parser("classify", parents=[common], help="замыкание подчинений")
    p.add_argument("--onto", required=True)
    p.add_argument("--reasoner", choices=[t.value for t in ReasonerTier], default=ReasonerTier.STRUCTURAL.value)
    p.add_argument("--lenient", action="store_true", help="пропускать аксиомы вне EL")
    p.add_argument("--out")
    p.set_defaults(handler=handle_classify)

    p = subparsers.add_parser("prune", parents=[common], help="удалить концепты с сохранением иерархии")
    p.add_argument("--onto", required=True)
    p.add_argument("--iris", required=True, help="файл IRI, по одному на строку")
    p.add_argument("--keep", action="store_true", help="в файле перечислены сохраняемые концепты")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=handle_prune)

    p = subparsers.add_parser("normalise", parents=[common], help="нормальные формы EL")
    p.add_argument("--onto", required=True)
    p.add_argument("--out")
    p.add_argument("--definitions", help="файл определений свежих имён")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(handler=handle_normalise)

    p = subparsers.add_parser("taxonomy", parents=[common], help="таксономия в TSV child<TAB>parent")
    p.add_argument("--onto", required=True)
    p.add_argument("--reasoner", choices=[t.value for t in ReasonerTier], default=ReasonerTier.STRUCTURAL.value)
    p.add_argument("--out")
    p.set_defaults(handler=handle_taxonomy)

    p = subparsers.add_parser("project", parents=[common], help="проекция в N-Triples")
    p.add_argument("--onto", required=True)
    p.add_argument("--only-taxonomy", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=handle_project)

    p = subparsers.add_parser("verbalise", parents=[common], help="вербализация выражений")
    p.add_argument("--onto", required=True)
    p.add_argument("--expr", required=True, help="файл выражений, по одному на строку")
    p.add_argument("--out")
    p.set_defaults(handler=handle_verbalise)

    p = subparsers.add_parser("context", parents=[common], help="текстовые контексты IC/PC/BC")
    p.add_argument("--onto", required=True)
    p.add_argument("--iris", help="файл IRI; по умолчанию все концепты")
    p.add_argument("--mode", choices=[m.value for m in ContextMode])
    p.add_argument("--direction", choices=[d.value for d in Direction])
    p.add_argument("--limit", type=int)
    p.add_argument("--strict", action="store_true", help="ошибка при концепте без метки")
    p.add_argument("--out")
    p.set_defaults(handler=handle_context)
