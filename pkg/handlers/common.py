"""
Общие помощники обработчиков подкоманд
"""
import argparse
import logging
from typing import List, Optional

from models import Mapping, Relation
from ontology import Ontology
from owl_parser import load_ontology
from utils.file_utils import atomic_write_text, read_lines
from utils.mapping_io import read_mappings
from utils.run_report import RunReport

logger = logging.getLogger(__name__)


def echo(args: argparse.Namespace, text: str) -> None:
    """Сводка в stdout; --quiet её подавляет"""
    if not getattr(args, "quiet", False):
        print(text)


def load(path: str, report: RunReport) -> Ontology:
    report.add_input(path)
    return load_ontology(path)


def load_mappings(path: str, report: RunReport, relation: Relation = Relation.EQUIVALENCE) -> List[Mapping]:
    report.add_input(path)
    return read_mappings(path, relation)


def load_iris(path: str, report: RunReport) -> List[str]:
    report.add_input(path)
    return read_lines(path)


def write_output(path: Optional[str], text: str, report: RunReport, args: argparse.Namespace) -> None:
    """Пишет результат в файл атомарно или, без пути, в stdout"""
    if path:
        atomic_write_text(path, text)
        report.add_output(path)
        logger.info(f"💾 Результат записан в {path}")
    else:
        print(text, end="")
