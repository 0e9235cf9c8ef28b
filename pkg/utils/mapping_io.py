"""
Чтение и запись файлов маппингов и кейсов ранжирования (TSV)
"""
import csv
import io
import logging
from typing import Iterable, List, Tuple

from models import Mapping, ModelConstants, Relation, ValidationError
from utils.file_utils import atomic_write_text, read_text

logger = logging.getLogger(__name__)

MAPPING_HEADER = ("SrcEntity", "TgtEntity", "Score")
RANKING_HEADER = ("SrcEntity", "TgtEntity", "CandidateList")

RankingCase = Tuple[Mapping, List[str]]


def _rows(path: str, header: Tuple[str, ...]) -> List[List[str]]:
    reader = csv.reader(io.StringIO(read_text(path)), delimiter="\t", quoting=csv.QUOTE_NONE)
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        return []
    first = [cell.strip() for cell in rows[0]]
    if tuple(first[:2]) != header[:2]:
        raise ValidationError(f"{path}: ожидался заголовок {chr(9).join(header)}, получено {chr(9).join(first)}")
    return rows[1:]


def format_score(score: float) -> str:
    return f"{score:.{ModelConstants.SCORE_DECIMALS}f}"


def read_mappings(path: str, relation: Relation = Relation.EQUIVALENCE) -> List[Mapping]:
    """Маппинги из TSV; столбец Score необязателен (по умолчанию 1.0)"""
    mappings = []
    for lineno, row in enumerate(_rows(path, MAPPING_HEADER), start=2):
        if len(row) < 2:
            raise ValidationError(f"{path}:{lineno}: нужно минимум два столбца")
        try:
            score = float(row[2]) if len(row) > 2 and row[2].strip() else 1.0
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: некорректная оценка {row[2]!r}")
        mappings.append(Mapping(row[0].strip(), row[1].strip(), relation, score))
    logger.debug(f"Прочитано маппингов из {path}: {len(mappings)}")
    return mappings


def mappings_to_tsv(mappings: Iterable[Mapping]) -> str:
    lines = ["\t".join(MAPPING_HEADER)]
    lines.extend(f"{m.source}\t{m.target}\t{format_score(m.score)}" for m in mappings)
    return "\n".join(lines) + "\n"


def write_mappings(path: str, mappings: Iterable[Mapping]) -> None:
    atomic_write_text(path, mappings_to_tsv(mappings))


def read_ranking_cases(path: str, relation: Relation = Relation.EQUIVALENCE) -> List[RankingCase]:
    cases = []
    for lineno, row in enumerate(_rows(path, RANKING_HEADER), start=2):
        if len(row) < 3:
            raise ValidationError(f"{path}:{lineno}: нужно три столбца")
        candidates = [c.strip() for c in row[2].split(",") if c.strip()]
        cases.append((Mapping(row[0].strip(), row[1].strip(), relation), candidates))
    return cases


def ranking_cases_to_tsv(cases: Iterable[RankingCase]) -> str:
    lines = ["\t".join(RANKING_HEADER)]
    lines.extend(f"{ref.source}\t{ref.target}\t{','.join(candidates)}" for ref, candidates in cases)
    return "\n".join(lines) + "\n"


def write_ranking_cases(path: str, cases: Iterable[RankingCase]) -> None:
    atomic_write_text(path, ranking_cases_to_tsv(cases))
