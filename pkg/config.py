import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from models import RDFS_LABEL, ModelConstants, ValidationError

load_dotenv()


def _int_env(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} должен быть целым числом, получено {raw!r}")


# Основные настройки
LOG_LEVEL = os.getenv('ONTO_LOG_LEVEL', 'INFO').upper()
LOG_FILE = os.getenv('ONTO_LOG_FILE', '')
DEFAULT_SEED = _int_env('ONTO_SEED', '42')
DEFAULT_THREADS = _int_env('ONTO_THREADS', '1')
LABEL_PROPERTIES = [p.strip() for p in os.getenv('ONTO_LABEL_PROPERTIES', RDFS_LABEL).split(',') if p.strip()]
RUN_REPORT_PATH = os.getenv('ONTO_RUN_REPORT', 'run_report.json')

# Валидация
if DEFAULT_THREADS < 1:
    raise ValueError("ONTO_THREADS должен быть не меньше 1")

if not LABEL_PROPERTIES:
    raise ValueError("ONTO_LABEL_PROPERTIES не может быть пустым")


@dataclass
class MatcherConfig:
    """Параметры лексического сопоставления"""
    k: int = ModelConstants.DEFAULT_K
    threshold: float = ModelConstants.DEFAULT_THRESHOLD
    extension_threshold: float = ModelConstants.DEFAULT_EXTENSION_THRESHOLD
    annotation_properties: List[str] = field(default_factory=lambda: list(LABEL_PROPERTIES))
    one_to_one: bool = False
    reasoner: str = "structural"
    threads: int = DEFAULT_THREADS

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k должно быть >= 1, получено {self.k}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError(f"порог lambda вне [0, 1]: {self.threshold}")
        if not 0.0 <= self.extension_threshold <= 1.0:
            raise ValidationError(f"порог kappa вне [0, 1]: {self.extension_threshold}")
        if not self.annotation_properties:
            raise ValidationError("нужно хотя бы одно свойство аннотаций")
        if self.reasoner not in ("structural", "el"):
            raise ValidationError(f"неизвестный ризонер: {self.reasoner}")
        if self.threads < 1:
            raise ValidationError("threads должен быть >= 1")


@dataclass
class EvaluationConfig:
    """Параметры протокола оценки"""
    setting: str = "unsupervised"
    ranking_candidates: int = ModelConstants.DEFAULT_RANKING_CANDIDATES
    negative_strategy: str = "random"
    hits_at: List[int] = field(default_factory=lambda: list(ModelConstants.DEFAULT_HITS_AT))

    def __post_init__(self):
        if self.setting not in ("unsupervised", "semi_supervised"):
            raise ValidationError(f"неизвестный режим разбиения: {self.setting}")
        if self.ranking_candidates < 2:
            raise ValidationError("ranking_candidates должно быть >= 2")
        if self.negative_strategy not in ("random", "index"):
            raise ValidationError(f"неизвестная стратегия негативов: {self.negative_strategy}")
        if any(k < 1 for k in self.hits_at):
            raise ValidationError("значения hits_at должны быть >= 1")


@dataclass
class ContextConfig:
    """Параметры текстовых контекстов концептов"""
    mode: str = "IC"
    direction: str = "up"
    limit: int = 5
    strict: bool = False

    def __post_init__(self):
        if self.mode not in ("IC", "PC", "BC"):
            raise ValidationError(f"неизвестный режим контекста: {self.mode}")
        if self.direction not in ("up", "down"):
            raise ValidationError(f"неизвестное направление: {self.direction}")
        if self.limit < 1:
            raise ValidationError("limit должен быть >= 1")


_SECTIONS = {
    "matcher": MatcherConfig,
    "evaluation": EvaluationConfig,
    "context": ContextConfig,
}


@dataclass
class RunConfig:
    """Полная конфигурация запуска: файл --config, поверх него флаги командной строки"""
    matcher: MatcherConfig = field(default_factory=MatcherConfig)
    evaluation: EvaluationConfig = field(default_factory=EvaluationConfig)
    context: ContextConfig = field(default_factory=ContextConfig)
    seed: int = DEFAULT_SEED
    threads: int = DEFAULT_THREADS

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        unknown = set(data) - set(_SECTIONS) - {"seed", "threads"}
        if unknown:
            raise ValidationError(f"неизвестные ключи конфигурации: {sorted(unknown)}")

        sections = {}
        for name, section_cls in _SECTIONS.items():
            values = data.get(name, {})
            if not isinstance(values, dict):
                raise ValidationError(f"секция {name} должна быть объектом")
            allowed = {f.name for f in fields(section_cls)}
            extra = set(values) - allowed
            if extra:
                raise ValidationError(f"неизвестные ключи в секции {name}: {sorted(extra)}")
            try:
                sections[name] = section_cls(**values)
            except TypeError as e:
                raise ValidationError(f"секция {name}: {e}")

        return cls(
            seed=int(data.get("seed", DEFAULT_SEED)),
            threads=int(data.get("threads", DEFAULT_THREADS)),
            **sections,
        )

    @classmethod
    def load(cls, path: Optional[str]) -> "RunConfig":
        """Читает JSON-конфигурацию; без пути возвращает значения по умолчанию"""
        if not path:
            return cls()
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"конфигурация {path} не является JSON: {e}")
        if not isinstance(data, dict):
            raise ValidationError(f"конфигурация {path} должна быть объектом")
        return cls.from_dict(data)

    def override(self, section: str, **values: Any) -> None:
        """Применяет явные флаги поверх значений из файла (None пропускается)"""
        current = asdict(getattr(self, section))
        current.update({k: v for k, v in values.items() if v is not None})
        setattr(self, section, _SECTIONS[section](**current))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
