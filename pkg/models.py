"""
Модели данных: выражения концептов, аксиомы, маппинги и отчёты
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Tuple, Union

from rdflib.namespace import OWL, RDF, RDFS


# Стандартные IRI
OWL_THING = str(OWL.Thing)
OWL_NOTHING = str(OWL.Nothing)
RDFS_LABEL = str(RDFS.label)
RDFS_SUBCLASS_OF = str(RDFS.subClassOf)
RDF_TYPE = str(RDF.type)


# Ошибки

class OntologyError(Exception):
    """Базовая ошибка всех операций над онтологиями"""


class ValidationError(OntologyError, ValueError):
    """Некорректные входные данные"""


class EntityNotFoundError(OntologyError, KeyError):
    """IRI отсутствует в сигнатуре"""

    def __init__(self, iri: str, what: str = "сущность"):
        self.iri = iri
        super().__init__(f"{what} не найдена: {iri}")

    def __str__(self) -> str:
        return self.args[0]


class ParseError(OntologyError):
    """Синтаксическая ошибка с диагностикой"""

    def __init__(self, diagnostics: List["ParseDiagnostic"]):
        self.diagnostics = list(diagnostics)
        errors = [d for d in self.diagnostics if d.severity == Severity.ERROR]
        first = errors[0] if errors else (self.diagnostics[0] if self.diagnostics else None)
        super().__init__(str(first) if first else "ошибка разбора")


class NonELError(ValidationError):
    """Аксиомы вне фрагмента EL; в offending лежат пары (аксиома, конструктор)"""

    def __init__(self, offending: List[Tuple["Axiom", str]]):
        self.offending = list(offending)
        preview = "; ".join(f"{ax} [{ctor}]" for ax, ctor in self.offending[:5])
        super().__init__(f"аксиом вне EL: {len(self.offending)}: {preview}")


class VerbalisationError(ValidationError):
    """У сущности нет метки для вербализации"""

    def __init__(self, iri: str):
        self.iri = iri
        super().__init__(f"нет метки у сущности {iri}")


def local_name(iri: str) -> str:
    """Локальное имя IRI (после '#' или последнего '/')"""
    for sep in ("#", "/", ":"):
        if sep in iri:
            tail = iri.rsplit(sep, 1)[1]
            if tail:
                return tail
    return iri


def validate_iri(value: str) -> str:
    """Проверяет IRI: непустой и без пробельных символов"""
    if not value or any(ch.isspace() for ch in value):
        raise ValidationError(f"некорректный IRI: {value!r}")
    return value


# Выражения концептов

@dataclass(frozen=True)
class Named:
    iri: str

    def __post_init__(self):
        validate_iri(self.iri)

    def __str__(self) -> str:
        return local_name(self.iri)


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "⊤"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "⊥"


def _bag(operands) -> FrozenSet:
    return frozenset(Counter(operands).items())


@dataclass(frozen=True, eq=False)
class And:
    """Пересечение; порядок операндов хранится, но в равенстве не учитывается"""
    operands: Tuple["ConceptExpression", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))

    def __eq__(self, other) -> bool:
        return isinstance(other, And) and _bag(self.operands) == _bag(other.operands)

    def __hash__(self) -> int:
        return hash(("and", _bag(self.operands)))

    def __str__(self) -> str:
        return "(" + " ⊓ ".join(str(op) for op in self.operands) + ")"


@dataclass(frozen=True, eq=False)
class Or:
    """Объединение; равенство без учёта порядка операндов"""
    operands: Tuple["ConceptExpression", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))

    def __eq__(self, other) -> bool:
        return isinstance(other, Or) and _bag(self.operands) == _bag(other.operands)

    def __hash__(self) -> int:
        return hash(("or", _bag(self.operands)))

    def __str__(self) -> str:
        return "(" + " ⊔ ".join(str(op) for op in self.operands) + ")"


@dataclass(frozen=True)
class Not:
    operand: "ConceptExpression"

    def __str__(self) -> str:
        return f"¬{self.operand}"


@dataclass(frozen=True)
class Some:
    role: str
    filler: "ConceptExpression"

    def __str__(self) -> str:
        return f"∃{local_name(self.role)}.{self.filler}"


@dataclass(frozen=True)
class Only:
    role: str
    filler: "ConceptExpression"

    def __str__(self) -> str:
        return f"∀{local_name(self.role)}.{self.filler}"


ConceptExpression = Union[Named, Top, Bottom, And, Or, Not, Some, Only]


def named(iri: str) -> "ConceptExpression":
    """Именованный концепт; owl:Thing и owl:Nothing становятся ⊤ и ⊥"""
    if iri == OWL_THING:
        return Top()
    if iri == OWL_NOTHING:
        return Bottom()
    return Named(iri)


def iter_subexpressions(expr: ConceptExpression) -> Iterator[ConceptExpression]:
    """Обход выражения в глубину (сначала само выражение)"""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, Or)):
            stack.extend(reversed(node.operands))
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (Some, Only)):
            stack.append(node.filler)


def expression_concepts(expr: ConceptExpression) -> List[str]:
    return [node.iri for node in iter_subexpressions(expr) if isinstance(node, Named)]


def expression_roles(expr: ConceptExpression) -> List[str]:
    return [node.role for node in iter_subexpressions(expr) if isinstance(node, (Some, Only))]


def validate_expression(expr: ConceptExpression) -> None:
    """Проверяет арность And/Or (не меньше двух операндов)"""
    for node in iter_subexpressions(expr):
        if isinstance(node, (And, Or)) and len(node.operands) < 2:
            kind = "And" if isinstance(node, And) else "Or"
            raise ValidationError(f"{kind} требует минимум 2 операнда, получено {len(node.operands)}")


# Аксиомы

@dataclass(frozen=True)
class SubClassOf:
    sub: ConceptExpression
    sup: ConceptExpression

    def __str__(self) -> str:
        return f"{self.sub} ⊑ {self.sup}"


@dataclass(frozen=True, eq=False)
class EquivalentClasses:
    """Эквивалентность; как и в OWL, набор операндов является множеством"""
    operands: Tuple[ConceptExpression, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))

    def __eq__(self, other) -> bool:
        return isinstance(other, EquivalentClasses) and _bag(self.operands) == _bag(other.operands)

    def __hash__(self) -> int:
        return hash(("equiv", _bag(self.operands)))

    def __str__(self) -> str:
        return " ≡ ".join(str(op) for op in self.operands)


@dataclass(frozen=True)
class SubObjectPropertyOf:
    sub: str
    sup: str

    def __str__(self) -> str:
        return f"{local_name(self.sub)} ⊑ {local_name(self.sup)}"


@dataclass(frozen=True)
class SubPropertyChainOf:
    chain: Tuple[str, str]
    sup: str

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))

    def __str__(self) -> str:
        first, second = self.chain
        return f"{local_name(first)} ∘ {local_name(second)} ⊑ {local_name(self.sup)}"


@dataclass(frozen=True)
class ClassAssertion:
    concept: ConceptExpression
    individual: str

    def __str__(self) -> str:
        return f"{self.concept}({local_name(self.individual)})"


@dataclass(frozen=True)
class ObjectPropertyAssertion:
    role: str
    subject: str
    object: str

    def __str__(self) -> str:
        return f"{local_name(self.role)}({local_name(self.subject)}, {local_name(self.object)})"


@dataclass(frozen=True)
class AnnotationAssertion:
    subject: str
    property: str
    literal: str
    language: Optional[str] = None

    def __str__(self) -> str:
        return f'{local_name(self.property)}({local_name(self.subject)}, "{self.literal}")'


Axiom = Union[SubClassOf, EquivalentClasses, SubObjectPropertyOf, SubPropertyChainOf,
              ClassAssertion, ObjectPropertyAssertion, AnnotationAssertion]

LOGICAL_AXIOM_TYPES = (SubClassOf, EquivalentClasses, SubObjectPropertyOf, SubPropertyChainOf,
                       ClassAssertion, ObjectPropertyAssertion)


def axiom_expressions(axiom: Axiom) -> List[ConceptExpression]:
    """Выражения концептов, входящие в аксиому"""
    if isinstance(axiom, SubClassOf):
        return [axiom.sub, axiom.sup]
    if isinstance(axiom, EquivalentClasses):
        return list(axiom.operands)
    if isinstance(axiom, ClassAssertion):
        return [axiom.concept]
    return []


class AxiomSignature(NamedTuple):
    concepts: List[str]
    roles: List[str]
    individuals: List[str]
    annotation_properties: List[str]


def axiom_signature(axiom: Axiom) -> AxiomSignature:
    """Все IRI аксиомы, разложенные по видам сущностей"""
    concepts: List[str] = []
    roles: List[str] = []
    individuals: List[str] = []
    properties: List[str] = []

    for expr in axiom_expressions(axiom):
        concepts.extend(expression_concepts(expr))
        roles.extend(expression_roles(expr))

    if isinstance(axiom, SubObjectPropertyOf):
        roles.extend([axiom.sub, axiom.sup])
    elif isinstance(axiom, SubPropertyChainOf):
        roles.extend([*axiom.chain, axiom.sup])
    elif isinstance(axiom, ClassAssertion):
        individuals.append(axiom.individual)
    elif isinstance(axiom, ObjectPropertyAssertion):
        roles.append(axiom.role)
        individuals.extend([axiom.subject, axiom.object])
    elif isinstance(axiom, AnnotationAssertion):
        properties.append(axiom.property)

    return AxiomSignature(concepts, roles, individuals, properties)


def axiom_mentions(axiom: Axiom) -> FrozenSet[str]:
    """Все IRI, упомянутые в аксиоме (включая субъект аннотации)"""
    sig = axiom_signature(axiom)
    mentioned = set(sig.concepts) | set(sig.roles) | set(sig.individuals) | set(sig.annotation_properties)
    if isinstance(axiom, AnnotationAssertion):
        mentioned.add(axiom.subject)
    return frozenset(mentioned)


def validate_axiom(axiom: Axiom) -> None:
    """Структурная проверка аксиомы перед добавлением"""
    if isinstance(axiom, EquivalentClasses) and len(axiom.operands) < 2:
        raise ValidationError(f"EquivalentClasses требует минимум 2 операнда: {axiom}")
    if isinstance(axiom, SubPropertyChainOf) and len(axiom.chain) != 2:
        raise ValidationError(f"цепочка ролей должна иметь длину 2: {axiom}")
    for expr in axiom_expressions(axiom):
        validate_expression(expr)
    for iri in axiom_mentions(axiom):
        validate_iri(iri)


# Маппинги и тройки

class Relation(str, Enum):
    EQUIVALENCE = "="
    SUBSUMPTION = "<"


@dataclass(frozen=True)
class Mapping:
    """Соответствие между концептами двух онтологий; score в равенстве не участвует"""
    source: str
    target: str
    relation: Relation = Relation.EQUIVALENCE
    score: float = field(default=1.0, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValidationError(f"оценка маппинга вне [0, 1]: {self.score}")

    @property
    def key(self) -> Tuple[str, str, str]:
        return self.source, self.target, self.relation.value

    def with_score(self, score: float) -> "Mapping":
        return Mapping(self.source, self.target, self.relation, score)


class Triple(NamedTuple):
    subject: str
    predicate: str
    object: str


# Диагностика разбора

class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity.value}: {self.message}"


# Отчёты оценки

@dataclass
class MetricReport:
    """Метрики сопоставления и ранжирования"""
    precision: float = 0.0
    recall: float = 0.0
    f_score: float = 0.0
    mrr: Optional[float] = None
    hits_at: Dict[int, float] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def to_report_text(self) -> str:
        """Текстовый отчёт ключ: значение с фиксированными именами ключей"""
        lines = [
            f"precision: {self.precision:.6f}",
            f"recall: {self.recall:.6f}",
            f"f_score: {self.f_score:.6f}",
        ]
        if self.mrr is not None:
            lines.append(f"mrr: {self.mrr:.6f}")
        for k in sorted(self.hits_at):
            lines.append(f"hits@{k}: {self.hits_at[k]:.6f}")
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        return "\n".join(lines) + "\n"


class SplitSetting(str, Enum):
    UNSUPERVISED = "unsupervised"
    SEMI_SUPERVISED = "semi_supervised"


@dataclass
class ReferenceSplit:
    train: List[Mapping]
    validation: List[Mapping]
    test: List[Mapping]
    setting: SplitSetting

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return len(self.train), len(self.validation), len(self.test)


# Константы
class ModelConstants:
    """Константы моделей и форматов"""

    FRESH_NAMESPACE = "urn:normal#"
    SEP_TOKEN = "<SEP>"

    DEFAULT_K = 10
    DEFAULT_THRESHOLD = 0.995
    DEFAULT_EXTENSION_THRESHOLD = 0.9
    DEFAULT_RANKING_CANDIDATES = 100
    DEFAULT_HITS_AT = (1, 5, 10)

    MIN_REFERENCES_FOR_SPLIT = 10
    SCORE_DECIMALS = 6
