"""
Приведение аксиом фрагмента EL к шести нормальным формам
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Set, Tuple, Union

from models import (
    OWL_NOTHING, OWL_THING,
    And, Axiom, Bottom, ConceptExpression, EquivalentClasses, ModelConstants, Named, NonELError,
    Not, Only, Or, Some, SubClassOf, SubObjectPropertyOf, SubPropertyChainOf, Top, ValidationError,
    iter_subexpressions, local_name, named,
)
from ontology import Ontology
from owl_parser import render_expression

logger = logging.getLogger(__name__)


def _short(iri: str) -> str:
    if iri == OWL_THING:
        return "⊤"
    if iri == OWL_NOTHING:
        return "⊥"
    return local_name(iri)


def _expr(iri: str) -> ConceptExpression:
    return named(iri)


def _check_left(value: str, slot: str):
    if value == OWL_NOTHING:
        raise ValidationError(f"{slot}: ⊥ недопустим в левой части нормальной формы")


def _check_right(value: str, slot: str):
    if value == OWL_THING:
        raise ValidationError(f"{slot}: ⊤ недопустим в правой части нормальной формы")


@dataclass(frozen=True)
class AtomicSub:
    """C ⊑ D"""
    sub: str
    sup: str

    def __post_init__(self):
        _check_left(self.sub, "AtomicSub.sub")
        _check_right(self.sup, "AtomicSub.sup")

    def to_axiom(self) -> Axiom:
        return SubClassOf(_expr(self.sub), _expr(self.sup))

    def __str__(self) -> str:
        return f"{_short(self.sub)} ⊑ {_short(self.sup)}"


@dataclass(frozen=True)
class ConjSub:
    """C ⊓ C' ⊑ D; операнды хранятся в лексикографическом порядке"""
    left: str
    right: str
    sup: str

    def __post_init__(self):
        if self.right < self.left:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)
        _check_left(self.left, "ConjSub.left")
        _check_left(self.right, "ConjSub.right")
        _check_right(self.sup, "ConjSub.sup")

    def to_axiom(self) -> Axiom:
        return SubClassOf(And((_expr(self.left), _expr(self.right))), _expr(self.sup))

    def __str__(self) -> str:
        return f"{_short(self.left)} ⊓ {_short(self.right)} ⊑ {_short(self.sup)}"


@dataclass(frozen=True)
class ExistsRight:
    """C ⊑ ∃r.D, где D именованный"""
    sub: str
    role: str
    filler: str

    def __post_init__(self):
        _check_left(self.sub, "ExistsRight.sub")
        if self.filler in (OWL_THING, OWL_NOTHING):
            raise ValidationError("ExistsRight.filler должен быть именованным концептом")

    def to_axiom(self) -> Axiom:
        return SubClassOf(_expr(self.sub), Some(self.role, Named(self.filler)))

    def __str__(self) -> str:
        return f"{_short(self.sub)} ⊑ ∃{local_name(self.role)}.{_short(self.filler)}"


@dataclass(frozen=True)
class ExistsLeft:
    """∃r.C ⊑ D"""
    role: str
    filler: str
    sup: str

    def __post_init__(self):
        _check_left(self.filler, "ExistsLeft.filler")
        _check_right(self.sup, "ExistsLeft.sup")

    def to_axiom(self) -> Axiom:
        return SubClassOf(Some(self.role, _expr(self.filler)), _expr(self.sup))

    def __str__(self) -> str:
        return f"∃{local_name(self.role)}.{_short(self.filler)} ⊑ {_short(self.sup)}"


@dataclass(frozen=True)
class RoleSub:
    sub: str
    sup: str

    def to_axiom(self) -> Axiom:
        return SubObjectPropertyOf(self.sub, self.sup)

    def __str__(self) -> str:
        return f"{local_name(self.sub)} ⊑ {local_name(self.sup)}"


@dataclass(frozen=True)
class RoleChain:
    first: str
    second: str
    sup: str

    def to_axiom(self) -> Axiom:
        return SubPropertyChainOf((self.first, self.second), self.sup)

    def __str__(self) -> str:
        return f"{local_name(self.first)} ∘ {local_name(self.second)} ⊑ {local_name(self.sup)}"


NormalisedAxiom = Union[AtomicSub, ConjSub, ExistsRight, ExistsLeft, RoleSub, RoleChain]


class NormalisationResult(NamedTuple):
    axioms: List[NormalisedAxiom]
    definitions: Dict[str, ConceptExpression]
    skipped: List[Tuple[Axiom, str]]

    def to_ontology(self, iri: str = "", prefixes: Optional[Dict[str, str]] = None) -> Ontology:
        onto = Ontology(iri, prefixes)
        onto.add_axioms(ax.to_axiom() for ax in self.axioms)
        return onto


_NON_EL = {Or: "ObjectUnionOf", Not: "ObjectComplementOf", Only: "ObjectAllValuesFrom"}


def non_el_constructors(axiom: Axiom) -> List[str]:
    """Конструкторы вне EL, встречающиеся в аксиоме (без повторов, в порядке обхода)"""
    found: List[str] = []
    expressions = []
    if isinstance(axiom, SubClassOf):
        expressions = [axiom.sub, axiom.sup]
    elif isinstance(axiom, EquivalentClasses):
        expressions = list(axiom.operands)
    for expr in expressions:
        for node in iter_subexpressions(expr):
            ctor = _NON_EL.get(type(node))
            if ctor and ctor not in found:
                found.append(ctor)
    return found


def simplify(expr: ConceptExpression) -> ConceptExpression:
    """Упрощение: вложенные пересечения уплощаются, ⊥ поглощает ⊓ и ∃, повторы операндов убираются"""
    if isinstance(expr, And):
        flat: List[ConceptExpression] = []
        for op in expr.operands:
            op = simplify(op)
            members = op.operands if isinstance(op, And) else (op,)
            for member in members:
                if isinstance(member, Bottom):
                    return Bottom()
                if member not in flat:
                    flat.append(member)
        return flat[0] if len(flat) == 1 else And(tuple(flat))
    if isinstance(expr, Some):
        filler = simplify(expr.filler)
        return Bottom() if isinstance(filler, Bottom) else Some(expr.role, filler)
    return expr


class _Normaliser:

    def __init__(self, reserved: Set[str]):
        self.reserved = reserved
        self.counter = 0
        self.names: Dict[ConceptExpression, str] = {}
        self.polarity: Dict[str, Set[str]] = {}
        self.definitions: Dict[str, ConceptExpression] = {}
        self.output: Dict[NormalisedAxiom, None] = {}

    def emit(self, axiom: NormalisedAxiom):
        self.output[axiom] = None

    def fresh(self, expr: ConceptExpression) -> str:
        """Свежее имя для подвыражения; одинаковые подвыражения получают одно имя"""
        if expr in self.names:
            return self.names[expr]
        while True:
            self.counter += 1
            iri = f"{ModelConstants.FRESH_NAMESPACE}N{self.counter}"
            if iri not in self.reserved:
                break
        self.names[expr] = iri
        self.polarity[iri] = set()
        self.definitions[iri] = expr
        return iri

    # Левая часть: нужно E ⊑ N

    def lhs_atom(self, expr: ConceptExpression) -> str:
        if isinstance(expr, Named):
            return expr.iri
        if isinstance(expr, Top):
            return OWL_THING
        if isinstance(expr, Bottom):
            return OWL_NOTHING
        iri = self.fresh(expr)
        if "left" not in self.polarity[iri]:
            self.polarity[iri].add("left")
            self.left_into(expr, iri)
        return iri

    def left_into(self, expr: ConceptExpression, target: str):
        """Нормальные формы для expr ⊑ target, где target атомарный"""
        if isinstance(expr, And):
            ops = expr.operands
            prefix = ops[0] if len(ops) == 2 else And(ops[:-1])
            self.emit(ConjSub(self.lhs_atom(prefix), self.lhs_atom(ops[-1]), target))
        elif isinstance(expr, Some):
            self.emit(ExistsLeft(expr.role, self.lhs_atom(expr.filler), target))
        else:
            self.emit(AtomicSub(self.lhs_atom(expr), target))

    # Правая часть: нужно N ⊑ E

    def rhs_atom(self, expr: ConceptExpression) -> str:
        if isinstance(expr, Named):
            return expr.iri
        iri = self.fresh(expr)
        if "right" not in self.polarity[iri]:
            self.polarity[iri].add("right")
            self.subsumption(Named(iri), expr)
        return iri

    def subsumption(self, sub: ConceptExpression, sup: ConceptExpression):
        """Нормализация sub ⊑ sup для упрощённых выражений"""
        if isinstance(sup, Top) or isinstance(sub, Bottom) or sub == sup:
            return
        if isinstance(sup, And):
            for op in sup.operands:
                self.subsumption(sub, op)
            return

        if isinstance(sup, (Named, Bottom)):
            target = OWL_NOTHING if isinstance(sup, Bottom) else sup.iri
            if isinstance(sub, (And, Some)):
                self.left_into(sub, target)
            else:
                self.emit(AtomicSub(self.lhs_atom(sub), target))
            return

        if isinstance(sup, Some):
            self.emit(ExistsRight(self.lhs_atom(sub), sup.role, self.rhs_atom(sup.filler)))
            return

        raise ValidationError(f"выражение вне EL в правой части: {sup}")

    def axiom(self, axiom: Axiom):
        if isinstance(axiom, SubClassOf):
            self.subsumption(simplify(axiom.sub), simplify(axiom.sup))
        elif isinstance(axiom, EquivalentClasses):
            ops = [simplify(op) for op in axiom.operands]
            for x, y in zip(ops, ops[1:]):
                self.subsumption(x, y)
                self.subsumption(y, x)
        elif isinstance(axiom, SubObjectPropertyOf):
            if axiom.sub != axiom.sup:
                self.emit(RoleSub(axiom.sub, axiom.sup))
        elif isinstance(axiom, SubPropertyChainOf):
            first, second = axiom.chain
            self.emit(RoleChain(first, second, axiom.sup))


def normalise(onto: Ontology, strict: bool = True) -> NormalisationResult:
    """Нормализация TBox онтологии.

    Аксиомы с конструкторами вне EL при strict=True вызывают NonELError
    со списком всех таких аксиом, иначе пропускаются с предупреждением.
    ABox и аннотации не нормализуются.
    """
    offending: List[Tuple[Axiom, str]] = []
    for axiom in onto.axioms:
        for ctor in non_el_constructors(axiom):
            offending.append((axiom, ctor))

    if offending and strict:
        raise NonELError(offending)

    skip = {axiom for axiom, _ in offending}
    for axiom, ctor in offending:
        logger.warning(f"⚠️ Аксиома вне EL пропущена [{ctor}]: {axiom}")

    normaliser = _Normaliser(onto.signature)
    for axiom in onto.axioms:
        if axiom not in skip:
            normaliser.axiom(axiom)

    result = NormalisationResult(list(normaliser.output), dict(normaliser.definitions), offending)
    logger.debug(f"Нормализация: {len(result.axioms)} аксиом, свежих имён {len(result.definitions)}")
    return result


def render_definitions(definitions: Dict[str, ConceptExpression], prefixes: Optional[Dict[str, str]] = None) -> str:
    """Файл определений свежих имён: одна строка 'IRI: выражение'"""
    return "".join(f"{iri}: {render_expression(expr, prefixes)}\n" for iri, expr in definitions.items())
