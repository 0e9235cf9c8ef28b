"""
Чтение и запись подмножества OWL 2 Functional-Style Syntax, разбор строк выражений в синтаксические деревья
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple, Union

import pyparsing as pp

from models import (
    OWL_NOTHING, OWL_THING,
    And, AnnotationAssertion, Axiom, Bottom, ClassAssertion, ConceptExpression, EquivalentClasses,
    Named, Not, ObjectPropertyAssertion, Only, Or, ParseDiagnostic, ParseError, Severity, Some,
    SubClassOf, SubObjectPropertyOf, SubPropertyChainOf, Top, ValidationError, named,
)
from ontology import EntityKind, Ontology
from utils.file_utils import atomic_write_text, read_text

logger = logging.getLogger(__name__)

STANDARD_PREFIXES: Dict[str, str] = {
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "xml": "http://www.w3.org/XML/1998/namespace",
}

_DECLARATION_KINDS = {
    "Class": EntityKind.CLASS,
    "ObjectProperty": EntityKind.OBJECT_PROPERTY,
    "NamedIndividual": EntityKind.NAMED_INDIVIDUAL,
    "AnnotationProperty": EntityKind.ANNOTATION_PROPERTY,
}

_UNSUPPORTED_DECLARATIONS = {"DataProperty", "Datatype"}

_UNSUPPORTED_EXPRESSIONS = {
    "ObjectOneOf", "ObjectHasValue", "ObjectHasSelf",
    "ObjectMinCardinality", "ObjectMaxCardinality", "ObjectExactCardinality",
    "DataSomeValuesFrom", "DataAllValuesFrom", "DataHasValue",
    "DataMinCardinality", "DataMaxCardinality", "DataExactCardinality",
    "ObjectInverseOf", "DataIntersectionOf", "DataUnionOf", "DataComplementOf",
    "DataOneOf", "DatatypeRestriction",
}

_UNSUPPORTED_AXIOMS = {
    "DisjointClasses", "DisjointUnion", "EquivalentObjectProperties", "DisjointObjectProperties",
    "ObjectPropertyDomain", "ObjectPropertyRange", "InverseObjectProperties",
    "FunctionalObjectProperty", "InverseFunctionalObjectProperty", "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty", "SymmetricObjectProperty", "AsymmetricObjectProperty",
    "SubDataPropertyOf", "EquivalentDataProperties", "DisjointDataProperties",
    "DataPropertyDomain", "DataPropertyRange", "FunctionalDataProperty", "DatatypeDefinition",
    "HasKey", "SameIndividual", "DifferentIndividuals", "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion", "NegativeDataPropertyAssertion", "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain", "AnnotationPropertyRange", "Import", "Annotation", "DLSafeRule",
}

_LOCAL_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")


# Лексемы и вызовы, которые строит грамматика

@dataclass
class _Token:
    kind: str
    text: str
    loc: int

    @property
    def end(self) -> int:
        return self.loc + len(self.text)


@dataclass
class _Call:
    keyword: str
    args: list
    loc: int
    end: int


def _leaf(kind: str):
    def action(s, loc, toks):
        return _Token(kind, toks[0], loc)
    return action


def _make_call(s, loc, toks):
    keyword, args, rpar = toks[0], toks[1], toks[2]
    return _Call(keyword, list(args), loc, rpar + 1)


def _make_prefix(s, loc, toks):
    return ("prefix", toks[0], toks[1], loc)


_PNAME_RE = r'(?:[A-Za-z_][\w\-.]*)?:[^\s()<>"]*'

_FULL_IRI = pp.Regex(r'<[^<>"{}|^`\\\s]*>').set_parse_action(_leaf("iri"))
_PNAME = pp.Regex(_PNAME_RE).set_parse_action(_leaf("pname"))
_LITERAL = pp.Regex(
    r'"(?:[^"\\]|\\.)*"(?:@[A-Za-z][A-Za-z0-9\-]*|\^\^(?:<[^<>"\s]*>|' + _PNAME_RE + r'))?',
    flags=re.DOTALL,
).set_parse_action(_leaf("literal"))
_INTEGER = pp.Regex(r"[0-9]+").set_parse_action(_leaf("integer"))
_KEYWORD = pp.Regex(r"[A-Za-z][A-Za-z0-9]*(?=\s*\()")
_LPAR = pp.Suppress("(")
_RPAR_LOC = pp.Literal(")").set_parse_action(lambda s, loc, toks: [loc])
_COMMENT = pp.Regex(r"#[^\n]*")

_TERM = pp.Forward()
_CALL = (_KEYWORD + _LPAR + pp.Group(pp.ZeroOrMore(_TERM)) + _RPAR_LOC).set_parse_action(_make_call)
_TERM <<= _CALL | _LITERAL | _FULL_IRI | _PNAME | _INTEGER

_PREFIX_DECL = (
    pp.Suppress(pp.Regex(r"Prefix(?=\s*\()")) + _LPAR
    + pp.Regex(r"(?:[A-Za-z_][\w\-.]*)?:") + pp.Suppress("=") + pp.Regex(r'<[^<>"\s]*>')
    + pp.Suppress(")")
).set_parse_action(_make_prefix)

_DOCUMENT = pp.Group(pp.ZeroOrMore(_PREFIX_DECL)) + _CALL + pp.StringEnd()
_DOCUMENT.ignore(_COMMENT)
_DOCUMENT.parse_with_tabs()

_EXPRESSION = _TERM + pp.StringEnd()
_EXPRESSION.ignore(_COMMENT)
_EXPRESSION.parse_with_tabs()


class _Fatal(Exception):
    def __init__(self, loc: int, message: str):
        self.loc = loc
        self.message = message


class _Skip(Exception):
    def __init__(self, loc: int, message: str):
        self.loc = loc
        self.message = message


def _diagnostic(text: str, loc: int, message: str, severity: Severity = Severity.ERROR) -> ParseDiagnostic:
    loc = max(0, min(loc, len(text)))
    return ParseDiagnostic(pp.lineno(loc, text), pp.col(loc, text), message, severity)


def _check_parentheses(text: str) -> Optional[ParseDiagnostic]:
    """Проверка баланса скобок с пропуском строк, IRI и комментариев"""
    stack: List[int] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == '"':
            i += 1
            while i < n and text[i] != '"':
                i += 2 if text[i] == "\\" else 1
        elif ch == "<":
            close = text.find(">", i)
            i = close if close != -1 else n
        elif ch == "#" and (i == 0 or text[i - 1].isspace() or text[i - 1] in "()"):
            close = text.find("\n", i)
            i = close if close != -1 else n
        elif ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                return _diagnostic(text, i, "лишняя закрывающая скобка ')'")
            stack.pop()
        i += 1
    if stack:
        return _diagnostic(text, stack[-1], "незакрытая скобка '('")
    return None


_LITERAL_PARTS = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:@([A-Za-z][A-Za-z0-9\-]*))?', re.DOTALL)


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", r"\1", body, flags=re.DOTALL)


def _split_literal(text: str) -> Tuple[str, Optional[str]]:
    """Лексическая форма и языковой тег литерала; тип данных отбрасывается"""
    parts = _LITERAL_PARTS.match(text)
    return _unescape(parts.group(1)), parts.group(2)


class _Converter:
    """Переводит дерево вызовов грамматики в аксиомы модели"""

    def __init__(self, text: str, prefixes: Dict[str, str]):
        self.text = text
        self.prefixes = prefixes
        self.diagnostics: List[ParseDiagnostic] = []
        self.skipped = 0

    def warn(self, loc: int, message: str):
        self.diagnostics.append(_diagnostic(self.text, loc, message, Severity.WARNING))
        self.skipped += 1

    def error(self, loc: int, message: str):
        self.diagnostics.append(_diagnostic(self.text, loc, message, Severity.ERROR))

    # Сущности

    def iri(self, node) -> str:
        if isinstance(node, _Call):
            if node.keyword in _UNSUPPORTED_EXPRESSIONS:
                raise _Skip(node.loc, f"неподдерживаемый конструктор {node.keyword}")
            raise _Fatal(node.loc, f"ожидался IRI, получено {node.keyword}(...)")
        if node.kind == "iri":
            return node.text[1:-1]
        if node.kind == "pname":
            prefix, local = node.text.split(":", 1)
            if prefix == "_":
                raise _Skip(node.loc, f"анонимные индивиды не поддерживаются: {node.text}")
            if prefix not in self.prefixes:
                raise _Fatal(node.loc, f"необъявленный префикс '{prefix}:' в {node.text}")
            return self.prefixes[prefix] + local
        raise _Fatal(node.loc, f"ожидался IRI, получено {node.text}")

    def expression(self, node) -> ConceptExpression:
        if not isinstance(node, _Call):
            return named(self.iri(node))

        keyword, args = node.keyword, node.args
        if keyword in ("ObjectIntersectionOf", "ObjectUnionOf"):
            if len(args) < 2:
                raise _Fatal(node.loc, f"{keyword} требует минимум 2 операнда, получено {len(args)}")
            operands = tuple(self.expression(arg) for arg in args)
            return And(operands) if keyword == "ObjectIntersectionOf" else Or(operands)
        if keyword == "ObjectComplementOf":
            self._arity(node, 1)
            return Not(self.expression(args[0]))
        if keyword in ("ObjectSomeValuesFrom", "ObjectAllValuesFrom"):
            self._arity(node, 2)
            role = self.iri(args[0])
            filler = self.expression(args[1])
            return Some(role, filler) if keyword == "ObjectSomeValuesFrom" else Only(role, filler)
        if keyword in _UNSUPPORTED_EXPRESSIONS:
            raise _Skip(node.loc, f"неподдерживаемый конструктор {keyword}")
        raise _Fatal(node.loc, f"неизвестное ключевое слово {keyword}")

    def _arity(self, node: _Call, expected: int):
        if len(node.args) != expected:
            raise _Fatal(node.loc, f"{node.keyword} ожидает {expected} аргумент(а), получено {len(node.args)}")

    # Аксиомы

    def statement(self, node, onto: Ontology):
        if not isinstance(node, _Call):
            raise _Fatal(node.loc, f"ожидалась аксиома, получено {node.text}")

        keyword = node.keyword
        args = list(node.args)
        # аннотации аксиом отбрасываются, сама аксиома остаётся
        while args and isinstance(args[0], _Call) and args[0].keyword == "Annotation":
            args.pop(0)
        node = _Call(keyword, args, node.loc, node.end)

        if keyword == "Declaration":
            self._arity(node, 1)
            entity = args[0]
            if not isinstance(entity, _Call):
                raise _Fatal(entity.loc, "Declaration ожидает Class(...), ObjectProperty(...) и т.п.")
            if entity.keyword in _UNSUPPORTED_DECLARATIONS:
                raise _Skip(entity.loc, f"неподдерживаемое объявление {entity.keyword}")
            if entity.keyword not in _DECLARATION_KINDS:
                raise _Fatal(entity.loc, f"неизвестный вид сущности {entity.keyword}")
            self._arity(entity, 1)
            onto.declare(self.iri(entity.args[0]), _DECLARATION_KINDS[entity.keyword])
            return

        axiom = self.axiom(node)
        if axiom is not None:
            onto.add_axiom(axiom)

    def axiom(self, node: _Call) -> Optional[Axiom]:
        keyword, args = node.keyword, node.args

        if keyword == "SubClassOf":
            self._arity(node, 2)
            return SubClassOf(self.expression(args[0]), self.expression(args[1]))

        if keyword == "EquivalentClasses":
            if len(args) < 2:
                raise _Fatal(node.loc, f"EquivalentClasses требует минимум 2 операнда, получено {len(args)}")
            return EquivalentClasses(tuple(self.expression(arg) for arg in args))

        if keyword == "SubObjectPropertyOf":
            self._arity(node, 2)
            sub, sup = args
            if isinstance(sub, _Call) and sub.keyword == "ObjectPropertyChain":
                if len(sub.args) != 2:
                    raise _Skip(sub.loc, f"поддерживаются только цепочки длины 2, получено {len(sub.args)}")
                return SubPropertyChainOf((self.iri(sub.args[0]), self.iri(sub.args[1])), self.iri(sup))
            return SubObjectPropertyOf(self.iri(sub), self.iri(sup))

        if keyword == "TransitiveObjectProperty":
            self._arity(node, 1)
            role = self.iri(args[0])
            return SubPropertyChainOf((role, role), role)

        if keyword == "ClassAssertion":
            self._arity(node, 2)
            return ClassAssertion(self.expression(args[0]), self.iri(args[1]))

        if keyword == "ObjectPropertyAssertion":
            self._arity(node, 3)
            return ObjectPropertyAssertion(self.iri(args[0]), self.iri(args[1]), self.iri(args[2]))

        if keyword == "AnnotationAssertion":
            self._arity(node, 3)
            prop, subject, value = args
            if isinstance(value, _Call) or value.kind != "literal":
                raise _Skip(node.loc, "значение аннотации не литерал, пропущено")
            lexical, language = _split_literal(value.text)
            return AnnotationAssertion(self.iri(subject), self.iri(prop), lexical, language)

        if keyword in _UNSUPPORTED_AXIOMS:
            raise _Skip(node.loc, f"неподдерживаемая аксиома {keyword}")
        raise _Fatal(node.loc, f"неизвестное ключевое слово {keyword}")


@dataclass
class ParseResult:
    """Результат разбора документа: онтология (или None) и диагностика"""
    ontology: Optional[Ontology]
    diagnostics: List[ParseDiagnostic] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.ontology is not None

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == Severity.ERROR]

    @property
    def warnings(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == Severity.WARNING]


def _syntax_error(text: str, e: pp.ParseBaseException) -> ParseDiagnostic:
    return _diagnostic(text, e.loc, f"синтаксическая ошибка: {e.msg}")


def parse_ontology(text: str) -> ParseResult:
    """Разбор документа Functional-Style; неподдерживаемые конструкции пропускаются с предупреждением"""
    unbalanced = _check_parentheses(text)
    if unbalanced:
        return ParseResult(None, [unbalanced])

    try:
        parsed = _DOCUMENT.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        return ParseResult(None, [_syntax_error(text, e)])

    prefix_decls, root = parsed[0], parsed[1]
    prefixes = dict(STANDARD_PREFIXES)
    declared: Dict[str, str] = {}
    for _, name, iri, _ in prefix_decls:
        declared[name[:-1]] = iri[1:-1]
    prefixes.update(declared)

    converter = _Converter(text, prefixes)
    if root.keyword != "Ontology":
        converter.error(root.loc, f"ожидалось Ontology(...), получено {root.keyword}")
        return ParseResult(None, converter.diagnostics)

    args = list(root.args)
    header: List[str] = []
    while args and isinstance(args[0], _Token):
        token = args.pop(0)
        try:
            header.append(converter.iri(token))
        except (_Fatal, _Skip) as e:
            converter.error(e.loc, e.message)

    onto = Ontology(header[0] if header else "", declared)
    for node in args:
        try:
            converter.statement(node, onto)
        except _Skip as e:
            converter.warn(e.loc, e.message)
        except _Fatal as e:
            converter.error(e.loc, e.message)
        except ValidationError as e:
            converter.error(node.loc, str(e))

    result = ParseResult(onto, converter.diagnostics, converter.skipped)
    if result.errors:
        result.ontology = None
    return result


def load_ontology(path: str) -> Ontology:
    """Загрузка онтологии из файла .ofn; при ошибках разбора выбрасывается ParseError"""
    result = parse_ontology(read_text(path))
    for diagnostic in result.warnings:
        logger.debug(f"{path}:{diagnostic}")
    if result.warnings:
        logger.warning(f"⚠️ {path}: пропущено неподдерживаемых конструкций: {result.skipped}")
    if not result.ok:
        for diagnostic in result.errors:
            logger.error(f"{path}:{diagnostic}")
        raise ParseError(result.diagnostics)

    onto = result.ontology
    logger.info(f"Загружена онтология {path}: концептов {len(onto.concepts)}, аксиом {len(onto)}")
    return onto


# Синтаксические деревья выражений

class NodeKind(str, Enum):
    NAMED = "named"
    TOP = "top"
    BOTTOM = "bottom"
    AND = "and"
    OR = "or"
    NOT = "not"
    SOME = "some"
    ONLY = "only"


@dataclass(frozen=True)
class SyntaxNode:
    """Узел синтаксического дерева; iri хранит концепт для named и роль для some/only"""
    kind: NodeKind
    iri: Optional[str] = None
    children: Tuple["SyntaxNode", ...] = ()
    span: Optional[Tuple[int, int]] = field(default=None, compare=False)

    def walk(self) -> Iterator["SyntaxNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_expression(self) -> ConceptExpression:
        if self.kind == NodeKind.NAMED:
            return Named(self.iri)
        if self.kind == NodeKind.TOP:
            return Top()
        if self.kind == NodeKind.BOTTOM:
            return Bottom()
        if self.kind == NodeKind.AND:
            return And(tuple(child.to_expression() for child in self.children))
        if self.kind == NodeKind.OR:
            return Or(tuple(child.to_expression() for child in self.children))
        if self.kind == NodeKind.NOT:
            return Not(self.children[0].to_expression())
        filler = self.children[0].to_expression()
        return Some(self.iri, filler) if self.kind == NodeKind.SOME else Only(self.iri, filler)

    @classmethod
    def from_expression(cls, expr: ConceptExpression) -> "SyntaxNode":
        if isinstance(expr, Named):
            return cls(NodeKind.NAMED, expr.iri)
        if isinstance(expr, Top):
            return cls(NodeKind.TOP)
        if isinstance(expr, Bottom):
            return cls(NodeKind.BOTTOM)
        if isinstance(expr, (And, Or)):
            kind = NodeKind.AND if isinstance(expr, And) else NodeKind.OR
            return cls(kind, children=tuple(cls.from_expression(op) for op in expr.operands))
        if isinstance(expr, Not):
            return cls(NodeKind.NOT, children=(cls.from_expression(expr.operand),))
        kind = NodeKind.SOME if isinstance(expr, Some) else NodeKind.ONLY
        return cls(kind, expr.role, (cls.from_expression(expr.filler),))

    def render(self, prefixes: Optional[Dict[str, str]] = None) -> str:
        return render_expression(self.to_expression(), prefixes)


SyntaxTree = SyntaxNode

_NODE_KINDS = {
    "ObjectIntersectionOf": NodeKind.AND,
    "ObjectUnionOf": NodeKind.OR,
    "ObjectComplementOf": NodeKind.NOT,
    "ObjectSomeValuesFrom": NodeKind.SOME,
    "ObjectAllValuesFrom": NodeKind.ONLY,
}


def _to_syntax_node(converter: _Converter, node) -> SyntaxNode:
    if not isinstance(node, _Call):
        iri = converter.iri(node)
        span = (node.loc, node.end)
        if iri == OWL_THING:
            return SyntaxNode(NodeKind.TOP, span=span)
        if iri == OWL_NOTHING:
            return SyntaxNode(NodeKind.BOTTOM, span=span)
        return SyntaxNode(NodeKind.NAMED, iri, span=span)

    # проверка арности и поддержки конструктора
    converter.expression(node)
    kind = _NODE_KINDS[node.keyword]
    span = (node.loc, node.end)
    if kind in (NodeKind.SOME, NodeKind.ONLY):
        role = converter.iri(node.args[0])
        return SyntaxNode(kind, role, (_to_syntax_node(converter, node.args[1]),), span)
    children = tuple(_to_syntax_node(converter, arg) for arg in node.args)
    return SyntaxNode(kind, children=children, span=span)


def parse_concept_expression(text: str, onto: Optional[Ontology] = None) -> SyntaxNode:
    """Разбор строки выражения концепта в синтаксическое дерево.

    Сокращённые IRI разрешаются по префиксам онтологии и стандартным префиксам.
    """
    unbalanced = _check_parentheses(text)
    if unbalanced:
        raise ParseError([unbalanced])
    try:
        parsed = _EXPRESSION.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ParseError([_syntax_error(text, e)])

    prefixes = dict(STANDARD_PREFIXES)
    if onto is not None:
        prefixes.update(onto.prefixes)
    converter = _Converter(text, prefixes)
    try:
        return _to_syntax_node(converter, parsed[0])
    except (_Fatal, _Skip) as e:
        raise ParseError([_diagnostic(text, e.loc, e.message)])


# Запись

def _reverse_prefixes(prefixes: Optional[Dict[str, str]]) -> List[Tuple[str, str]]:
    merged = dict(STANDARD_PREFIXES)
    merged.update(prefixes or {})
    return sorted(((ns, name) for name, ns in merged.items() if ns), key=lambda p: (-len(p[0]), p[1]))


def render_iri(iri: str, prefixes: Optional[Dict[str, str]] = None,
               _reverse: Optional[List[Tuple[str, str]]] = None) -> str:
    for ns, name in _reverse if _reverse is not None else _reverse_prefixes(prefixes):
        if iri.startswith(ns) and _LOCAL_NAME.match(iri[len(ns):]):
            return f"{name}:{iri[len(ns):]}"
    return f"<{iri}>"


def render_expression(expr: ConceptExpression, prefixes: Optional[Dict[str, str]] = None,
                      _reverse: Optional[List[Tuple[str, str]]] = None) -> str:
    """Каноническая запись выражения в Functional-Style"""
    rev = _reverse if _reverse is not None else _reverse_prefixes(prefixes)

    def iri(value: str) -> str:
        return render_iri(value, _reverse=rev)

    def go(e: ConceptExpression) -> str:
        if isinstance(e, Named):
            return iri(e.iri)
        if isinstance(e, Top):
            return iri(OWL_THING)
        if isinstance(e, Bottom):
            return iri(OWL_NOTHING)
        if isinstance(e, And):
            return "ObjectIntersectionOf(" + " ".join(go(op) for op in e.operands) + ")"
        if isinstance(e, Or):
            return "ObjectUnionOf(" + " ".join(go(op) for op in e.operands) + ")"
        if isinstance(e, Not):
            return f"ObjectComplementOf({go(e.operand)})"
        if isinstance(e, Some):
            return f"ObjectSomeValuesFrom({iri(e.role)} {go(e.filler)})"
        return f"ObjectAllValuesFrom({iri(e.role)} {go(e.filler)})"

    return go(expr)


def _render_literal(literal: str, language: Optional[str]) -> str:
    escaped = literal.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"' + (f"@{language}" if language else "")


def render_axiom(axiom: Axiom, prefixes: Optional[Dict[str, str]] = None,
                 _reverse: Optional[List[Tuple[str, str]]] = None) -> str:
    rev = _reverse if _reverse is not None else _reverse_prefixes(prefixes)

    def iri(value: str) -> str:
        return render_iri(value, _reverse=rev)

    def expr(e: ConceptExpression) -> str:
        return render_expression(e, _reverse=rev)

    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({expr(axiom.sub)} {expr(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return "EquivalentClasses(" + " ".join(expr(op) for op in axiom.operands) + ")"
    if isinstance(axiom, SubObjectPropertyOf):
        return f"SubObjectPropertyOf({iri(axiom.sub)} {iri(axiom.sup)})"
    if isinstance(axiom, SubPropertyChainOf):
        first, second = axiom.chain
        return f"SubObjectPropertyOf(ObjectPropertyChain({iri(first)} {iri(second)}) {iri(axiom.sup)})"
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({expr(axiom.concept)} {iri(axiom.individual)})"
    if isinstance(axiom, ObjectPropertyAssertion):
        return f"ObjectPropertyAssertion({iri(axiom.role)} {iri(axiom.subject)} {iri(axiom.object)})"
    return (f"AnnotationAssertion({iri(axiom.property)} {iri(axiom.subject)} "
            f"{_render_literal(axiom.literal, axiom.language)})")


def serialize_ontology(onto: Ontology) -> str:
    """Документ Functional-Style: префиксы, объявления, затем аксиомы в порядке добавления"""
    prefixes = dict(STANDARD_PREFIXES)
    prefixes.update(onto.prefixes)
    rev = _reverse_prefixes(onto.prefixes)

    lines = [f"Prefix({name}:=<{ns}>)" for name, ns in sorted(prefixes.items())]
    lines.append("")
    lines.append(f"Ontology(<{onto.iri}>" if onto.iri else "Ontology(")

    for kind, entities in (
        (EntityKind.CLASS, onto.concepts),
        (EntityKind.OBJECT_PROPERTY, onto.roles),
        (EntityKind.NAMED_INDIVIDUAL, onto.individuals),
        (EntityKind.ANNOTATION_PROPERTY, onto.annotation_properties),
    ):
        for entity in sorted(entities):
            lines.append(f"Declaration({kind.value}({render_iri(entity, _reverse=rev)}))")

    for axiom in onto.axioms:
        lines.append(render_axiom(axiom, _reverse=rev))

    lines.append(")")
    return "\n".join(lines) + "\n"


def save_ontology(onto: Ontology, path: str) -> None:
    atomic_write_text(path, serialize_ontology(onto))
    logger.info(f"Онтология сохранена в {path}: аксиом {len(onto)}")
