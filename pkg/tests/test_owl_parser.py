import glob

import pytest

from models import (
    OWL_THING, RDFS_LABEL,
    And, AnnotationAssertion, Bottom, ClassAssertion, Named, Not, ObjectPropertyAssertion,
    ParseError, Severity, Some, SubClassOf, SubObjectPropertyOf, SubPropertyChainOf, Top, axiom_signature,
)
from ontology import Ontology
from owl_parser import (
    NodeKind, SyntaxNode, load_ontology, parse_concept_expression, parse_ontology, render_expression, save_ontology,
    serialize_ontology,
)
from tests.helpers import DATA_DIR, data_path
from utils.file_utils import read_text

X = "http://x#"
HEADER = "Prefix(:=<http://x#>)\nOntology(<http://x>\n"
FAMILY = "http://example.org/family#"


def test_minimal_document():
    result = parse_ontology("Prefix(:=<http://x#>)\nOntology(<http://x> SubClassOf(:A :B))")
    assert result.ok
    onto = result.ontology
    assert onto.iri == "http://x"
    assert onto.axioms == [SubClassOf(Named(X + "A"), Named(X + "B"))]
    assert onto.signature == {X + "A", X + "B"}
    assert result.diagnostics == []


def test_unsupported_construct_is_skipped_with_warning():
    text = HEADER + "SubClassOf(:A ObjectMinCardinality(1 :r :B))\nSubClassOf(:A :C)\n)"
    result = parse_ontology(text)
    assert result.ok
    assert result.skipped == 1
    assert len(result.warnings) == 1
    assert result.warnings[0].line == 3
    assert result.warnings[0].severity == Severity.WARNING
    assert result.ontology.axioms == [SubClassOf(Named(X + "A"), Named(X + "C"))]


def test_unclosed_parenthesis_location():
    result = parse_ontology("SubClassOf(:A")
    assert not result.ok
    assert result.ontology is None
    assert (result.errors[0].line, result.errors[0].column) == (1, 11)


def test_family_document():
    result = parse_ontology(read_text(data_path("family.ofn")))
    assert result.ok
    assert result.skipped == 3
    onto = result.ontology

    assert SubObjectPropertyOf(FAMILY + "hasChild", FAMILY + "hasDescendant") in onto
    assert SubPropertyChainOf((FAMILY + "hasDescendant",) * 2, FAMILY + "hasDescendant") in onto
    # транзитивность переводится в цепочку r∘r ⊑ r
    assert SubPropertyChainOf((FAMILY + "hasRelative",) * 2, FAMILY + "hasRelative") in onto
    assert ClassAssertion(Named(FAMILY + "Mother"), FAMILY + "ann") in onto
    assert ObjectPropertyAssertion(FAMILY + "hasChild", FAMILY + "ann", FAMILY + "bob") in onto
    assert SubClassOf(Named(FAMILY + "Woman"), Top()) in onto
    assert SubClassOf(Named(FAMILY + "Childless"), Not(Named(FAMILY + "Parent"))) in onto
    assert "http://example.org/other#Guardian" in onto.concepts

    assert onto.labels(FAMILY + "Mother") == ["mother", "Mutter"]
    assert onto.labels(FAMILY + "Mother", FAMILY + "synonym") == ['the "mum"']
    assert AnnotationAssertion(FAMILY + "Mother", RDFS_LABEL, "mother", "en") in onto
    assert onto.labels(FAMILY + "Person", "http://www.w3.org/2000/01/rdf-schema#comment") == [
        "an individual human\\being",
    ]


def test_signature_is_declarations_plus_mentions():
    onto = load_ontology(data_path("family.ofn"))
    mentioned = set()
    for axiom in onto.axioms:
        sig = axiom_signature(axiom)
        mentioned.update(sig.concepts, sig.roles, sig.individuals, sig.annotation_properties)
    declared = {FAMILY + name for name in (
        "Person", "Parent", "Mother", "Woman", "Childless", "hasChild", "hasDescendant",
        "hasRelative", "ann", "bob", "synonym",
    )}
    assert onto.signature == (declared | mentioned) - {OWL_THING}


@pytest.mark.parametrize("path", sorted(glob.glob(f"{DATA_DIR}/*.ofn")))
def test_round_trip(path):
    original = load_ontology(path)
    reparsed = parse_ontology(serialize_ontology(original))
    assert reparsed.ok, reparsed.diagnostics
    assert reparsed.ontology.signature == original.signature
    assert set(reparsed.ontology.axioms) == set(original.axioms)
    assert len(reparsed.ontology) == len(original)


def test_serialize_empty_ontology():
    text = serialize_ontology(Ontology())
    assert not [line for line in text.splitlines() if line.startswith(("Declaration", "SubClassOf"))]
    assert parse_ontology(text).ok


def test_serialize_single_axiom():
    onto = Ontology("http://x", {"": X}).add_axiom(SubClassOf(Named(X + "A"), Named(X + "B")))
    lines = serialize_ontology(onto).splitlines()
    assert [line for line in lines if line.startswith("SubClassOf")] == ["SubClassOf(:A :B)"]


def test_serialize_uses_full_iri_when_no_prefix_fits():
    onto = Ontology("http://x").add_axiom(SubClassOf(Named("http://other.org/ab"), Named("urn:normal#N1")))
    text = serialize_ontology(onto)
    assert "SubClassOf(<http://other.org/ab> <urn:normal#N1>)" in text


# Малформированные документы: (текст, строка, столбец)
MALFORMED = [
    ("SubClassOf(:A", 1, 11),
    ("Ontology(<http://x> SubClassOf(:A :B)", 1, 9),
    ("Ontology(<http://x>))", 1, 21),
    ("Ontology(<http://x>\nSubClassOf(ex:A :B))", 2, 12),
    (HEADER + "SubClassOff(:A :B)\n)", 3, 1),
    (HEADER + "SubClassOf(:A ObjectIntersectionOf(:B))\n)", 3, 15),
    (HEADER + "SubClassOf(:A)\n)", 3, 1),
    (HEADER + 'SubClassOf(:A "literal")\n)', 3, 15),
    (HEADER + "SubClassOf(:A ObjectSomeValuesFrom(:r))\n)", 3, 15),
    (HEADER + "Declaration(Klass(:A))\n)", 3, 13),
    ("Prefix(:=<http://x#>)\nSubClassOf(:A :B)", 2, 1),
    (HEADER + "foo\n)", 3, 1),
    (HEADER + 'AnnotationAssertion(rdfs:label :A "open)\n)', 3, 20),
    (HEADER + "Declaration(Class(foo:A))\n)", 3, 19),
    ('Prefix(:=<http://x#>)\nOntology("x")', 2, 10),
    ("", 1, 1),
    (HEADER + "ObjectPropertyAssertion(:r :a)\n)", 3, 1),
    (HEADER + "EquivalentClasses(:A)\n)", 3, 1),
    (HEADER + "ClassAssertion(:A ObjectSomeValuesFrom(:r :B))\n)", 3, 19),
    (HEADER + "SubClassOf(:A :B)\n:C)", 4, 1),
]


@pytest.mark.parametrize("text,line,column", MALFORMED)
def test_malformed_input_reports_location(text, line, column):
    result = parse_ontology(text)
    assert not result.ok
    first = result.errors[0]
    assert first.severity == Severity.ERROR
    assert (first.line, first.column) == (line, column)


@pytest.mark.parametrize("text", [text for text, _, _ in MALFORMED])
def test_diagnostics_are_deterministic(text):
    assert parse_ontology(text).diagnostics == parse_ontology(text).diagnostics


def test_load_ontology_raises_parse_error(tmp_path):
    path = tmp_path / "broken.ofn"
    path.write_text("Ontology(<http://x>", encoding="utf-8")
    with pytest.raises(ParseError) as e:
        load_ontology(str(path))
    assert e.value.diagnostics[0].line == 1


def test_save_and_load_keep_axioms(tmp_path, food):
    path = str(tmp_path / "out" / "food.ofn")
    save_ontology(food, path)
    loaded = load_ontology(path)
    assert set(loaded.axioms) == set(food.axioms)
    assert read_text(path) == serialize_ontology(food)


# Выражения

FOOD_EXPR = ("ObjectIntersectionOf(:FoodProduct ObjectSomeValuesFrom(:derivesFrom "
             "ObjectUnionOf(:InvertebrateAnimal :VertebrateAnimal)))")


def test_parse_expression_tree_shape(food):
    tree = parse_concept_expression(FOOD_EXPR, food)
    assert tree.kind == NodeKind.AND
    assert [child.kind for child in tree.children] == [NodeKind.NAMED, NodeKind.SOME]
    some = tree.children[1]
    assert some.iri == "http://example.org/food#derivesFrom"
    assert some.children[0].kind == NodeKind.OR
    assert len(some.children[0].children) == 2


def test_parse_expression_leaves():
    onto = Ontology("http://x", {"": X})
    leaf = parse_concept_expression(":A", onto)
    assert leaf.kind == NodeKind.NAMED and leaf.iri == X + "A" and leaf.children == ()

    negation = parse_concept_expression("ObjectComplementOf(owl:Thing)", onto)
    assert negation.kind == NodeKind.NOT
    assert negation.children[0].kind == NodeKind.TOP
    assert negation.to_expression() == Not(Top())
    assert parse_concept_expression("owl:Nothing").to_expression() == Bottom()


def test_expression_spans_reparse_to_equal_subtrees(food):
    tree = parse_concept_expression(FOOD_EXPR, food)
    for node in tree.walk():
        start, end = node.span
        assert parse_concept_expression(FOOD_EXPR[start:end], food) == node


def test_expression_render_is_canonical(food):
    tree = parse_concept_expression("  ObjectIntersectionOf( :FoodProduct\n :Animal )", food)
    rendered = tree.render(food.prefixes)
    assert rendered == "ObjectIntersectionOf(:FoodProduct :Animal)"
    assert parse_concept_expression(rendered, food) == tree
    assert tree.to_expression() == And((Named("http://example.org/food#Animal"),
                                        Named("http://example.org/food#FoodProduct")))


def test_expression_errors():
    onto = Ontology("http://x", {"": X})
    with pytest.raises(ParseError, match="nope"):
        parse_concept_expression("nope:A", onto)
    with pytest.raises(ParseError):
        parse_concept_expression("ObjectIntersectionOf(:A)", onto)
    with pytest.raises(ParseError):
        parse_concept_expression("ObjectIntersectionOf(:A :B", onto)


def test_render_expression_with_full_iris():
    expr = Some("http://x#r", Named(X + "A"))
    assert render_expression(expr) == "ObjectSomeValuesFrom(<http://x#r> <http://x#A>)"
    assert render_expression(expr, {"": X}) == "ObjectSomeValuesFrom(:r :A)"


def test_tree_from_expression(food):
    tree = parse_concept_expression(FOOD_EXPR, food)
    assert SyntaxNode.from_expression(tree.to_expression()) == tree
    assert SyntaxNode.from_expression(Not(Top())).kind == NodeKind.NOT
