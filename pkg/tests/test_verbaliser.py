import re

import pytest

from models import (
    RDFS_LABEL,
    And, AnnotationAssertion, EntityNotFoundError, Named, Not, Only, Or, Some, Top, VerbalisationError,
)
from owl_parser import parse_concept_expression
from taxonomy import build_taxonomy
from tests.helpers import data_path, hierarchy, iri
from utils.file_utils import read_text
from utils.text_utils import LabelUtils
from verbaliser import SEPARATOR, Verbaliser, context_text, verbalise

LABELS = {"A": "a", "B": "b", "C": "c", "D": "d"}


def test_food_expression(food):
    tree = parse_concept_expression(read_text(data_path("food_expr.txt")).strip(), food)
    assert verbalise(tree, food) == "food product that derives from invertebrate animal or vertebrate animal"


def test_single_label_is_used():
    onto = hierarchy(labels={"A": "Disease"})
    assert verbalise(Named(iri("A")), onto) == "disease"


def test_named_conjunction():
    onto = hierarchy(labels={"A": "x", "B": "y"})
    assert verbalise(And((Named(iri("A")), Named(iri("B")))), onto) == "x and y"


def test_other_constructors():
    onto = hierarchy(labels={"A": "x", "B": "y"})
    part = iri("hasPart")
    x, y = Named(iri("A")), Named(iri("B"))
    assert verbalise(Not(x), onto) == "not x"
    assert verbalise(Only(part, x), onto) == "has part only x"
    assert verbalise(Some(part, x), onto) == "has part some x"
    assert verbalise(Or((x, Top())), onto) == "x or thing"
    assert verbalise(And((x, Only(part, y), Some(part, y))), onto) == "x that has part only y and has part y"
    assert verbalise(And((Some(part, x), Some(part, y))), onto) == "has part some x and has part some y"


def test_role_label_preferred_over_identifier():
    onto = hierarchy(labels={"A": "x"})
    onto.add_axiom(AnnotationAssertion(iri("partOf"), RDFS_LABEL, "is part of"))
    assert verbalise(Some(iri("partOf"), Named(iri("A"))), onto) == "is part of some x"


def test_missing_label_names_entity():
    onto = hierarchy(labels={"A": "x"})
    with pytest.raises(VerbalisationError) as e:
        verbalise(And((Named(iri("A")), Named(iri("B")))), onto)
    assert e.value.iri == iri("B")


def test_first_label_is_normalised():
    onto = hierarchy(labels={"A": "  Heart   ATTACK "})
    onto.add_axiom(AnnotationAssertion(iri("A"), RDFS_LABEL, "myocardial infarction"))
    assert Verbaliser(onto).concept(iri("A")) == "heart attack"


def test_output_has_no_iris_and_keeps_leaf_counts(food):
    tree = parse_concept_expression(read_text(data_path("food_expr.txt")).strip(), food)
    text = verbalise(tree, food)
    assert not re.search(r"[<>()#]|http", text)
    assert text.count("vertebrate animal") == 2


def test_split_identifier():
    assert LabelUtils.split_identifier("derivesFrom") == ["derives", "From"]
    assert LabelUtils.identifier_to_label("part_of") == "part of"
    assert LabelUtils.identifier_to_label("hasHTMLPage") == "has html page"


# Контексты

def diamond():
    return hierarchy(("A", "B"), ("A", "C"), ("B", "D"), ("C", "D"), labels=LABELS)


def test_isolated_context():
    onto = hierarchy(labels={"A": "Neoplasm"})
    onto.add_axiom(AnnotationAssertion(iri("A"), RDFS_LABEL, "tumour"))
    taxonomy = build_taxonomy(hierarchy(("A", "B")))
    assert context_text(onto, taxonomy, iri("A"), "IC") == "neoplasm"


def test_path_context_up():
    onto = hierarchy(("A", "B"), labels=LABELS)
    assert context_text(onto, build_taxonomy(onto), iri("A"), "PC", "up") == f"a{SEPARATOR}b"
    assert SEPARATOR == " <SEP> "


def test_path_context_follows_smallest_parent():
    onto = diamond()
    taxonomy = build_taxonomy(onto)
    assert context_text(onto, taxonomy, iri("A"), "PC", "up") == "a <SEP> b <SEP> d"
    assert context_text(onto, taxonomy, iri("D"), "PC", "down") == "d <SEP> b <SEP> a"


def test_breadth_first_context():
    onto = diamond()
    taxonomy = build_taxonomy(onto)
    assert context_text(onto, taxonomy, iri("A"), "BC", "up") == "a <SEP> b <SEP> c <SEP> d"
    assert context_text(onto, taxonomy, iri("D"), "BC", "down", limit=3) == "d <SEP> b <SEP> c"


def test_context_limit():
    onto = diamond()
    taxonomy = build_taxonomy(onto)
    assert context_text(onto, taxonomy, iri("B"), "BC", "up", limit=1) == "b"
    for limit in range(1, 5):
        text = context_text(onto, taxonomy, iri("A"), "PC", "up", limit=limit)
        assert len(text.split(SEPARATOR)) <= limit


def test_unlabelled_node_is_skipped_or_fatal():
    onto = hierarchy(("A", "B"), ("B", "C"), labels={"A": "a", "C": "c"})
    taxonomy = build_taxonomy(onto)
    assert context_text(onto, taxonomy, iri("A"), "PC", "up") == "a <SEP> c"
    with pytest.raises(VerbalisationError):
        context_text(onto, taxonomy, iri("A"), "PC", "up", strict=True)


def test_unknown_concept():
    onto = diamond()
    with pytest.raises(EntityNotFoundError):
        context_text(onto, build_taxonomy(onto), iri("Z"), "IC")
