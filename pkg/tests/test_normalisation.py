import pytest

from models import (
    OWL_NOTHING, OWL_THING,
    And, Bottom, EquivalentClasses, ModelConstants, Named, NonELError, Not, Only, Or, Some, SubClassOf,
    SubObjectPropertyOf, Top, ValidationError,
)
from normalisation import (
    AtomicSub, ConjSub, ExistsLeft, ExistsRight, RoleSub, normalise, render_definitions, simplify,
)
from ontology import Ontology
from reasoner import el_classify
from tests import oracles
from tests.helpers import iri

A, B, C, D, E = (Named(iri(n)) for n in "ABCDE")
R = iri("r")
N1 = f"{ModelConstants.FRESH_NAMESPACE}N1"


def normalised(*axioms, strict=True):
    return normalise(Ontology().add_axioms(axioms), strict=strict)


def test_conjunction_on_right_is_split():
    result = normalised(SubClassOf(C, And((D, Some(R, E)))))
    assert set(result.axioms) == {AtomicSub(iri("C"), iri("D")), ExistsRight(iri("C"), R, iri("E"))}
    assert result.definitions == {}


def test_normal_input_is_unchanged():
    result = normalised(SubClassOf(A, B))
    assert result.axioms == [AtomicSub(iri("A"), iri("B"))]
    assert result.definitions == {}


def test_existential_over_conjunction_on_left():
    result = normalised(SubClassOf(Some(R, And((A, B))), C))
    assert result.axioms == [ConjSub(iri("A"), iri("B"), N1), ExistsLeft(R, N1, iri("C"))]
    assert result.definitions == {N1: And((A, B))}

    closure = el_classify(result.to_ontology())
    original = el_classify(Ontology().add_axiom(SubClassOf(Some(R, And((A, B))), C)))
    keep = {iri("A"), iri("B"), iri("C"), OWL_THING, OWL_NOTHING}
    assert closure.restrict(keep) == original.restrict(keep)


def test_nary_conjunction_on_left_is_folded():
    result = normalised(SubClassOf(And((A, B, C)), D))
    assert len(result.axioms) == 2
    assert ConjSub(N1, iri("C"), iri("D")) in result.axioms
    assert ConjSub(iri("A"), iri("B"), N1) in result.axioms


def test_conjunction_operands_have_one_order():
    swapped = ConjSub(iri("B"), iri("A"), iri("C"))
    assert swapped == ConjSub(iri("A"), iri("B"), iri("C"))
    assert (swapped.left, swapped.right) == (iri("A"), iri("B"))
    assert len({swapped, ConjSub(iri("A"), iri("B"), iri("C"))}) == 1

    result = normalised(SubClassOf(And((B, A)), C), SubClassOf(And((C, Some(R, A))), D))
    assert ConjSub(iri("A"), iri("B"), iri("C")) in result.axioms
    assert set(normalise(result.to_ontology()).axioms) == set(result.axioms)


def test_equal_subexpressions_share_fresh_name():
    result = normalised(
        SubClassOf(A, Some(R, And((B, C)))),
        SubClassOf(D, Some(R, And((C, B)))),
    )
    assert len(result.definitions) == 1
    assert ExistsRight(iri("A"), R, N1) in result.axioms
    assert ExistsRight(iri("D"), R, N1) in result.axioms


def test_fresh_names_avoid_signature():
    taken = Named(N1)
    result = normalised(SubClassOf(taken, Some(R, And((A, B)))))
    assert N1 not in result.definitions
    assert set(result.definitions) == {f"{ModelConstants.FRESH_NAMESPACE}N2"}


def test_equivalence_becomes_two_directions():
    result = normalised(EquivalentClasses((A, And((B, C)))))
    assert set(result.axioms) == {
        AtomicSub(iri("A"), iri("B")),
        AtomicSub(iri("A"), iri("C")),
        ConjSub(iri("B"), iri("C"), iri("A")),
    }


def test_top_and_bottom_placement():
    result = normalised(SubClassOf(Top(), A), SubClassOf(B, Bottom()), SubClassOf(C, Top()))
    assert set(result.axioms) == {AtomicSub(OWL_THING, iri("A")), AtomicSub(iri("B"), OWL_NOTHING)}


def test_role_axioms_pass_through():
    result = normalised(SubObjectPropertyOf(R, iri("s")))
    assert result.axioms == [RoleSub(R, iri("s"))]


def test_normal_forms_validate_slots():
    with pytest.raises(ValidationError):
        AtomicSub(OWL_NOTHING, iri("A"))
    with pytest.raises(ValidationError):
        ExistsRight(iri("A"), R, OWL_THING)
    with pytest.raises(ValidationError):
        ExistsLeft(R, iri("A"), OWL_THING)


def test_non_el_constructors_strict_and_lenient():
    axioms = [SubClassOf(A, Or((B, C))), SubClassOf(A, Not(B)), SubClassOf(A, Only(R, B)), SubClassOf(A, D)]
    with pytest.raises(NonELError) as e:
        normalised(*axioms)
    assert [ctor for _, ctor in e.value.offending] == ["ObjectUnionOf", "ObjectComplementOf", "ObjectAllValuesFrom"]

    result = normalised(*axioms, strict=False)
    assert result.axioms == [AtomicSub(iri("A"), iri("D"))]
    assert len(result.skipped) == 3


def test_simplify():
    assert simplify(And((A, And((B, A))))) == And((A, B))
    assert simplify(And((A, Bottom()))) == Bottom()
    assert simplify(Some(R, Bottom())) == Bottom()
    assert simplify(And((A, A))) == A


def test_render_definitions():
    result = normalised(SubClassOf(Some(R, And((A, B))), C))
    text = render_definitions(result.definitions, {"": "http://example.org/test#"})
    assert text == f"{N1}: ObjectIntersectionOf(:A :B)\n"


def test_random_ontologies_normalise_soundly(rng):
    for _ in range(500):
        onto = oracles.random_el_ontology(rng, max_concepts=10, max_axioms=15)
        result = normalise(onto)

        assert all(oracles.is_normal_form(ax) for ax in result.axioms)

        renormalised = result.to_ontology()
        assert set(normalise(renormalised).axioms) == set(result.axioms)

        expected = oracles.naive_el_relation(result.axioms, onto.concepts)
        assert el_classify(onto).relation == expected

        shared = onto.concepts & renormalised.concepts
        keep = shared | {OWL_THING, OWL_NOTHING}
        assert el_classify(renormalised).restrict(keep) == {(c, d) for c, d in expected if c in keep and d in keep}
