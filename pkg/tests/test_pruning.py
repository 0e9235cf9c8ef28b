import pytest

from models import (
    OWL_THING, RDFS_LABEL,
    AnnotationAssertion, EntityNotFoundError, Named, Some, SubClassOf, ValidationError, axiom_mentions,
)
from pruning import prune, prune_keep, removal_order
from reasoner import told_closure
from tests import oracles
from tests.helpers import hierarchy, iri

A, B, C, D = (Named(iri(n)) for n in "ABCD")
R = iri("r")


def mentions_anywhere(onto, removed):
    return any(axiom_mentions(axiom) & removed for axiom in onto.axioms)


def test_prune_bridges_parent_and_child():
    onto = hierarchy(("A", "B"), ("B", "C"), labels={"B": "b"})
    result = prune(onto, {iri("B")})
    assert SubClassOf(A, C) in result
    assert iri("B") not in result.signature
    assert not mentions_anywhere(result, {iri("B")})
    assert len(onto) == 3


def test_prune_bridges_complex_parent():
    onto = hierarchy(("A", "B"), ("B", "C"))
    onto.add_axiom(SubClassOf(B, Some(R, D)))
    result = prune(onto, {iri("B")})
    assert SubClassOf(A, C) in result
    assert SubClassOf(A, Some(R, D)) in result


def test_prune_drops_foreign_expression_mentioning_removed():
    onto = hierarchy(("A", "B"))
    onto.add_axiom(SubClassOf(C, Some(R, B)))
    result = prune(onto, {iri("B")})
    assert not mentions_anywhere(result, {iri("B")})
    assert SubClassOf(C, Some(R, B)) not in result
    assert result.concepts == {iri("A"), iri("C")}


def test_prune_nothing_is_identity():
    onto = hierarchy(("A", "B"), ("B", "C"))
    result = prune(onto, set())
    assert result is not onto
    assert result.axioms == onto.axioms
    assert result.signature == onto.signature


def test_prune_rejects_top_and_unknown():
    onto = hierarchy(("A", "B"))
    with pytest.raises(ValidationError):
        prune(onto, {OWL_THING})
    with pytest.raises(EntityNotFoundError):
        prune(onto, {iri("Z")})


def test_prune_removes_annotations():
    onto = hierarchy(("A", "B"), labels={"A": "a", "B": "b"})
    result = prune(onto, {iri("A")})
    assert AnnotationAssertion(iri("A"), RDFS_LABEL, "a") not in result
    assert result.labels(iri("B")) == ["b"]


def test_removal_order_children_first():
    onto = hierarchy(("A", "B"), ("B", "C"), ("D", "C"))
    assert removal_order(onto, {iri("A"), iri("B"), iri("C"), iri("D")}) == [
        iri("A"), iri("B"), iri("D"), iri("C"),
    ]


def test_prune_chain_of_ancestors():
    onto = hierarchy(("A", "B"), ("B", "C"), ("C", "D"))
    result = prune(onto, {iri("B"), iri("C")})
    assert SubClassOf(A, D) in result
    assert result.concepts == {iri("A"), iri("D")}


def test_prune_keep_inverts_selection():
    onto = hierarchy(("A", "B"), ("B", "C"))
    result = prune_keep(onto, {iri("A"), iri("C")})
    assert result.concepts == {iri("A"), iri("C")}
    assert SubClassOf(A, C) in result
    with pytest.raises(EntityNotFoundError):
        prune_keep(onto, {iri("Z")})


def _random_case(rng, with_restrictions):
    n = int(rng.integers(2, 16))
    edges = oracles.random_dag_edges(rng, n, density=0.25)
    onto = oracles.dag_ontology(n, edges)
    names = oracles.concept_names(n)
    role = oracles.role_names(1)[0]
    if with_restrictions:
        for _ in range(int(rng.integers(0, 4))):
            sub, filler = rng.choice(n, size=2)
            onto.add_axiom(SubClassOf(Named(names[int(sub)]), Some(role, Named(names[int(filler)]))))
    mask = rng.random(n) < 0.35
    removed = {name for name, drop in zip(names, mask) if drop}
    return onto, names, edges, removed


def test_random_pruning_preserves_reachability(rng):
    for _ in range(300):
        onto, names, edges, removed = _random_case(rng, with_restrictions=True)
        result = prune(onto, removed)

        survivors = set(names) - removed
        reach = oracles.reachability(names, edges)
        expected = {(a, b) for a in survivors for b in reach[a] if b in survivors}
        assert expected <= told_closure(result).restrict(survivors)

        assert not mentions_anywhere(result, removed)
        assert not (result.signature & removed)


def test_pruning_composes(rng):
    for _ in range(100):
        onto, names, _, removed = _random_case(rng, with_restrictions=False)
        removed = sorted(removed)
        first, second = set(removed[::2]), set(removed[1::2])
        survivors = set(names) - first - second

        stepwise = prune(prune(onto, first), second)
        at_once = prune(onto, first | second)
        assert told_closure(stepwise).restrict(survivors) == told_closure(at_once).restrict(survivors)
