import os

from models import RDFS_LABEL, AnnotationAssertion, Named, SubClassOf
from ontology import Ontology

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
EX = "http://example.org/test#"


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def iri(name: str) -> str:
    return EX + name


def hierarchy(*edges, labels=None) -> Ontology:
    """Онтология из пар (child, parent) с локальными именами и необязательными метками"""
    onto = Ontology("http://example.org/test")
    for child, parent in edges:
        onto.add_axiom(SubClassOf(Named(iri(child)), Named(iri(parent))))
    for name, label in (labels or {}).items():
        onto.add_axiom(AnnotationAssertion(iri(name), RDFS_LABEL, label))
    return onto
