import numpy as np
import pytest

from owl_parser import load_ontology
from tests.helpers import data_path


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def food():
    return load_ontology(data_path("food.ofn"))


@pytest.fixture
def toy_source():
    return load_ontology(data_path("toy_source.ofn"))


@pytest.fixture
def toy_target():
    return load_ontology(data_path("toy_target.ofn"))
