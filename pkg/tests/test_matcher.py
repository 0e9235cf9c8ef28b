import pytest

from config import MatcherConfig
from matcher import (
    ConflictChecker, InvertedIndex, LexicalMatcher, Tokeniser, build_index, extend, lexical_score, match,
    one_to_one, rank_candidates, repair, select_candidates, sort_mappings, substring_match,
)
from models import RDFS_LABEL, AnnotationAssertion, Mapping, Named, SubClassOf, ValidationError
from ontology import EntityKind, Ontology
from reasoner import told_closure
from tests import oracles
from tests.helpers import data_path
from utils.mapping_io import format_score, read_mappings

S = "http://example.org/s#"
T = "http://example.org/t#"


def labelled(ns, labels, edges=()):
    """Онтология с объявленными концептами, метками и рёбрами (child, parent)"""
    onto = Ontology(ns.rstrip("#"))
    for name, label in labels.items():
        onto.declare(ns + name, EntityKind.CLASS)
        for text in ([label] if isinstance(label, str) else label):
            onto.add_axiom(AnnotationAssertion(ns + name, RDFS_LABEL, text))
    for child, parent in edges:
        onto.add_axiom(SubClassOf(Named(ns + child), Named(ns + parent)))
    return onto


# Пайплайн

def test_toy_alignment_matches_expected(toy_source, toy_target):
    expected = read_mappings(data_path("toy_expected.tsv"))
    result = match(toy_source, toy_target)
    assert result == expected
    assert [format_score(m.score) for m in result] == [format_score(m.score) for m in expected]


def test_toy_alignment_is_deterministic_across_threads(toy_source, toy_target):
    single = LexicalMatcher(MatcherConfig(threads=1)).match(toy_source, toy_target)
    pooled = LexicalMatcher(MatcherConfig(threads=4)).match(toy_source, toy_target)
    assert single == pooled
    assert [m.score for m in single] == [m.score for m in pooled]


def test_scores_respect_thresholds(toy_source, toy_target):
    cfg = MatcherConfig(threshold=0.95, extension_threshold=0.9)
    for m in LexicalMatcher(cfg).match(toy_source, toy_target):
        assert m.score >= min(cfg.threshold, cfg.extension_threshold)
    for m in LexicalMatcher(cfg).score_all(toy_source, toy_target):
        assert m.score >= cfg.threshold


def test_single_shared_exact_label():
    src = labelled(S, {"A": "heart attack", "B": "fever"})
    tgt = labelled(T, {"X": "heart attack", "Y": "pyrexia"})
    result = match(src, tgt, MatcherConfig(threshold=0.9))
    assert result == [Mapping(S + "A", T + "X")]
    assert result[0].score == 1.0


def test_threshold_one_keeps_exact_pairs_only(toy_source, toy_target):
    cfg = MatcherConfig(threshold=1.0, extension_threshold=1.0)
    result = LexicalMatcher(cfg).match(toy_source, toy_target)
    assert result
    assert all(m.score == 1.0 for m in result)


def test_empty_source_gives_no_mappings(toy_target):
    assert match(Ontology(), toy_target) == []


def test_one_to_one_flag(toy_source, toy_target):
    result = LexicalMatcher(MatcherConfig(one_to_one=True)).match(toy_source, toy_target)
    assert len({m.source for m in result}) == len(result)
    assert len({m.target for m in result}) == len(result)


def test_config_validation():
    with pytest.raises(ValidationError):
        MatcherConfig(threshold=1.5)
    with pytest.raises(ValidationError):
        MatcherConfig(k=0)
    with pytest.raises(ValidationError):
        MatcherConfig(reasoner="hermit")


# Индекс и кандидаты

def test_tokeniser_words_and_trigrams():
    assert Tokeniser().tokens("Heart Attack") == {
        "heart", "attack", "hea", "ear", "art", "att", "tta", "tac", "ack",
    }
    assert Tokeniser().tokens("a-b") == {"a", "b"}
    assert Tokeniser().tokens("a_b") == {"a", "b"}


def test_tokeniser_keeps_non_ascii_letters():
    tokeniser = Tokeniser()
    assert tokeniser.tokens("Café") == {"café", "caf", "afé"}
    assert tokeniser.words("Naïve Bayes") == ["naïve", "bayes"]
    assert tokeniser.words("Сердечный приступ") == ["сердечный", "приступ"]
    assert tokeniser.words("καρδιά") == ["καρδιά"]

    index = build_index(labelled(T, {"X": "сердечный приступ", "Y": "lung disease"}))
    assert select_candidates(index, ["Сердечный приступ"], 10) == [T + "X"]


def test_index_postings():
    index = build_index(labelled(T, {"X": "heart disease", "Y": "lung disease", "Z": []}))
    assert index.postings["disease"] == {T + "X", T + "Y"}
    assert T + "X" in index.postings["hea"]
    assert len(index) == 2
    assert index.token_stats["disease"] == 2
    assert len(build_index(Ontology())) == 0


def test_candidate_ranking():
    index = build_index(labelled(T, {"X": "heart attack", "Y": "lung disease"}))
    assert select_candidates(index, ["heart attack"], 10) == [T + "X"]
    assert select_candidates(index, ["xyz"], 10) == []
    with pytest.raises(ValidationError):
        select_candidates(index, ["heart attack"], 0)


def test_candidate_truncation_and_ties():
    index = build_index(labelled(T, {"B": "heart", "A": "heart", "C": "lung"}))
    assert select_candidates(index, ["heart"], 1) == [T + "A"]
    assert select_candidates(index, ["heart"], 50) == [T + "A", T + "B"]


def test_candidate_pool_is_complete(rng):
    vocabulary = ["heart", "lung", "disease", "attack", "acute", "tumour", "cell", "renal", "hear", "art"]
    for _ in range(100):
        documents = {}
        for i in range(int(rng.integers(1, 15))):
            words = rng.choice(vocabulary, size=int(rng.integers(0, 4)), replace=True)
            documents[f"{T}C{i}"] = [" ".join(words)] if len(words) else []
        index = InvertedIndex()
        for iri, labels in documents.items():
            index.add(iri, labels)
        query = [" ".join(rng.choice(vocabulary, size=2))]

        expected = oracles.overlap_pool(query, documents)
        ranked = dict(rank_candidates(index, query))
        assert set(ranked) == set(expected)
        for iri, score in expected.items():
            assert ranked[iri] == pytest.approx(score)


# Оценка

def test_lexical_score_examples():
    assert lexical_score(["heart attack"], ["Heart  Attack"]) == 1.0
    assert lexical_score(["colour"], ["color"]) == pytest.approx(1 - 1 / 6)
    assert lexical_score(["abc"], ["xyz"]) == 0.0
    assert lexical_score(["colour", "tumour"], ["tumour"]) == 1.0
    with pytest.raises(ValidationError):
        lexical_score([], ["x"])


def test_lexical_score_against_edit_distance(rng):
    alphabet = list("abcde ")
    for _ in range(200):
        x = " ".join("".join(rng.choice(alphabet, size=int(rng.integers(1, 8)))).split()) or "a"
        y = " ".join("".join(rng.choice(alphabet, size=int(rng.integers(1, 8)))).split()) or "b"
        score = lexical_score([x], [y])
        assert score == pytest.approx(lexical_score([y], [x]))
        if x == y:
            assert score == 1.0
        else:
            assert score == pytest.approx(1 - oracles.edit_distance(x, y) / max(len(x), len(y)))
            assert score < 1.0


# Подстроки

def test_substring_match():
    src = labelled(S, {"A": "heart attack", "B": "heart", "C": "asthma"})
    tgt = labelled(T, {"X": "acute heart attack", "Y": "hearing", "Z": "Asthma"})
    pairs = {(m.source, m.target) for m in substring_match(src, tgt)}
    assert (S + "A", T + "X") in pairs
    assert (S + "B", T + "X") in pairs
    assert (S + "B", T + "Y") not in pairs
    assert (S + "C", T + "Z") in pairs
    assert len(pairs) == 3


# Расширение

def test_extension_adds_matching_parents():
    src = labelled(S, {"A": "x", "B": "disease"}, [("A", "B")])
    tgt = labelled(T, {"A": "y", "B": "disease"}, [("A", "B")])
    result = extend([Mapping(S + "A", T + "A", score=0.5)], src, tgt, kappa=0.9)
    assert result == [Mapping(S + "A", T + "A"), Mapping(S + "B", T + "B")]
    assert result[1].score == 1.0


def test_extension_without_exact_neighbours_is_identity():
    src = labelled(S, {"A": "x", "B": "disease"}, [("A", "B")])
    tgt = labelled(T, {"A": "y", "B": "diseases"}, [("A", "B")])
    start = [Mapping(S + "A", T + "A")]
    assert extend(start, src, tgt, kappa=1.0) == start


def test_extension_walks_ancestor_chain():
    names = {"A": "a", "B": "bee", "C": "cee", "D": "dee"}
    edges = [("A", "B"), ("B", "C"), ("C", "D")]
    src, tgt = labelled(S, names, edges), labelled(T, names, edges)
    result = extend([Mapping(S + "A", T + "A")], src, tgt, kappa=0.9)
    assert {(m.source, m.target) for m in result} == {(S + n, T + n) for n in "ABCD"}


def test_extension_walks_children():
    names = {"P": "parent", "K": "kid"}
    src, tgt = labelled(S, names, [("K", "P")]), labelled(T, names, [("K", "P")])
    result = extend([Mapping(S + "P", T + "P")], src, tgt, kappa=0.9)
    assert Mapping(S + "K", T + "K") in result


# Ремонт

def repair_fixture():
    src = labelled(S, {"A": "a", "B": "b"}, [("A", "B")])
    tgt = labelled(T, {"X": "x", "Y": "y"})
    return told_closure(src), told_closure(tgt)


def test_repair_drops_lower_scored_conflict():
    src, tgt = repair_fixture()
    mappings = [Mapping(S + "B", T + "X", score=0.9), Mapping(S + "A", T + "Y", score=0.6)]
    assert ConflictChecker(src, tgt).conflicts(*mappings)
    assert repair(mappings, src, tgt) == [Mapping(S + "B", T + "X")]


def test_repair_leaves_consistent_input_alone():
    src, tgt = repair_fixture()
    consistent = [Mapping(S + "B", T + "X", score=0.9), Mapping(S + "A", T + "X", score=0.6)]
    assert repair(consistent, src, tgt) == consistent
    single = [Mapping(S + "A", T + "Y")]
    assert repair(single, src, tgt) == single
    unknown = [Mapping(S + "B", T + "X"), Mapping(S + "Q", T + "Y")]
    assert repair(unknown, src, tgt) == unknown


def test_repair_output_is_conflict_free(rng):
    for _ in range(100):
        n_src, n_tgt = int(rng.integers(2, 9)), int(rng.integers(2, 9))
        src_edges = oracles.random_dag_edges(rng, n_src)
        tgt_edges = oracles.random_dag_edges(rng, n_tgt)
        src_names, tgt_names = oracles.concept_names(n_src), oracles.concept_names(n_tgt)
        src_closure = told_closure(oracles.dag_ontology(n_src, src_edges))
        tgt_closure = told_closure(oracles.dag_ontology(n_tgt, tgt_edges))

        mappings = list(dict.fromkeys(
            Mapping(src_names[int(rng.integers(n_src))], tgt_names[int(rng.integers(n_tgt))],
                    score=round(float(rng.random()), 3))
            for _ in range(int(rng.integers(1, 10)))
        ))
        result = repair(mappings, src_closure, tgt_closure)

        assert set(result) <= set(mappings)
        src_reach = oracles.reachability(src_names, src_edges)
        tgt_reach = oracles.reachability(tgt_names, tgt_edges)
        assert oracles.conflicting_pairs(result, src_reach, tgt_reach) == []


def test_one_to_one_and_sorting():
    mappings = [
        Mapping(S + "B", T + "Y", score=0.6),
        Mapping(S + "A", T + "X", score=0.9),
        Mapping(S + "A", T + "Y", score=0.8),
        Mapping(S + "B", T + "X", score=0.7),
    ]
    assert one_to_one(mappings) == [Mapping(S + "A", T + "X"), Mapping(S + "B", T + "Y")]
    assert [m.score for m in sort_mappings(mappings)] == [0.9, 0.8, 0.7, 0.6]
