import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import oracle_ar
from wnbuild.bilingual import DirectedEntry, Direction, merge_directions
from wnbuild.fixtures import TOY_WORDNET
from wnbuild.graph import load_wordnet
from wnbuild.semtag import (
    Definition,
    Method,
    SalientLexicon,
    TaggedDefinition,
    association_ratio,
    extract_genus,
    label_definitions,
    read_lexicon,
    read_monolingual,
    read_tagged,
    select_core_concepts,
    tag_seed_by_distance,
    tokenize,
    train_salient,
    write_lexicon,
    write_tagged,
)


def defn(head, text, genus=None, sense=1):
    return Definition(head, sense, tokenize(text), genus)


def seed(tag, text, head="h", sense=1):
    return TaggedDefinition(defn(head, text, sense=sense), tag, 0.0, Method.DISTANCE_SEED)


def test_extract_genus():
    stop = frozenset({"de"})
    assert extract_genus(defn("vino", "zumo de uva", "bebida")) == "bebida"
    assert extract_genus(defn("vino", "bebida alcohólica de uva"), stop) == "bebida"
    assert extract_genus(defn("x", "de de"), stop) is None


def test_tokenize_keeps_accents():
    assert tokenize("Bebida alcohólica, de uva.") == ("bebida", "alcohólica", "de", "uva")


def test_seed_tagging():
    g = load_wordnet(TOY_WORDNET.splitlines())
    bi = merge_directions(
        [DirectedEntry(w, Direction.TGT_TO_SRC, (t,)) for w, t in [("vino", "wine"), ("zumo", "juice"), ("perro", "dog")]]
    )
    defs = [
        defn("vino", "zumo de uva", "zumo"),
        defn("mosto", "zumo de uva", "zumo"),  # headword untranslated
        defn("perro", "zumo raro", "zumo"),
    ]
    out = tag_seed_by_distance(defs, bi, g)
    tags = {t.key: t.tag for t in out}
    assert tags[("vino", 1)] == "food"
    assert ("mosto", 1) not in tags
    # dog and juice only meet at the root; still connected, tagged by the dog side
    assert tags[("perro", 1)] == "animal"
    g2 = load_wordnet(["a.n.01\tn\tfood\tjuice\t", "b.n.01\tn\tanimal\tdog\t"])
    assert tag_seed_by_distance(defs[2:], bi, g2) == []


def test_six_token_example():
    corpus = [seed("FOOD", "bebida uva"), seed("FOOD", "bebida fruta"), seed("ANIMAL", "perro ladra")]
    lex = train_salient(corpus)
    assert lex.scores[("bebida", "FOOD")] == pytest.approx(0.5 * math.log2(1.5), abs=1e-12)
    assert lex.scores[("bebida", "FOOD")] == pytest.approx(0.2925, abs=5e-5)
    assert ("bebida", "ANIMAL") not in lex.scores


def test_uniform_word_discarded():
    lex = train_salient([seed("FOOD", "a x"), seed("ANIMAL", "a y")])
    assert association_ratio(1, 2, 2, 4) == 0
    assert ("a", "FOOD") not in lex.scores and ("a", "ANIMAL") not in lex.scores


def test_empty_corpus():
    assert train_salient([]).scores == {}


def test_stopwords_not_counted():
    lex = train_salient([seed("FOOD", "de bebida"), seed("ANIMAL", "de perro")], frozenset({"de"}))
    assert not any(w == "de" for w, _ in lex.scores)
    assert lex.class_mass("FOOD") == 1


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_probabilities_sum_to_one(s):
    rng = random.Random(s)
    corpus = [seed(rng.choice("XYZ"), " ".join(rng.choices("abcdefg", k=rng.randint(1, 6)))) for _ in range(12)]
    lex = train_salient(corpus)
    n = sum(lex.total_counts.values())
    assert math.fsum(c / n for c in lex.total_counts.values()) == pytest.approx(1, abs=1e-9)
    for tag, counts in lex.class_counts.items():
        m = sum(counts.values())
        assert math.fsum(c / m for c in counts.values()) == pytest.approx(1, abs=1e-9)
    assert all(v > 0 for v in lex.scores.values())
    expected = oracle_ar([(t.tag, list(t.definition.text)) for t in corpus])
    assert set(expected) == set(lex.scores)


def test_label_examples():
    lex = train_salient([seed("FOOD", "bebida uva"), seed("FOOD", "bebida fruta"), seed("ANIMAL", "perro ladra")])
    out = label_definitions([defn("vino", "bebida de uva"), defn("x", "nada raro")], lex)
    assert [(t.key, t.tag, t.ambiguous) for t in out] == [(("vino", 1), "FOOD", False)]


def test_mirrored_tie_is_ambiguous_and_stable():
    lex = train_salient([seed("FOOD", "a x"), seed("ANIMAL", "b y")])
    assert lex.scores[("a", "FOOD")] == lex.scores[("b", "ANIMAL")]
    (t,) = label_definitions([defn("w", "a b")], lex)
    assert t.ambiguous and t.tag == "ANIMAL"


def test_tie_prefers_heavier_class():
    lex = SalientLexicon({("a", "FOOD"): 0.5, ("b", "ANIMAL"): 0.5}, masses={"FOOD": 10, "ANIMAL": 3})
    (t,) = label_definitions([defn("w", "a b")], lex)
    assert t.ambiguous and t.tag == "FOOD"


def test_sub_lexicon_coverage_monotone():
    rng = random.Random(11)
    corpus = [seed(rng.choice("XYZ"), " ".join(rng.choices("abcdefghij", k=4)), sense=i) for i in range(20)]
    lex = train_salient(corpus)
    defs = [defn("d", " ".join(rng.choices("abcdefghijkl", k=3)), sense=i) for i in range(30)]
    full = {t.key for t in label_definitions(defs, lex)}
    keys = sorted(lex.scores)
    sub = SalientLexicon({k: lex.scores[k] for k in keys[::2]}, masses=lex.masses)
    assert {t.key for t in label_definitions(defs, sub)} <= full


def test_core_concepts():
    words = ["a", "b", "c"]
    kept = select_core_concepts(
        words, {"a": 5, "b": 4, "c": 4}, {"b": 50, "c": 49}, {"b": 100, "c": 100}
    )
    assert kept == {"a", "b"}


def test_file_roundtrips(tmp_path):
    defs = read_monolingual(["# h", "vino\t1\tzumo\tzumo de uva", "vaso\t2\t-\tconducto del cuerpo"])
    assert defs[0].genus == "zumo" and defs[1].genus is None
    lex = train_salient([seed("FOOD", "bebida uva"), seed("ANIMAL", "perro ladra")])
    labelled = label_definitions(defs, lex)
    write_tagged(labelled, tmp_path / "t.tsv")
    assert read_tagged(tmp_path / "t.tsv") == labelled
    write_lexicon(lex, tmp_path / "lex.tsv")
    back = read_lexicon(tmp_path / "lex.tsv")
    assert back.scores == lex.scores
    assert back.class_mass("FOOD") == lex.class_mass("FOOD")
