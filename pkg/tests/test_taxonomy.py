import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import oracle_distance, oracle_taxonomy_nodes, random_taxonomy_input
from wnbuild.bilingual import DirectedEntry, Direction, merge_directions
from wnbuild.errors import ConfigError
from wnbuild.fixtures import DEMO_WORDNET
from wnbuild.graph import load_wordnet
from wnbuild.semtag import Definition, Method, TaggedDefinition, tokenize
from wnbuild.taxonomy import (
    GenusTable,
    GsdContext,
    apply_filters,
    build_taxonomy,
    collect_genus,
    disambiguate_genus,
    filter_f1,
    filter_f2,
    filter_f3,
    parse_filter_spec,
    read_taxonomies,
    select_top_beginners,
    structure_tops,
    write_taxonomies,
)


def defn(head, genus, sense=1, text=None):
    return Definition(head, sense, tokenize(text or f"{genus} algo"), genus)


def tagged(tag, head, genus, sense=1):
    return TaggedDefinition(defn(head, genus, sense), tag, 1.0, Method.SALIENT)


def bi_of(**words):
    return merge_directions(DirectedEntry(w, Direction.TGT_TO_SRC, tuple(t)) for w, t in words.items())


@pytest.fixture(scope="module")
def demo():
    return load_wordnet(DEMO_WORDNET.splitlines())


def test_collect_genus():
    defs = [tagged("FOOD", f"h{i}", "zumo", i) for i in range(3)] + [tagged("FOOD", "x", "bebida")]
    defs.append(tagged("ANIMAL", "perro", "mamifero"))
    t = collect_genus(defs, "FOOD")
    assert t.for_tag("FOOD") == {"zumo": 3, "bebida": 1}
    assert collect_genus(defs, "ARTIFACT").counts == {}
    assert sum(collect_genus(defs).for_tag("FOOD").values()) == 4


def test_f1(demo):
    bi = bi_of(zumo=["juice"], perro=["dog"])
    t = GenusTable({("zumo", "food"): 2, ("perro", "food"): 1, ("nada", "food"): 4})
    assert filter_f1(t, "food", bi, demo).for_tag("food") == {"zumo": 2}


def test_f2_examples():
    t = GenusTable({("zumo", "F"): 5, ("zumo", "A"): 1, ("parte", "F"): 2, ("parte", "A"): 10, ("eq", "F"): 3, ("eq", "A"): 3})
    kept = filter_f2(t, "F")
    assert kept.for_tag("F") == {"zumo": 5}
    # other tags are left alone
    assert kept.for_tag("A") == t.for_tag("A")


def test_f3_examples():
    t = GenusTable({("a", "F"): 5, ("b", "F"): 1})
    assert filter_f3(t, 4).for_tag("F") == {"a": 5}
    assert filter_f3(t, 1).genera("F") == {"a"}
    assert filter_f3(t, 0) == t
    with pytest.raises(ConfigError):
        filter_f3(t, -1)


def test_spec_parsing():
    assert parse_filter_spec("F2+(F3>9)") == [("F2", None), ("F3", 9)]
    assert parse_filter_spec("F1 + F2 + (F3 > 0)") == [("F1", None), ("F2", None), ("F3", 0)]
    assert parse_filter_spec("") == []
    with pytest.raises(ConfigError):
        parse_filter_spec("F4")


def test_top_beginners_against_hand_filtering():
    corpus = [tagged("FOOD", f"z{i}", "zumo") for i in range(5)]
    corpus += [tagged("FOOD", f"b{i}", "bebida") for i in range(4)]
    corpus += [tagged("FOOD", f"p{i}", "parte") for i in range(5)]
    corpus += [tagged("ANIMAL", f"a{i}", "parte") for i in range(6)]
    assert len(corpus) == 20
    # F2 drops parte (5 < 6); F3>4 then drops bebida (4)
    assert select_top_beginners(corpus, "FOOD", "F2+(F3>4)") == {"zumo"}
    assert select_top_beginners(corpus, "FOOD", "") == {"zumo", "bebida", "parte"}


def test_composition_shrinks(demo):
    bi = bi_of(zumo=["juice"], parte=["dog"], bebida=["beverage"])
    corpus = [tagged("food", f"z{i}", g) for i, g in enumerate(["zumo", "zumo", "parte", "bebida"])]
    f1 = select_top_beginners(corpus, "food", "F1", bi, demo)
    assert select_top_beginners(corpus, "food", "F1+F2+(F3>0)", bi, demo) <= f1
    with pytest.raises(ConfigError):
        apply_filters(collect_genus(corpus), "food", "F1")


def test_structure_tops():
    s = structure_tops({"vino", "zumo"}, [defn("vino", "zumo")])
    assert s.edges == {("vino", "zumo")} and s.roots == {"zumo"}
    assert structure_tops({"a", "b"}, [defn("a", "x"), defn("b", "y")]).edges == set()
    loop = structure_tops({"a", "b"}, [defn("a", "b", 1), defn("a", "b", 2), defn("b", "a")])
    assert loop.cycles and loop.dropped == [("b", "a")]
    assert loop.edges == {("a", "b")} and loop.roots == {"b"}


def test_disambiguation_simple_cases(demo):
    dictionary = {"vaso": [defn("vaso", "recipiente", 1), defn("vaso", "conducto", 2)], "zumo": [defn("zumo", "bebida")]}
    ctx = GsdContext(dictionary, demo, bi_of())
    assert disambiguate_genus(defn("vino", "zumo"), ctx) == ("zumo", 1)
    # no translations anywhere: DISTANCE is indecisive
    assert disambiguate_genus(defn("copa", "vaso"), ctx) == ("vaso", 1)
    assert disambiguate_genus(defn("x", "ausente"), ctx) is None
    assert disambiguate_genus(defn("zumo", "zumo"), ctx) is None
    with pytest.raises(ConfigError):
        disambiguate_genus(defn("copa", "vaso"), ctx, ["NOPE"])


def test_distance_heuristic_matches_oracle(demo):
    # sense 2 of vaso has the genus that lies near bottle in the wordnet
    dictionary = {"vaso": [defn("vaso", "sustancia", 1), defn("vaso", "recipiente", 2)]}
    bi = bi_of(botella=["bottle"], sustancia=["substance"], recipiente=["container"])
    ctx = GsdContext(dictionary, demo, bi)
    parents = {sid: sorted(s.hypernyms) for sid, s in demo.synsets.items()}
    lemmas = {sid: list(s.lemmas) for sid, s in demo.synsets.items()}
    scored = {
        s.sense_no: min(oracle_distance(parents, lemmas, "bottle", t)[0] for t in bi.get(s.genus))
        for s in dictionary["vaso"]
    }
    expected = min(scored, key=scored.get)
    assert expected == 2 and scored[1] != scored[2]
    assert disambiguate_genus(defn("botella", "vaso"), ctx, ["DISTANCE"]) == ("vaso", expected)


def test_same_tag_heuristic(demo):
    dictionary = {"vaso": [defn("vaso", "x", 1), defn("vaso", "y", 2)]}
    ctx = GsdContext(dictionary, demo, bi_of(), tags={("copa", 1): "artifact", ("vaso", 2): "artifact", ("vaso", 1): "body"})
    assert disambiguate_genus(defn("copa", "vaso"), ctx, ["SAME_TAG"]) == ("vaso", 2)


def chain_corpus():
    rows = [("bebida", 1, "liquido"), ("zumo", 1, "bebida"), ("agua", 1, "bebida"),
            ("vino", 1, "zumo"), ("mosto", 1, "zumo"), ("jugo", 1, "zumo")]
    corpus = [tagged("food", h, g, s) for h, s, g in rows]
    sense = {(h, s): (g, 1) for h, s, g in rows}
    sense[("bebida", 1)] = None
    return corpus, sense


def test_three_level_chain():
    corpus, sense = chain_corpus()
    tax = build_taxonomy("food", {"bebida"}, corpus, sense)
    assert tax.tops == {("bebida", 1)}
    assert dict(tax.parent) == {
        ("zumo", 1): ("bebida", 1),
        ("agua", 1): ("bebida", 1),
        ("vino", 1): ("zumo", 1),
        ("mosto", 1): ("zumo", 1),
        ("jugo", 1): ("zumo", 1),
    }
    assert max(tax.level(n) for n in tax.nodes) == 3


def test_foreign_tag_parent_excluded():
    corpus, sense = chain_corpus()
    corpus += [tagged("food", "pan", "masa"), tagged("body", "masa", "cosa")]
    sense[("pan", 1)] = ("masa", 1)
    sense[("masa", 1)] = None
    tax = build_taxonomy("food", {"bebida"}, corpus, sense)
    assert ("pan", 1) not in tax.nodes and ("masa", 1) not in tax.nodes


def test_no_tops_is_flat():
    corpus, sense = chain_corpus()
    tax = build_taxonomy("food", set(), corpus, sense)
    assert tax.parent == {} and tax.tops == tax.nodes and len(tax.nodes) == 6


def test_cycle_broken_and_reported():
    corpus = [tagged("food", "a", "b"), tagged("food", "b", "a"), tagged("food", "t", "x")]
    sense = {("a", 1): ("b", 1), ("b", 1): ("a", 1), ("t", 1): None}
    tax = build_taxonomy("food", {"t"}, corpus, sense, genus_counts={"a": 1, "b": 5})
    assert len(tax.cycles) == 1
    # the edge whose genus is rarer (a) goes, so b hangs from the primitive
    assert dict(tax.parent) == {("a", 1): ("b", 1)}
    assert ("b", 1) in tax.tops


def test_taxonomy_roundtrip(tmp_path):
    corpus, sense = chain_corpus()
    tax = build_taxonomy("food", {"bebida"}, corpus, sense)
    write_taxonomies([tax], tmp_path / "t.tsv")
    (back,) = read_taxonomies(tmp_path / "t.tsv")
    assert back.nodes == tax.nodes and dict(back.parent) == dict(tax.parent)


def _tables():
    keys = st.tuples(st.sampled_from(["a", "b", "c", "d"]), st.sampled_from(["F", "A", "X"]))
    return st.dictionaries(keys, st.integers(1, 12)).map(GenusTable)


def _subset(x: GenusTable, y: GenusTable) -> bool:
    return all(k in y.counts and y.counts[k] == c for k, c in x.counts.items())


@settings(max_examples=100)
@given(_tables(), st.integers(0, 12), st.integers(0, 12))
def test_filter_laws(t, n1, n2):
    lo, hi = sorted((n1, n2))
    assert _subset(filter_f3(t, hi), filter_f3(t, lo))
    for f in (lambda x: filter_f2(x, "F"), lambda x: filter_f3(x, lo), lambda x: filter_f3(x, lo, "F")):
        once = f(t)
        assert _subset(once, t)
        assert f(once) == once


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_taxonomy_invariants(seed):
    corpus, sense, tops, counts = random_taxonomy_input(random.Random(seed))
    tax = build_taxonomy("food", tops, corpus, sense, counts)
    labels = {td.key: td.tag for td in corpus}
    assert all(labels[n] == "food" for n in tax.nodes)
    assert set(tax.parent) <= tax.nodes and set(tax.parent.values()) <= tax.nodes
    assert tax.tops == tax.nodes - set(tax.parent)
    for n in tax.nodes:
        steps = 0
        while n in tax.parent:
            n = tax.parent[n]
            steps += 1
            assert steps <= len(tax.nodes)
    assert tax.nodes == oracle_taxonomy_nodes("food", corpus, sense, tops, counts)
