import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnbuild.bilingual import HomogeneousBilingual
from wnbuild.errors import ConfigError
from wnbuild.fixtures import chain_fixture
from wnbuild.merger import (
    CONFIGURATIONS,
    ConfidenceTable,
    LinkKind,
    PatternInstance,
    bootstrap,
    classify_pattern,
    combine_patterns,
    default_confidence_table,
    enumerate_patterns,
    infer_links,
    read_confidence_table,
    write_ledger,
)

A, B, NONE = LinkKind.A, LinkKind.B, LinkKind.NONE


def inst(above, below, hypo="vino", hyper="zumo", path=("wine.n.01", "juice.n.01"), semfile="food"):
    return PatternInstance((hypo, 1), (hyper, 1), path, above, below, semfile)


@pytest.fixture
def chain():
    return chain_fixture()


def test_configuration_numbering():
    expected = {(A, A): 1, (A, B): 2, (A, NONE): 3, (B, A): 4, (B, B): 5, (B, NONE): 6, (NONE, A): 7, (NONE, B): 8}
    for kinds, n in expected.items():
        assert classify_pattern(inst(*kinds)) == n
    assert CONFIGURATIONS == expected
    with pytest.raises(ValueError):
        inst(NONE, NONE)


def test_enumerate_on_chain(chain):
    tax = chain["taxonomies"][0]
    found = {(p.sp_hypo[0], p.sp_hyper[0]): p.configuration for p in enumerate_patterns(tax, chain["g"], chain["A"], chain["B"])}
    assert found == {("vino", "zumo"): 2, ("zumo", "bebida"): 4, ("bebida", "alimento"): 5}
    both = set(chain["A"]) | {("vino", "wine.n.01")}
    again = {(p.sp_hypo[0], p.sp_hyper[0]): p.configuration for p in enumerate_patterns(tax, chain["g"], both, chain["B"])}
    assert again[("vino", "zumo")] == 1


def test_unconnected_pair_gives_nothing(chain):
    tax = chain["taxonomies"][0]
    assert enumerate_patterns(tax, chain["g"], set(), HomogeneousBilingual()) == []
    with pytest.raises(ConfigError):
        enumerate_patterns(tax, chain["g"], set(), chain["B"], max_path=0)


def test_longer_paths_reach_further(chain):
    tax = chain["taxonomies"][0]
    short = enumerate_patterns(tax, chain["g"], chain["A"], chain["B"], 1)
    long = enumerate_patterns(tax, chain["g"], chain["A"], chain["B"], 2)
    assert set(short) <= set(long)
    assert all(len(p.path) <= 3 for p in long)


def test_infer_examples(chain):
    table = chain["conf_table"]
    res = infer_links([inst(A, B)], table, Fraction(8, 10))
    assert [(x.word, x.synset, x.confidence) for x in res.new] == [("vino", "wine.n.01", Fraction(85, 100))]
    ones = infer_links([inst(A, A)], table, Fraction(8, 10))
    assert ones.new == [] and len(ones.boosts) >= 1
    assert infer_links([inst(A, B), inst(B, A), inst(B, B)], table, Fraction(101, 100)).new == []


def test_missing_configuration_is_config_error():
    with pytest.raises(ConfigError):
        infer_links([inst(A, B)], ConfidenceTable({(1, "*"): Fraction(1)}), 0)


def test_existing_links_not_reinferred(chain):
    res = infer_links([inst(A, B)], chain["conf_table"], 0, existing={("vino", "wine.n.01")})
    assert res.new == []


def test_combine_examples():
    table = ConfidenceTable({(2, "*"): Fraction(1, 2), (4, "*"): Fraction(1, 2)})
    p2 = inst(A, B, hypo="vino", hyper="zumo", path=("wine.n.01", "juice.n.01"))
    p4 = inst(B, A, hypo="uva", hyper="vino", path=("grape.n.01", "wine.n.01"))
    (ev,) = combine_patterns([p2, p4], table)
    assert (ev.word, ev.synset, ev.confidence) == ("vino", "wine.n.01", Fraction(3, 4))
    assert combine_patterns([p2], table) == []


@settings(max_examples=100)
@given(st.fractions(0, 1), st.fractions(0, 1))
def test_combined_at_least_each(c2, c4):
    table = ConfidenceTable({(2, "*"): c2, (4, "*"): c4})
    p2 = inst(A, B, path=("wine.n.01", "juice.n.01"))
    p4 = inst(B, A, hypo="uva", hyper="vino", path=("grape.n.01", "wine.n.01"))
    (ev,) = combine_patterns([p2, p4], table)
    assert ev.confidence >= max(c2, c4)


def test_infer_permutation_invariant():
    rng = random.Random(5)
    table = default_confidence_table().with_overrides({(5, "*"): Fraction(9, 10)})
    kinds = [k for k in CONFIGURATIONS]
    stream = [
        inst(*rng.choice(kinds), hypo=rng.choice("abc"), hyper=rng.choice("xyz"), path=(rng.choice(["s1", "s2"]), "t1"), semfile=rng.choice(["food", "artifact"]))
        for _ in range(30)
    ]
    ref = infer_links(stream, table, Fraction(1, 2), combined=combine_patterns(stream, table))
    for _ in range(5):
        rng.shuffle(stream)
        again = infer_links(stream, table, Fraction(1, 2), combined=combine_patterns(stream, table))
        assert again.new == ref.new and again.boosts == ref.boosts


def test_default_table():
    t = default_confidence_table()
    assert t.lookup(4, "artifact") == Fraction(85, 100)
    assert t.lookup(4, "person") == Fraction(1, 2)
    assert t.lookup(2, "food") == Fraction(1, 2)
    assert t.lookup(1) == Fraction(99, 100)
    assert all(t.lookup(c) == 0 for c in (3, 5, 6, 7, 8))


def test_bootstrap_chain(chain, tmp_path):
    res = bootstrap(chain["A"], chain["B"], chain["taxonomies"], chain["g"], chain["conf_table"], chain["threshold"])
    assert res.rounds == 2
    assert [r.added for r in res.ledger] == [1, 0]
    assert res.A == chain["A"] | {("vino", "wine.n.01")}
    assert res.inferred[0].source_configuration == "2"
    write_ledger(res, tmp_path / "ledger.json")
    data = json.loads((tmp_path / "ledger.json").read_text())
    assert data["fixpoint"] is True and data["total_added"] == 1


def test_bootstrap_empty_b(chain):
    res = bootstrap(chain["A"], HomogeneousBilingual(), chain["taxonomies"], chain["g"], chain["conf_table"], chain["threshold"])
    assert res.rounds == 1 and res.inferred == []


def test_bootstrap_complete_a(chain):
    full = {("vino", "wine.n.01"), ("zumo", "juice.n.01"), ("bebida", "beverage.n.01"), ("alimento", "food.n.01")}
    res = bootstrap(full, chain["B"], chain["taxonomies"], chain["g"], chain["conf_table"], chain["threshold"])
    assert res.rounds == 1 and res.A == full


def test_bootstrap_rejects_zero_iters(chain):
    with pytest.raises(ConfigError):
        bootstrap(chain["A"], chain["B"], chain["taxonomies"], chain["g"], chain["conf_table"], max_iters=0)


def test_inferred_synset_on_path(chain):
    table = chain["conf_table"].with_overrides({(4, "*"): Fraction(9, 10), (5, "*"): Fraction(9, 10)})
    res = bootstrap(chain["A"], chain["B"], chain["taxonomies"], chain["g"], table, chain["threshold"], max_iters=5)
    tax = chain["taxonomies"][0]
    on_paths = {s for p in enumerate_patterns(tax, chain["g"], res.A, chain["B"]) for s in p.path}
    assert {x.synset for x in res.inferred} <= on_paths
    assert not {x.key for x in res.inferred} & chain["A"]


def test_read_confidence_table():
    t = read_confidence_table(["# c", "2\t*\t0.6", "2\tfood\t0.7"])
    assert t.lookup(2, "food") == Fraction(7, 10) and t.lookup(2, "animal") == Fraction(3, 5)
