"""Attach target-language words to wordnet synsets through their translations.

Each word is classified along three dimensions (polysemy, structural,
conceptual). Every class proposes (word, synset) candidates; a class's
measured precision becomes the confidence of its candidates, and a
candidate supported by several classes combines their precisions.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from wnbuild.bilingual import HomogeneousBilingual
from wnbuild.errors import ConfigError, InputError
from wnbuild.graph import Relation, WordNetGraph, _iter_lines, conceptual_distance, norm, structural_relation


class Dimension(enum.Enum):
    POLYSEMY = "POLYSEMY"
    STRUCTURAL = "STRUCTURAL"
    CONCEPTUAL = "CONCEPTUAL"


class LinkClass(enum.Enum):
    """Registered class scheme. Add members here to extend it."""

    MONO_MONO = ("POLYSEMY", "MONO_MONO")
    MONO_POLY = ("POLYSEMY", "MONO_POLY")
    MULTI_MONO = ("POLYSEMY", "MULTI_MONO")
    MULTI_POLY = ("POLYSEMY", "MULTI_POLY")
    SHARED_SYNSET = ("STRUCTURAL", "SHARED_SYNSET")
    HYPONYMY_PAIR = ("STRUCTURAL", "HYPONYMY_PAIR")
    SIBLING_PAIR = ("STRUCTURAL", "SIBLING_PAIR")
    LOW_DISTANCE = ("CONCEPTUAL", "LOW_DISTANCE")

    @property
    def dimension(self) -> Dimension:
        return Dimension(self.value[0])

    @classmethod
    def lookup(cls, dimension: str, name: str) -> "LinkClass":
        try:
            member = cls[name.strip().upper()]
        except KeyError:
            raise ConfigError(f"unknown class {name!r}") from None
        if member.dimension.value != dimension.strip().upper():
            raise ConfigError(f"class {name} belongs to dimension {member.dimension.value}, not {dimension}")
        return member

    def __lt__(self, other):
        if not isinstance(other, LinkClass):
            return NotImplemented
        return self.name < other.name


class Combiner(enum.Enum):
    NOISY_OR = "NOISY_OR"
    VOTE_COUNT = "VOTE_COUNT"


@dataclass(frozen=True)
class ClassPrecision:
    cls: LinkClass
    precision: Fraction
    sample_size: int = 0

    def __post_init__(self):
        if not 0 <= self.precision <= 1:
            raise ConfigError(f"precision for {self.cls.name} outside [0,1]: {self.precision}")


PrecisionTable = Mapping[LinkClass, ClassPrecision]


@dataclass(frozen=True)
class LinkCandidate:
    word: str
    synset: str
    supporting_classes: frozenset[LinkClass]
    confidence: Fraction | None = None
    accepted: bool = False

    @property
    def key(self) -> tuple[str, str]:
        return (self.word, self.synset)

    def class_list(self) -> str:
        return ",".join(sorted(c.name for c in self.supporting_classes))


class NoTranslationError(LookupError):
    pass


def _translations(word: str, bi: HomogeneousBilingual) -> list[str]:
    trans = sorted(bi.get(word))
    if not trans:
        raise NoTranslationError(f"{word!r} has no translation")
    return trans


def classify_polysemy(word: str, bi: HomogeneousBilingual, g: WordNetGraph) -> LinkClass:
    trans = _translations(word, bi)
    counts = [len(g.synsets_of(t)) for t in trans]
    if len(trans) == 1:
        if counts[0] == 1:
            return LinkClass.MONO_MONO
        if counts[0] > 1:
            return LinkClass.MONO_POLY
        return LinkClass.MULTI_POLY
    indexed = [c for c in counts if c > 0]
    if indexed and all(c == 1 for c in indexed):
        return LinkClass.MULTI_MONO
    return LinkClass.MULTI_POLY


def _indexed_translations(word: str, bi: HomogeneousBilingual, g: WordNetGraph) -> list[str]:
    return [t for t in sorted(bi.get(word)) if g.is_indexed(t)]


_STRUCTURAL = {
    Relation.SHARED_SYNSET: LinkClass.SHARED_SYNSET,
    Relation.DIRECT_HYPONYM: LinkClass.HYPONYMY_PAIR,
    Relation.DIRECT_HYPERNYM: LinkClass.HYPONYMY_PAIR,
    Relation.SIBLING: LinkClass.SIBLING_PAIR,
}


def classify_structural(word: str, bi: HomogeneousBilingual, g: WordNetGraph) -> frozenset[LinkClass]:
    trans = _indexed_translations(word, bi, g)
    found = set()
    for a, b in itertools.combinations(trans, 2):
        for rel in structural_relation(g, a, b):
            if rel in _STRUCTURAL:
                found.add(_STRUCTURAL[rel])
    return frozenset(found)


def _closest_translation_pair(word: str, bi: HomogeneousBilingual, g: WordNetGraph):
    best = (math.inf, None)
    for a, b in itertools.combinations(_indexed_translations(word, bi, g), 2):
        d = conceptual_distance(g, a, b)
        if d.value < best[0]:
            best = (d.value, d.pair)
    return best


def classify_conceptual(
    word: str, bi: HomogeneousBilingual, g: WordNetGraph, threshold: Fraction | float
) -> LinkClass | None:
    value, _ = _closest_translation_pair(word, bi, g)
    return LinkClass.LOW_DISTANCE if value < threshold else None


def classify_word(
    word: str, bi: HomogeneousBilingual, g: WordNetGraph, distance_threshold: Fraction | float
) -> frozenset[LinkClass]:
    classes = {classify_polysemy(word, bi, g)}
    classes |= classify_structural(word, bi, g)
    low = classify_conceptual(word, bi, g, distance_threshold)
    if low is not None:
        classes.add(low)
    return frozenset(classes)


def _class_synsets(word: str, cls: LinkClass, bi: HomogeneousBilingual, g: WordNetGraph) -> set[str]:
    trans = _indexed_translations(word, bi, g)
    if cls in (LinkClass.MONO_MONO, LinkClass.MONO_POLY, LinkClass.MULTI_MONO, LinkClass.MULTI_POLY):
        return {s for t in trans for s in g.synsets_of(t)}
    if cls is LinkClass.LOW_DISTANCE:
        _, pair = _closest_translation_pair(word, bi, g)
        return set(pair) if pair else set()
    out: set[str] = set()
    for a, b in itertools.combinations(trans, 2):
        sa, sb = set(g.synsets_of(a)), set(g.synsets_of(b))
        if cls is LinkClass.SHARED_SYNSET:
            out |= sa & sb
            continue
        for x in sa:
            for y in sb:
                if x == y:
                    continue
                if cls is LinkClass.HYPONYMY_PAIR and (y in g[x].hypernyms or x in g[y].hypernyms):
                    out |= {x, y}
                elif cls is LinkClass.SIBLING_PAIR and g[x].hypernyms & g[y].hypernyms:
                    out |= {x, y}
    return out


def generate_candidates(
    word: str, cls: LinkClass, bi: HomogeneousBilingual, g: WordNetGraph
) -> frozenset[LinkCandidate]:
    w = norm(word)
    return frozenset(LinkCandidate(w, s, frozenset({cls})) for s in _class_synsets(w, cls, bi, g))


def _merge_support(candidates: Iterable[LinkCandidate]) -> dict[tuple[str, str], frozenset[LinkClass]]:
    support: dict[tuple[str, str], set[LinkClass]] = {}
    for c in candidates:
        support.setdefault(c.key, set()).update(c.supporting_classes)
    return {k: frozenset(v) for k, v in support.items()}


def intersect_classes(a: Iterable[LinkCandidate], b: Iterable[LinkCandidate]) -> frozenset[LinkCandidate]:
    sa, sb = _merge_support(a), _merge_support(b)
    return frozenset(
        LinkCandidate(k[0], k[1], sa[k] | sb[k]) for k in sa.keys() & sb.keys()
    )


def score_candidate(
    c: LinkCandidate, precisions: PrecisionTable, combiner: Combiner = Combiner.NOISY_OR
) -> Fraction:
    for cls in c.supporting_classes:
        if cls not in precisions:
            raise ConfigError(f"no precision registered for class {cls.name}")
    if combiner is Combiner.VOTE_COUNT:
        if not precisions:
            raise ConfigError("empty precision table")
        return Fraction(len(c.supporting_classes), len(precisions))
    miss = Fraction(1)
    for cls in sorted(c.supporting_classes):
        miss *= 1 - precisions[cls].precision
    return 1 - miss


def accept_links(
    candidates: Iterable[LinkCandidate],
    precisions: PrecisionTable,
    threshold: Fraction | float = Fraction(85, 100),
    combiner: Combiner = Combiner.NOISY_OR,
) -> frozenset[LinkCandidate]:
    """Merge candidates by (word, synset), score the merged support and keep
    those at or above ``threshold``."""
    accepted = set()
    for (word, synset), classes in _merge_support(candidates).items():
        cand = LinkCandidate(word, synset, classes)
        conf = score_candidate(cand, precisions, combiner)
        if conf >= threshold:
            accepted.add(replace(cand, confidence=conf, accepted=True))
    return frozenset(accepted)


@dataclass
class LinkRun:
    """Everything the link stage produces, for output and reporting."""

    word_classes: dict[str, frozenset[LinkClass]] = field(default_factory=dict)
    candidates: dict[LinkClass, frozenset[LinkCandidate]] = field(default_factory=dict)
    accepted: frozenset[LinkCandidate] = frozenset()
    single_class_accepted: frozenset[tuple[str, str]] = frozenset()
    pair_intersections: dict[tuple[LinkClass, LinkClass], int] = field(default_factory=dict)


def link_words(
    bi: HomogeneousBilingual,
    g: WordNetGraph,
    precisions: PrecisionTable,
    threshold: Fraction | float = Fraction(85, 100),
    distance_threshold: Fraction | float = Fraction(1),
    combiner: Combiner = Combiner.NOISY_OR,
    exclude_accepted: bool = True,
) -> LinkRun:
    """Run the whole classification, generation and gating pass over every
    linkable word (one with at least one indexed translation)."""
    run = LinkRun()
    per_class: dict[LinkClass, set[LinkCandidate]] = {}
    for word in bi.words():
        if not _indexed_translations(word, bi, g):
            continue
        classes = classify_word(word, bi, g, distance_threshold)
        run.word_classes[word] = classes
        for cls in classes:
            per_class.setdefault(cls, set()).update(generate_candidates(word, cls, bi, g))
    run.candidates = {cls: frozenset(v) for cls, v in sorted(per_class.items())}

    single = set()
    for cls, cands in run.candidates.items():
        if cls in precisions and precisions[cls].precision >= threshold:
            single.update(c.key for c in cands)
    run.single_class_accepted = frozenset(single)

    for a, b in itertools.combinations(sorted(run.candidates), 2):
        inter = intersect_classes(run.candidates[a], run.candidates[b])
        if exclude_accepted:
            inter = frozenset(c for c in inter if c.key not in single)
        run.pair_intersections[(a, b)] = len(inter)

    all_cands = [c for cands in run.candidates.values() for c in cands]
    run.accepted = accept_links(all_cands, precisions, threshold, combiner)
    return run


def read_precisions(source: str | Path | Iterable[str]) -> dict[LinkClass, ClassPrecision]:
    """``dimension  class_name  precision  sample_size`` TSV."""
    label = str(source) if isinstance(source, (str, Path)) else "<precisions>"
    table: dict[LinkClass, ClassPrecision] = {}
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 4:
            raise InputError(f"expected 4 tab-separated columns, got {len(cols)}", label, line_no)
        cls = LinkClass.lookup(cols[0], cols[1])
        try:
            prec = Fraction(cols[2])
            n = int(cols[3])
        except ValueError:
            raise InputError(f"bad precision/sample_size {cols[2]!r}/{cols[3]!r}", label, line_no) from None
        table[cls] = ClassPrecision(cls, prec, n)
    return table


def write_links(links: Iterable[LinkCandidate], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# word\tsynset_id\tconfidence\tclass_list\n")
        for c in sorted(links, key=lambda c: c.key):
            fh.write(f"{c.word}\t{c.synset}\t{float(c.confidence):.4f}\t{c.class_list()}\n")


def read_links(path: str | Path) -> list[LinkCandidate]:
    out = []
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise InputError(f"expected 4 tab-separated columns, got {len(cols)}", str(path), line_no)
        classes = frozenset(LinkClass[n] for n in cols[3].split(",") if n)
        out.append(LinkCandidate(cols[0], cols[1], classes, Fraction(cols[2]), True))
    return out
