"""Label dictionary definitions with semantic primitives.

Three passes: a distance-based seed tagging of definitions whose headword
and genus both translate, association-ratio training of salient words on
the seed corpus, and relabelling of every definition by summed salience.
"""

from __future__ import annotations

import enum
import math
import re
from collections import Counter
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from wnbuild.bilingual import HomogeneousBilingual
from wnbuild.errors import InputError
from wnbuild.graph import WordNetGraph, _iter_lines, conceptual_distance, norm

# Noun lexicographer file names of the source wordnet (without the "noun." prefix).
NOUN_SEMFILES = (
    "Tops", "act", "animal", "artifact", "attribute", "body", "cognition",
    "communication", "event", "feeling", "food", "group", "location", "motive",
    "object", "person", "phenomenon", "plant", "possession", "process",
    "quantity", "relation", "shape", "state", "substance", "time",
)

_TOKEN = re.compile(r"[^\W\d_]+(?:[-'][^\W\d_]+)*")


def tokenize(text: str) -> tuple[str, ...]:
    return tuple(m.group(0).casefold() for m in _TOKEN.finditer(text))


class Method(enum.Enum):
    DISTANCE_SEED = "DISTANCE_SEED"
    SALIENT = "SALIENT"


@dataclass(frozen=True)
class Definition:
    headword: str
    sense_no: int
    text: tuple[str, ...]
    genus: str | None = None

    @property
    def key(self) -> tuple[str, int]:
        return (self.headword, self.sense_no)


@dataclass(frozen=True)
class TaggedDefinition:
    definition: Definition
    tag: str
    score: float
    method: Method
    ambiguous: bool = False

    @property
    def key(self) -> tuple[str, int]:
        return self.definition.key


def content_tokens(d: Definition, stoplist: frozenset[str] = frozenset()) -> list[str]:
    return [t for t in d.text if t not in stoplist]


def extract_genus(d: Definition, stoplist: frozenset[str] = frozenset()) -> str | None:
    """The supplied genus, or failing that the first content token."""
    if d.genus:
        return d.genus
    for tok in d.text:
        if tok not in stoplist:
            return tok
    return None


def tag_seed_by_distance(
    defs: Iterable[Definition],
    bi: HomogeneousBilingual,
    g: WordNetGraph,
    stoplist: frozenset[str] = frozenset(),
    primitive_of: Callable[[str], str] | None = None,
) -> list[TaggedDefinition]:
    """Tag definitions whose headword and genus both have translations.

    The closest (headword-translation, genus-translation) concept pair wins and
    the tag is the primitive of its headword-side synset. ``primitive_of``
    maps a synset id to a tag; by default the synset's semantic file.
    """
    primitive_of = primitive_of or g.semfile
    out = []
    for d in defs:
        genus = extract_genus(d, stoplist)
        if genus is None:
            continue
        head_tr, genus_tr = sorted(bi.get(d.headword)), sorted(bi.get(genus))
        if not head_tr or not genus_tr:
            continue
        best = (math.inf, None)
        for ht in head_tr:
            for gt in genus_tr:
                dist = conceptual_distance(g, ht, gt)
                if dist.value < best[0]:
                    best = (dist.value, dist.pair)
        if best[1] is None:
            continue
        out.append(TaggedDefinition(d, primitive_of(best[1][0]), float(best[0]), Method.DISTANCE_SEED))
    return out


@dataclass(frozen=True)
class SalientLexicon:
    """Positive association ratios plus the raw counts they came from."""

    scores: Mapping[tuple[str, str], float]
    class_counts: Mapping[str, Counter] = field(default_factory=dict)
    total_counts: Counter = field(default_factory=Counter)
    masses: Mapping[str, int] = field(default_factory=dict)

    def class_mass(self, tag: str) -> int:
        """Content tokens seen under ``tag`` during training."""
        if tag in self.masses:
            return self.masses[tag]
        return sum(self.class_counts.get(tag, Counter()).values())

    def tags(self) -> list[str]:
        return sorted({t for _, t in self.scores} | set(self.class_counts) | set(self.masses))

    def by_word(self) -> dict[str, dict[str, float]]:
        out: dict[str, dict[str, float]] = {}
        for (w, t), s in self.scores.items():
            out.setdefault(w, {})[t] = s
        return out

    def relevance(self, word: str, tag: str) -> float:
        """Salience times local frequency; used for ranking, not filtering."""
        return self.scores.get((word, tag), 0.0) * self.class_counts.get(tag, Counter())[word]

    def top_words(self, tag: str, n: int = 10) -> list[tuple[str, float]]:
        ranked = [(w, self.relevance(w, t)) for (w, t) in self.scores if t == tag]
        ranked.sort(key=lambda x: (-x[1], x[0]))
        return ranked[:n]


def association_ratio(count_in_class: int, class_total: int, count: int, total: int) -> float:
    p_wc = count_in_class / class_total
    p_w = count / total
    return p_wc * math.log2(p_wc / p_w)


def train_salient(tagged: Iterable[TaggedDefinition], stoplist: frozenset[str] = frozenset()) -> SalientLexicon:
    class_counts: dict[str, Counter] = {}
    total: Counter = Counter()
    for td in tagged:
        toks = content_tokens(td.definition, stoplist)
        class_counts.setdefault(td.tag, Counter()).update(toks)
        total.update(toks)
    n = sum(total.values())
    scores: dict[tuple[str, str], float] = {}
    for tag, counts in class_counts.items():
        n_tag = sum(counts.values())
        for w, c in counts.items():
            ar = association_ratio(c, n_tag, total[w], n)
            if ar > 0:
                scores[(w, tag)] = ar
    masses = {tag: sum(c.values()) for tag, c in class_counts.items()}
    return SalientLexicon(scores, class_counts, total, masses)


def _tie(a: float, b: float) -> bool:
    return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))


def salience_sums(
    d: Definition, by_word: Mapping[str, Mapping[str, float]], stoplist: frozenset[str] = frozenset()
) -> dict[str, float]:
    """Per-tag summed salience of a definition's content tokens (repeats count)."""
    parts: dict[str, list[float]] = {}
    for tok in content_tokens(d, stoplist):
        for tag, s in by_word.get(tok, {}).items():
            parts.setdefault(tag, []).append(s)
    return {tag: math.fsum(v) for tag, v in parts.items()}


def label_definitions(
    defs: Iterable[Definition], lex: SalientLexicon, stoplist: frozenset[str] = frozenset()
) -> list[TaggedDefinition]:
    """Tag each definition with the class of greatest summed salience.

    Definitions without any salient token are dropped. On a tie the tag with
    the larger training token mass wins, then the alphabetically first tag,
    and the result is flagged ambiguous.
    """
    by_word = lex.by_word()
    mass = {t: lex.class_mass(t) for t in lex.tags()}
    out = []
    for d in defs:
        sums = salience_sums(d, by_word, stoplist)
        if not sums:
            continue
        top = max(sums.values())
        best = [t for t, s in sums.items() if _tie(s, top)]
        best.sort(key=lambda t: (-mass.get(t, 0), t))
        out.append(TaggedDefinition(d, best[0], sums[best[0]], Method.SALIENT, len(best) > 1))
    return out


def select_core_concepts(
    words: Iterable[str],
    genus_freq: Mapping[str, int],
    defcorpus_freq: Mapping[str, int],
    extcorpus_freq: Mapping[str, int],
    min_genus: int = 5,
    min_defcorpus: int = 50,
    min_extcorpus: int = 100,
) -> set[str]:
    """Keep a word if it is a frequent genus term, or frequent in both the
    definition corpus and the external corpus."""
    kept = set()
    for w in words:
        if genus_freq.get(w, 0) >= min_genus or (
            defcorpus_freq.get(w, 0) >= min_defcorpus and extcorpus_freq.get(w, 0) >= min_extcorpus
        ):
            kept.add(w)
    return kept


# -- file formats -----------------------------------------------------------


def read_stoplist(path: str | Path | None) -> frozenset[str]:
    if path is None:
        return frozenset()
    words = set()
    for _, raw in _iter_lines(path):
        w = raw.strip()
        if w and not w.startswith("#"):
            words.add(w.casefold())
    return frozenset(words)


def read_monolingual(source: str | Path | Iterable[str]) -> list[Definition]:
    """``headword  sense_no  genus  definition text``; genus may be empty or ``-``."""
    label = str(source) if isinstance(source, (str, Path)) else "<monolingual>"
    defs: list[Definition] = []
    seen: set[tuple[str, int]] = set()
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 4:
            raise InputError(f"expected 4 tab-separated columns, got {len(cols)}", label, line_no)
        head, sense, genus, text = cols[0], cols[1], cols[2], "\t".join(cols[3:])
        try:
            sense_no = int(sense)
        except ValueError:
            raise InputError(f"sense_no must be an integer, got {sense!r}", label, line_no) from None
        if sense_no < 1:
            raise InputError(f"sense_no must be positive, got {sense_no}", label, line_no)
        head = norm(head)
        toks = tokenize(text)
        if not head or not toks:
            raise InputError("empty headword or definition text", label, line_no)
        if (head, sense_no) in seen:
            raise InputError(f"duplicate sense {head} {sense_no}", label, line_no)
        seen.add((head, sense_no))
        genus = norm(genus)
        defs.append(Definition(head, sense_no, toks, genus if genus and genus != "-" else None))
    return defs


def write_tagged(tagged: Iterable[TaggedDefinition], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# headword\tsense_no\tgenus\tdefinition\ttag\tscore\tmethod\tambiguous\n")
        for td in sorted(tagged, key=lambda t: t.key):
            d = td.definition
            fh.write(
                f"{d.headword}\t{d.sense_no}\t{d.genus or '-'}\t{' '.join(d.text)}\t"
                f"{td.tag}\t{td.score!r}\t{td.method.value}\t{int(td.ambiguous)}\n"
            )


def read_tagged(path: str | Path) -> list[TaggedDefinition]:
    out = []
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 8:
            raise InputError(f"expected 8 tab-separated columns, got {len(cols)}", str(path), line_no)
        head, sense, genus, text, tag, score, method, amb = cols
        d = Definition(head, int(sense), tuple(text.split()), None if genus == "-" else genus)
        out.append(TaggedDefinition(d, tag, float(score), Method(method), amb == "1"))
    return out


def write_lexicon(lex: SalientLexicon, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# word\ttag\tassociation_ratio\tcount_in_tag\n")
        for (w, t), s in sorted(lex.scores.items()):
            fh.write(f"{w}\t{t}\t{s!r}\t{lex.class_counts[t][w]}\n")
        for t in sorted(lex.class_counts):
            fh.write(f"#mass\t{t}\t{lex.class_mass(t)}\n")


def read_lexicon(path: str | Path) -> SalientLexicon:
    scores: dict[tuple[str, str], float] = {}
    class_counts: dict[str, Counter] = {}
    masses: dict[str, int] = {}
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if line.startswith("#mass\t"):
            _, tag, mass = line.split("\t")
            masses[tag] = int(mass)
            continue
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise InputError(f"expected 4 tab-separated columns, got {len(cols)}", str(path), line_no)
        w, t, s, c = cols
        scores[(w, t)] = float(s)
        class_counts.setdefault(t, Counter())[w] = int(c)
    return SalientLexicon(scores, class_counts, masses=masses)
