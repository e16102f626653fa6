"""Fill gaps by matching taxonomy edges against wordnet hypernym paths.

Around every taxonomy edge (hyponym sense -> hypernym sense) paired with a
wordnet path (hyponym synset -> hypernym synset), each side is connected by
an accepted link (A), a raw bilingual translation (B) or not at all. The
eight resulting configurations promote some B connections to new links;
accepted links are fed back and the process repeats until nothing changes.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from wnbuild.bilingual import HomogeneousBilingual
from wnbuild.errors import ConfigError, InputError
from wnbuild.graph import WordNetGraph, _iter_lines
from wnbuild.taxonomy import SenseKey, SenseTaxonomy

Link = tuple[str, str]  # (word, synset id)


class LinkKind(enum.Enum):
    A = "A"
    B = "B"
    NONE = "NONE"


CONFIGURATIONS: dict[tuple[LinkKind, LinkKind], int] = {
    (LinkKind.A, LinkKind.A): 1,
    (LinkKind.A, LinkKind.B): 2,
    (LinkKind.A, LinkKind.NONE): 3,
    (LinkKind.B, LinkKind.A): 4,
    (LinkKind.B, LinkKind.B): 5,
    (LinkKind.B, LinkKind.NONE): 6,
    (LinkKind.NONE, LinkKind.A): 7,
    (LinkKind.NONE, LinkKind.B): 8,
}

# Which sides of the pattern a configuration turns into a new link.
PROMOTES: dict[int, tuple[str, ...]] = {2: ("below",), 4: ("above",), 5: ("above", "below")}

COMBINED = "2+4"


@dataclass(frozen=True)
class PatternInstance:
    sp_hypo: SenseKey
    sp_hyper: SenseKey
    path: tuple[str, ...]  # wordnet hypernym path, hyponym first
    above_kind: LinkKind
    below_kind: LinkKind
    semfile: str = ""

    def __post_init__(self):
        if self.above_kind is LinkKind.NONE and self.below_kind is LinkKind.NONE:
            raise ValueError("a pattern needs at least one connected side")

    @property
    def en_hypo(self) -> str:
        return self.path[0]

    @property
    def en_hyper(self) -> str:
        return self.path[-1]

    @property
    def configuration(self) -> int:
        return classify_pattern(self)

    def link(self, side: str) -> Link:
        if side == "above":
            return (self.sp_hyper[0], self.en_hyper)
        return (self.sp_hypo[0], self.en_hypo)


@dataclass(frozen=True)
class InferredLink:
    word: str
    synset: str
    source_configuration: str
    confidence: Fraction
    iteration: int = 1

    @property
    def key(self) -> Link:
        return (self.word, self.synset)


@dataclass(frozen=True)
class CombinedEvidence:
    word: str
    synset: str
    confidence: Fraction
    configurations: tuple[int, ...] = (2, 4)


def classify_pattern(p: PatternInstance) -> int:
    return CONFIGURATIONS[(p.above_kind, p.below_kind)]


class ConfidenceTable:
    """Confidence per (configuration, semantic file) with per-configuration fallback."""

    def __init__(self, entries: Mapping[tuple[int, str], Fraction]):
        self.entries = {(int(c), s): Fraction(v) for (c, s), v in entries.items()}

    def lookup(self, configuration: int, semfile: str = "*") -> Fraction:
        for key in ((configuration, semfile), (configuration, "*")):
            if key in self.entries:
                return self.entries[key]
        raise ConfigError(f"no confidence for configuration {configuration} (semantic file {semfile!r})")

    def covers(self, configuration: int, semfile: str = "*") -> bool:
        return (configuration, semfile) in self.entries or (configuration, "*") in self.entries

    def with_overrides(self, other: Mapping[tuple[int, str], Fraction]) -> "ConfidenceTable":
        return ConfidenceTable({**self.entries, **other})


def default_confidence_table() -> ConfidenceTable:
    """Default per-file precisions of newly produced connections.

    Class 1 is evidence only (its links already exist) and uses the 99% overall
    figure. Files without a listed value fall back to the lowest value of
    the class. Configurations without any listed figure are 0, so they never
    pass a positive threshold unless overridden.
    """
    pct = lambda n: Fraction(n, 100)  # noqa: E731
    entries = {
        (1, "*"): pct(99),
        (2, "artifact"): pct(50),
        (2, "cognition"): pct(50),
        (2, "*"): pct(50),
        (4, "artifact"): pct(85),
        (4, "cognition"): pct(65),
        (4, "communication"): pct(50),
        (4, "food"): pct(74),
        (4, "*"): pct(50),
    }
    for c in (3, 5, 6, 7, 8):
        entries[(c, "*")] = Fraction(0)
    return ConfidenceTable(entries)


def _kind(word: str, synset: str, A: frozenset[Link] | set[Link], B: HomogeneousBilingual, g: WordNetGraph) -> LinkKind:
    if (word, synset) in A:
        return LinkKind.A
    lemmas = set(g[synset].lemmas)
    if any(t in lemmas for t in B.get(word)):
        return LinkKind.B
    return LinkKind.NONE


def _connected_synsets(word: str, A_by_word: Mapping[str, set[str]], B: HomogeneousBilingual, g: WordNetGraph) -> set[str]:
    out = set(A_by_word.get(word, ()))
    for t in B.get(word):
        out.update(g.synsets_of(t))
    return out


def enumerate_patterns(
    tax: SenseTaxonomy,
    g: WordNetGraph,
    A: Iterable[Link],
    B: HomogeneousBilingual,
    max_path: int = 1,
) -> list[PatternInstance]:
    if max_path < 1:
        raise ConfigError(f"max_path must be positive, got {max_path}")
    A = frozenset(a for a in A if a[1] in g)
    A_by_word: dict[str, set[str]] = {}
    for w, s in A:
        A_by_word.setdefault(w, set()).add(s)
    found: set[PatternInstance] = set()
    for hypo, hyper in tax.edges():
        below_syns = _connected_synsets(hypo[0], A_by_word, B, g)
        above_syns = _connected_synsets(hyper[0], A_by_word, B, g)
        paths: set[tuple[str, ...]] = set()
        for s in below_syns:
            paths.update(g.upward_paths(s, max_path))
        for s in above_syns:
            paths.update(g.downward_paths(s, max_path))
        for path in paths:
            above = _kind(hyper[0], path[-1], A, B, g)
            below = _kind(hypo[0], path[0], A, B, g)
            if above is LinkKind.NONE and below is LinkKind.NONE:
                continue
            found.add(PatternInstance(hypo, hyper, path, above, below, tax.primitive))
    return sorted(found, key=_instance_order)


def _instance_order(p: PatternInstance):
    return (p.sp_hypo, p.sp_hyper, p.path)


def combine_patterns(
    instances: Iterable[PatternInstance], conf_table: ConfidenceTable
) -> list[CombinedEvidence]:
    """Noisy-OR evidence for links promoted by both a class-2 and a class-4 pattern."""
    support: dict[Link, dict[int, Fraction]] = {}
    for p in instances:
        c = p.configuration
        if c not in (2, 4):
            continue
        side = "below" if c == 2 else "above"
        conf = conf_table.lookup(c, p.semfile)
        slot = support.setdefault(p.link(side), {})
        slot[c] = max(slot.get(c, Fraction(0)), conf)
    out = []
    for (word, synset), confs in sorted(support.items()):
        if 2 in confs and 4 in confs:
            out.append(CombinedEvidence(word, synset, 1 - (1 - confs[2]) * (1 - confs[4])))
    return out


@dataclass
class Inference:
    new: list[InferredLink]
    boosts: list[tuple[Link, int]]
    rejected: int = 0


def infer_links(
    instances: Iterable[PatternInstance],
    conf_table: ConfidenceTable,
    accept_threshold: Fraction | float,
    existing: Iterable[Link] = (),
    combined: Iterable[CombinedEvidence] = (),
    iteration: int = 1,
) -> Inference:
    """Turn patterns into new links.

    Class 1 only reinforces the two A links it already has. Classes 2, 4 and 5
    promote their B side(s) to a link with the configuration's confidence.
    Configurations 3, 6, 7 and 8 are reported but produce nothing.
    """
    existing = frozenset(existing)
    best: dict[Link, tuple[Fraction, str]] = {}
    boosts: set[tuple[Link, int]] = set()
    rejected = 0

    def offer(link: Link, conf: Fraction, source: str):
        nonlocal rejected
        if link in existing:
            return
        if conf < accept_threshold:
            rejected += 1
            return
        cur = best.get(link)
        if cur is None or (conf, source) > cur:
            best[link] = (conf, source)

    for p in instances:
        c = p.configuration
        if not conf_table.covers(c, p.semfile):
            raise ConfigError(f"no confidence for configuration {c} (semantic file {p.semfile!r})")
        if c == 1:
            boosts.add((p.link("below"), 1))
            boosts.add((p.link("above"), 1))
            continue
        for side in PROMOTES.get(c, ()):
            offer(p.link(side), conf_table.lookup(c, p.semfile), str(c))
    for ev in combined:
        offer((ev.word, ev.synset), ev.confidence, COMBINED)

    new = [InferredLink(w, s, src, conf, iteration) for (w, s), (conf, src) in sorted(best.items())]
    return Inference(new, sorted(boosts), rejected)


@dataclass
class RoundRecord:
    iteration: int
    added: int
    by_configuration: dict[str, int] = field(default_factory=dict)
    by_semfile: dict[str, int] = field(default_factory=dict)
    instances_by_configuration: dict[str, int] = field(default_factory=dict)
    boosts: int = 0
    links: list[Link] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "added": self.added,
            "by_configuration": dict(sorted(self.by_configuration.items())),
            "by_semfile": dict(sorted(self.by_semfile.items())),
            "instances_by_configuration": dict(sorted(self.instances_by_configuration.items())),
            "boosts": self.boosts,
            "links": [list(x) for x in self.links],
        }


@dataclass
class BootstrapResult:
    A: frozenset[Link]
    inferred: list[InferredLink]
    ledger: list[RoundRecord]
    boosts: dict[Link, int]

    @property
    def rounds(self) -> int:
        return len(self.ledger)


def bootstrap(
    A: Iterable[Link],
    B: HomogeneousBilingual,
    taxonomies: Sequence[SenseTaxonomy],
    g: WordNetGraph,
    conf_table: ConfidenceTable,
    accept_threshold: Fraction | float = Fraction(85, 100),
    max_path: int = 1,
    max_iters: int = 10,
    combine: bool = True,
) -> BootstrapResult:
    """Iterate enumerate -> classify -> combine -> infer until no link is
    added or ``max_iters`` rounds have run. Each round sees the A set left by
    the previous one."""
    if max_iters < 1:
        raise ConfigError(f"max_iters must be at least 1, got {max_iters}")
    current = set(A)
    inferred: list[InferredLink] = []
    ledger: list[RoundRecord] = []
    boost_count: Counter = Counter()
    for it in range(1, max_iters + 1):
        new: dict[Link, InferredLink] = {}
        record = RoundRecord(it, 0)
        for tax in taxonomies:
            instances = enumerate_patterns(tax, g, current, B, max_path)
            for p in instances:
                key = str(p.configuration)
                record.instances_by_configuration[key] = record.instances_by_configuration.get(key, 0) + 1
            combined = combine_patterns(instances, conf_table) if combine else []
            res = infer_links(instances, conf_table, accept_threshold, current, combined, it)
            record.boosts += len(res.boosts)
            boost_count.update(link for link, _ in res.boosts)
            for link in res.new:
                if link.key not in new or link.confidence > new[link.key].confidence:
                    new[link.key] = link
        for key in sorted(new):
            link = new[key]
            inferred.append(link)
            record.links.append(key)
            record.by_configuration[link.source_configuration] = record.by_configuration.get(link.source_configuration, 0) + 1
            sf = g.semfile(link.synset)
            record.by_semfile[sf] = record.by_semfile.get(sf, 0) + 1
        record.added = len(new)
        ledger.append(record)
        current.update(new)
        if not new:
            break
    return BootstrapResult(frozenset(current), inferred, ledger, dict(boost_count))


# -- file formats -------------------------------------------------------------


def read_confidence_table(source: str | Path | Iterable[str]) -> ConfidenceTable:
    """``configuration  semfile  confidence`` TSV; semfile ``*`` is the fallback."""
    label = str(source) if isinstance(source, (str, Path)) else "<confidence>"
    entries: dict[tuple[int, str], Fraction] = {}
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 3:
            raise InputError(f"expected 3 tab-separated columns, got {len(cols)}", label, line_no)
        try:
            cfg, conf = int(cols[0]), Fraction(cols[2])
        except ValueError:
            raise InputError(f"bad configuration/confidence {cols[0]!r}/{cols[2]!r}", label, line_no) from None
        if cfg not in CONFIGURATIONS.values():
            raise ConfigError(f"{label}:{line_no}: configuration must be 1-8, got {cfg}")
        if not 0 <= conf <= 1:
            raise ConfigError(f"{label}:{line_no}: confidence outside [0,1]: {cols[2]}")
        entries[(cfg, cols[1] or "*")] = conf
    return ConfidenceTable(entries)


def write_inferred(links: Iterable[InferredLink], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# word\tsynset_id\tconfidence\tconfiguration\titeration\n")
        for x in sorted(links, key=lambda x: (x.iteration, x.word, x.synset)):
            fh.write(f"{x.word}\t{x.synset}\t{float(x.confidence):.4f}\t{x.source_configuration}\t{x.iteration}\n")


def write_ledger(result: BootstrapResult, path: str | Path) -> None:
    payload = {
        "rounds": [r.as_dict() for r in result.ledger],
        "fixpoint": bool(result.ledger) and result.ledger[-1].added == 0,
        "total_added": sum(r.added for r in result.ledger),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
