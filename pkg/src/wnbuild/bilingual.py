"""Bilingual dictionary ingestion and the direction-merged translation map."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from wnbuild.errors import InputError
from wnbuild.graph import _iter_lines, norm


class Direction(enum.Enum):
    SRC_TO_TGT = "st"  # headword in the wordnet language
    TGT_TO_SRC = "ts"  # headword in the language being built


@dataclass(frozen=True)
class DirectedEntry:
    source_word: str
    direction: Direction
    translations: tuple[str, ...]
    dictionary_id: str = ""

    def __post_init__(self):
        if not self.translations:
            raise ValueError(f"entry {self.source_word!r} has no translations")
        if len(set(self.translations)) != len(self.translations):
            raise ValueError(f"entry {self.source_word!r} repeats a translation")


@dataclass(frozen=True, eq=False)
class HomogeneousBilingual:
    """Target word -> set of source-language translations, both directions mixed.

    ``provenance`` maps each (target, source) pair to the dictionaries that
    asserted it.
    """

    translations: Mapping[str, frozenset[str]] = field(default_factory=dict)
    provenance: Mapping[tuple[str, str], frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        inverse: dict[str, set[str]] = {}
        for t, sources in self.translations.items():
            for s in sources:
                inverse.setdefault(s, set()).add(t)
        object.__setattr__(self, "_inverse", {s: frozenset(ts) for s, ts in inverse.items()})

    def __len__(self) -> int:
        return len(self.translations)

    def __contains__(self, word: object) -> bool:
        return isinstance(word, str) and norm(word) in self.translations

    def __eq__(self, other):
        if not isinstance(other, HomogeneousBilingual):
            return NotImplemented
        return dict(self.translations) == dict(other.translations) and dict(self.provenance) == dict(
            other.provenance
        )

    def get(self, word: str) -> frozenset[str]:
        return self.translations.get(norm(word), frozenset())

    def sources_for(self, source_word: str) -> frozenset[str]:
        """Target words that list ``source_word`` as a translation."""
        return self._inverse.get(norm(source_word), frozenset())

    def words(self) -> list[str]:
        return sorted(self.translations)

    def pairs(self) -> Iterator[tuple[str, str]]:
        for t in sorted(self.translations):
            for s in sorted(self.translations[t]):
                yield t, s

    def n_pairs(self) -> int:
        return sum(len(v) for v in self.translations.values())


def _freeze(trans: Mapping[str, set[str]], prov: Mapping[tuple[str, str], set[str]]) -> HomogeneousBilingual:
    return HomogeneousBilingual(
        translations={t: frozenset(s) for t, s in trans.items()},
        provenance={p: frozenset(ids) for p, ids in prov.items()},
    )


def merge_directions(entries: Iterable[DirectedEntry]) -> HomogeneousBilingual:
    """Collapse directed entries into one target->source map; translation
    order is dropped."""
    trans: dict[str, set[str]] = {}
    prov: dict[tuple[str, str], set[str]] = {}
    for e in entries:
        head = norm(e.source_word)
        for tr in e.translations:
            tr = norm(tr)
            if e.direction is Direction.TGT_TO_SRC:
                pair = (head, tr)
            else:
                pair = (tr, head)
            trans.setdefault(pair[0], set()).add(pair[1])
            prov.setdefault(pair, set()).add(e.dictionary_id)
    return _freeze(trans, prov)


def merge_bilinguals(maps: Iterable[HomogeneousBilingual]) -> HomogeneousBilingual:
    trans: dict[str, set[str]] = {}
    prov: dict[tuple[str, str], set[str]] = {}
    for m in maps:
        for t, sources in m.translations.items():
            trans.setdefault(t, set()).update(sources)
        for pair, ids in m.provenance.items():
            prov.setdefault(pair, set()).update(ids)
    return _freeze(trans, prov)


def read_bilingual(source: str | Path | Iterable[str], dictionary_id: str | None = None) -> list[DirectedEntry]:
    """Parse ``direction  headword  tr1|tr2|...`` lines (direction is st or ts)."""
    if dictionary_id is None:
        dictionary_id = Path(source).stem if isinstance(source, (str, Path)) else "bilingual"
    label = str(source) if isinstance(source, (str, Path)) else dictionary_id
    entries = []
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise InputError(f"expected 3 tab-separated columns, got {len(cols)}", label, line_no)
        direction, head, trans_col = (c.strip() for c in cols)
        try:
            d = Direction(direction.lower())
        except ValueError:
            raise InputError(f"direction must be 'st' or 'ts', got {direction!r}", label, line_no) from None
        if not norm(head):
            raise InputError("empty headword", label, line_no)
        translations = tuple(dict.fromkeys(norm(t) for t in trans_col.split("|") if norm(t)))
        if not translations:
            raise InputError(f"headword {head!r} has no translations", label, line_no)
        entries.append(DirectedEntry(head, d, translations, dictionary_id))
    return entries


def write_homogeneous(bi: HomogeneousBilingual, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# target\tsource\tdictionaries\n")
        for t, s in bi.pairs():
            ids = ",".join(sorted(bi.provenance.get((t, s), ())))
            fh.write(f"{t}\t{s}\t{ids}\n")


def read_homogeneous(path: str | Path) -> HomogeneousBilingual:
    trans: dict[str, set[str]] = {}
    prov: dict[tuple[str, str], set[str]] = {}
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise InputError(f"expected 3 tab-separated columns, got {len(cols)}", str(path), line_no)
        t, s, ids = cols
        trans.setdefault(t, set()).add(s)
        prov.setdefault((t, s), set()).update(i for i in ids.split(",") if i)
    return _freeze(trans, prov)
