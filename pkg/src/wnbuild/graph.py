"""Source-wordnet skeleton: loading, depth, structural relations and
conceptual distance over hyper/hyponym links."""

from __future__ import annotations

import enum
import heapq
import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import NamedTuple

from wnbuild.errors import WordNetLoadError


def norm(word: str) -> str:
    """Canonical word form: trimmed, case-folded, underscores read as spaces."""
    return " ".join(word.replace("_", " ").split()).casefold()


@dataclass(frozen=True)
class Synset:
    id: str
    pos: str
    lemmas: tuple[str, ...]
    semfile: str
    hypernyms: frozenset[str]
    hyponyms: frozenset[str]


class Relation(enum.Enum):
    SHARED_SYNSET = "SHARED_SYNSET"
    DIRECT_HYPONYM = "DIRECT_HYPONYM"
    DIRECT_HYPERNYM = "DIRECT_HYPERNYM"
    SIBLING = "SIBLING"
    NONE = "NONE"


class Distance(NamedTuple):
    value: Fraction | float
    pair: tuple[str, str] | None


class WordNetGraph:
    """Immutable synset graph. Build it with :func:`load_wordnet`."""

    def __init__(self, synsets: Mapping[str, Synset]):
        self._synsets = dict(synsets)
        index: dict[str, set[str]] = {}
        for sid, syn in self._synsets.items():
            for lemma in syn.lemmas:
                index.setdefault(lemma, set()).add(sid)
        self._lemma_index = {w: frozenset(s) for w, s in index.items()}
        self._depth = _compute_depths(self._synsets)

    @property
    def synsets(self) -> Mapping[str, Synset]:
        return self._synsets

    @property
    def lemma_index(self) -> Mapping[str, frozenset[str]]:
        return self._lemma_index

    @property
    def depth_cache(self) -> Mapping[str, int]:
        return self._depth

    def __len__(self) -> int:
        return len(self._synsets)

    def __contains__(self, sid: object) -> bool:
        return sid in self._synsets

    def __getitem__(self, sid: str) -> Synset:
        try:
            return self._synsets[sid]
        except KeyError:
            raise KeyError(f"unknown synset id {sid!r}") from None

    def synsets_of(self, word: str) -> tuple[str, ...]:
        """Sorted synset ids whose lemma list contains ``word``."""
        return tuple(sorted(self._lemma_index.get(norm(word), ())))

    def is_indexed(self, word: str) -> bool:
        return norm(word) in self._lemma_index

    def semfile(self, sid: str) -> str:
        return self[sid].semfile

    def depth(self, sid: str) -> int:
        return depth(self, sid)

    def edges(self) -> Iterator[tuple[str, str]]:
        """(hyponym, hypernym) pairs in sorted order."""
        for sid in sorted(self._synsets):
            for h in sorted(self._synsets[sid].hypernyms):
                yield sid, h

    def upward_paths(self, sid: str, max_len: int) -> Iterator[tuple[str, ...]]:
        """Every hypernym path starting at ``sid`` with 1..max_len edges.

        Multiple inheritance yields one path per route, so the same
        (start, end) pair can appear more than once.
        """
        stack: list[tuple[str, ...]] = [(sid,)]
        while stack:
            path = stack.pop()
            if len(path) > 1:
                yield path
            if len(path) - 1 < max_len:
                for h in sorted(self[path[-1]].hypernyms, reverse=True):
                    stack.append(path + (h,))

    def downward_paths(self, sid: str, max_len: int) -> Iterator[tuple[str, ...]]:
        """Like :meth:`upward_paths` but following hyponym links; each path is
        returned bottom-up (hyponym first) so it reads as a hypernym path."""
        stack: list[tuple[str, ...]] = [(sid,)]
        while stack:
            path = stack.pop()
            if len(path) > 1:
                yield tuple(reversed(path))
            if len(path) - 1 < max_len:
                for h in sorted(self[path[-1]].hyponyms, reverse=True):
                    stack.append(path + (h,))

    def neighbours(self, sid: str) -> frozenset[str]:
        syn = self[sid]
        return syn.hypernyms | syn.hyponyms


def _compute_depths(synsets: Mapping[str, Synset]) -> dict[str, int]:
    order = TopologicalSorter({sid: syn.hypernyms for sid, syn in synsets.items()}).static_order()
    depths: dict[str, int] = {}
    for sid in order:
        hypers = synsets[sid].hypernyms
        depths[sid] = 1 + min((depths[h] for h in hypers), default=0)
    return depths


def _iter_lines(source) -> Iterator[tuple[int, str]]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            yield from enumerate(fh, start=1)
    else:
        yield from enumerate(source, start=1)


def load_wordnet(source: str | Path | Iterable[str], name: str | None = None) -> WordNetGraph:
    """Read the wordnet TSV format.

    Columns: ``synset_id  pos  semfile  lemma1|lemma2  hyper1,hyper2``; the
    hypernym column is empty for roots and ``#`` starts a comment line.
    ``source`` is a path or any iterable of lines.
    """
    label = name or (str(source) if isinstance(source, (str, Path)) else "<wordnet>")
    rows: dict[str, tuple[int, str, str, tuple[str, ...], tuple[str, ...]]] = {}
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) == 4:
            cols.append("")
        if len(cols) != 5:
            raise WordNetLoadError(f"expected 5 tab-separated columns, got {len(cols)}", label, line_no)
        sid, pos, semfile, lemma_col, hyper_col = (c.strip() for c in cols)
        if not sid:
            raise WordNetLoadError("empty synset id", label, line_no)
        if sid in rows:
            raise WordNetLoadError(f"duplicate synset id {sid!r}", label, line_no)
        lemmas: list[str] = []
        for lemma in lemma_col.split("|"):
            lemma = norm(lemma)
            if lemma and lemma not in lemmas:
                lemmas.append(lemma)
        if not lemmas:
            raise WordNetLoadError(f"synset {sid!r} has no lemmas", label, line_no)
        hypers = tuple(dict.fromkeys(h.strip() for h in hyper_col.split(",") if h.strip()))
        rows[sid] = (line_no, pos, semfile, tuple(lemmas), hypers)

    hyponyms: dict[str, set[str]] = {sid: set() for sid in rows}
    for sid, (line_no, _, _, _, hypers) in rows.items():
        for h in hypers:
            if h not in rows:
                raise WordNetLoadError(
                    f"synset {sid!r} references unknown hypernym {h!r}", label, line_no
                )
            if h == sid:
                raise WordNetLoadError(f"hypernym cycle: [{sid}]", label, line_no)
            hyponyms[h].add(sid)

    synsets = {
        sid: Synset(
            id=sid,
            pos=pos,
            lemmas=lemmas,
            semfile=semfile,
            hypernyms=frozenset(hypers),
            hyponyms=frozenset(hyponyms[sid]),
        )
        for sid, (_, pos, semfile, lemmas, hypers) in rows.items()
    }
    try:
        return WordNetGraph(synsets)
    except CycleError as exc:
        cycle = exc.args[1]
        members = sorted(set(cycle))
        raise WordNetLoadError(f"hypernym cycle: [{', '.join(members)}]", label) from None


def depth(g: WordNetGraph, sid: str) -> int:
    """Depth of a synset; roots have depth 1, multi-parent synsets take the
    shallowest parent."""
    try:
        return g.depth_cache[sid]
    except KeyError:
        raise KeyError(f"unknown synset id {sid!r}") from None


def synset_distance(g: WordNetGraph, sources: Iterable[str], targets: Iterable[str]) -> Distance:
    """Uniform-cost search from any source synset to the nearest target.

    Node cost is 1/depth and both endpoints are paid for. Among paths of equal
    cost the lexicographically smallest id sequence wins, which makes the
    returned pair deterministic.
    """
    targets = frozenset(targets)
    heap: list[tuple[Fraction, tuple[str, ...]]] = []
    for sid in sorted(set(sources)):
        heapq.heappush(heap, (Fraction(1, g.depth_cache[sid]), (sid,)))
    if not targets:
        return Distance(math.inf, None)
    done: set[str] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node in targets:
            return Distance(cost, (path[0], node))
        for nxt in g.neighbours(node):
            if nxt not in done:
                heapq.heappush(heap, (cost + Fraction(1, g.depth_cache[nxt]), path + (nxt,)))
    return Distance(math.inf, None)


def conceptual_distance(g: WordNetGraph, w1: str, w2: str) -> Distance:
    """Minimum over synset pairs of the summed 1/depth along the cheapest
    hyper/hyponym path. Unknown words or disconnected pairs give infinity."""
    s1, s2 = g.synsets_of(w1), g.synsets_of(w2)
    if not s1 or not s2:
        return Distance(math.inf, None)
    return synset_distance(g, s1, s2)


def structural_relation(g: WordNetGraph, a: str, b: str) -> frozenset[Relation]:
    sa, sb = set(g.synsets_of(a)), set(g.synsets_of(b))
    found: set[Relation] = set()
    if sa & sb:
        found.add(Relation.SHARED_SYNSET)
    for x in sa:
        hx = g[x].hypernyms
        for y in sb:
            if x == y:
                continue
            if y in hx:
                found.add(Relation.DIRECT_HYPONYM)
            if x in g[y].hypernyms:
                found.add(Relation.DIRECT_HYPERNYM)
            if hx & g[y].hypernyms:
                found.add(Relation.SIBLING)
    return frozenset(found) if found else frozenset({Relation.NONE})
