"""Per-primitive sense taxonomies from labelled dictionary definitions.

Genus terms of the definitions carrying a tag are counted and filtered to
pick the top beginners; genus senses are disambiguated with a chain of
heuristics and the definitions are hung under their genus sense.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from wnbuild.bilingual import HomogeneousBilingual
from wnbuild.errors import ConfigError, InputError
from wnbuild.graph import WordNetGraph, _iter_lines, conceptual_distance
from wnbuild.semtag import Definition, TaggedDefinition, extract_genus

SenseKey = tuple[str, int]


@dataclass(frozen=True)
class GenusTable:
    """(genus, tag) -> number of tagged definitions using that genus."""

    counts: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __len__(self):
        return len(self.counts)

    def __contains__(self, key):
        return key in self.counts

    def get(self, genus: str, tag: str) -> int:
        return self.counts.get((genus, tag), 0)

    def for_tag(self, tag: str) -> dict[str, int]:
        return {gen: c for (gen, t), c in self.counts.items() if t == tag}

    def genera(self, tag: str) -> set[str]:
        return {gen for (gen, t) in self.counts if t == tag}

    def tags(self) -> set[str]:
        return {t for _, t in self.counts}

    def _keep(self, tag: str | None, pred: Callable[[str, str, int], bool]) -> "GenusTable":
        return GenusTable(
            {k: c for k, c in self.counts.items() if (tag is not None and k[1] != tag) or pred(k[0], k[1], c)}
        )


def collect_genus(
    tagged: Iterable[TaggedDefinition], tag: str | None = None, stoplist: frozenset[str] = frozenset()
) -> GenusTable:
    """Count genus terms of the definitions labelled ``tag`` (every tag if None)."""
    counts: dict[tuple[str, str], int] = {}
    for td in tagged:
        if tag is not None and td.tag != tag:
            continue
        genus = extract_genus(td.definition, stoplist)
        if genus is None:
            continue
        counts[(genus, td.tag)] = counts.get((genus, td.tag), 0) + 1
    return GenusTable(counts)


# Filters only touch the entries of their own tag so the counts of the other
# tags stay available to F2 after any earlier filter.


def filter_f1(t: GenusTable, tag: str, bi: HomogeneousBilingual, g: WordNetGraph) -> GenusTable:
    """Keep genus terms with some translation in a synset of the tag's semantic file."""

    def ok(genus, _tag, _count):
        return any(g.semfile(s) == tag for tr in bi.get(genus) for s in g.synsets_of(tr))

    return t._keep(tag, ok)


def filter_f2(t: GenusTable, tag: str) -> GenusTable:
    """Keep genus terms used strictly more often under ``tag`` than under any other tag."""
    by_genus: dict[str, dict[str, int]] = {}
    for (gen, tg), c in t.counts.items():
        by_genus.setdefault(gen, {})[tg] = c

    def ok(genus, _tag, count):
        return all(count > c for other, c in by_genus[genus].items() if other != tag)

    return t._keep(tag, ok)


def filter_f3(t: GenusTable, n: int, tag: str | None = None) -> GenusTable:
    """Keep genus terms counted more than ``n`` times."""
    if n < 0:
        raise ConfigError(f"F3 threshold must be non-negative, got {n}")
    return t._keep(tag, lambda _g, _t, c: c > n)


_F3 = re.compile(r"^F3\s*>\s*(\d+)$", re.IGNORECASE)


def parse_filter_spec(spec: str) -> list[tuple[str, int | None]]:
    """``"F2+(F3>9)"`` -> [("F2", None), ("F3", 9)]."""
    steps: list[tuple[str, int | None]] = []
    for part in spec.split("+"):
        part = part.strip().strip("()").strip()
        if not part:
            continue
        if part.upper() in ("F1", "F2"):
            steps.append((part.upper(), None))
            continue
        m = _F3.match(part)
        if not m:
            raise ConfigError(f"unknown filter {part!r} in spec {spec!r}")
        steps.append(("F3", int(m.group(1))))
    return steps


def apply_filters(
    table: GenusTable, tag: str, spec: str, bi: HomogeneousBilingual | None = None, g: WordNetGraph | None = None
) -> GenusTable:
    for name, n in parse_filter_spec(spec):
        if name == "F1":
            if bi is None or g is None:
                raise ConfigError("F1 needs the bilingual map and the wordnet")
            table = filter_f1(table, tag, bi, g)
        elif name == "F2":
            table = filter_f2(table, tag)
        else:
            table = filter_f3(table, n, tag)
    return table


def select_top_beginners(
    tagged: Sequence[TaggedDefinition],
    tag: str,
    spec: str,
    bi: HomogeneousBilingual | None = None,
    g: WordNetGraph | None = None,
    stoplist: frozenset[str] = frozenset(),
) -> set[str]:
    table = collect_genus(tagged, None, stoplist)
    return apply_filters(table, tag, spec, bi, g).genera(tag)


# -- cycle handling ---------------------------------------------------------


def _find_cycle(edges: Mapping) -> list | None:
    """One cycle in a child -> set-of-parents graph, as a node list, or None."""
    colour: dict = {}
    for start in sorted(edges):
        if start in colour:
            continue
        stack = [(start, iter(sorted(edges.get(start, ()))))]
        colour[start] = 1
        path = [start]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = 2
                stack.pop()
                path.pop()
                continue
            state = colour.get(nxt)
            if state == 1:
                return path[path.index(nxt):]
            if state is None:
                colour[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(edges.get(nxt, ())))))
    return None


@dataclass
class TopStructure:
    edges: set[tuple[str, str]]
    roots: set[str]
    dropped: list[tuple[str, str]] = field(default_factory=list)
    cycles: list[list[str]] = field(default_factory=list)


def structure_tops(
    tops: Iterable[str], defs: Iterable[Definition], stoplist: frozenset[str] = frozenset()
) -> TopStructure:
    """Order top beginners among themselves: ``a -> b`` when a definition of
    ``a`` has ``b`` as genus. Cycles are broken by dropping the edge backed by
    the fewest definitions."""
    tops = set(tops)
    support: dict[tuple[str, str], int] = {}
    for d in defs:
        genus = extract_genus(d, stoplist)
        if d.headword in tops and genus in tops and genus != d.headword:
            support[(d.headword, genus)] = support.get((d.headword, genus), 0) + 1
    out = TopStructure(edges=set(support), roots=set())
    while True:
        adj: dict[str, set[str]] = {}
        for a, b in out.edges:
            adj.setdefault(a, set()).add(b)
        cycle = _find_cycle(adj)
        if cycle is None:
            break
        out.cycles.append(cycle)
        ring = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        weakest = min(ring, key=lambda e: (support[e], e))
        out.edges.discard(weakest)
        out.dropped.append(weakest)
    out.roots = tops - {a for a, _ in out.edges}
    return out


# -- genus sense disambiguation -----------------------------------------------


@dataclass(frozen=True)
class GsdContext:
    dictionary: Mapping[str, Sequence[Definition]]
    g: WordNetGraph
    bi: HomogeneousBilingual
    tags: Mapping[SenseKey, str] = field(default_factory=dict)
    stoplist: frozenset[str] = frozenset()


Heuristic = Callable[[Definition, Sequence[Definition], GsdContext], "Definition | None"]


def monosemous(d, senses, ctx):
    return senses[0] if len(senses) == 1 else None


def _headword_genus_distance(d: Definition, sense: Definition, ctx: GsdContext):
    genus = extract_genus(sense, ctx.stoplist)
    if genus is None:
        return math.inf
    best = math.inf
    for ht in sorted(ctx.bi.get(d.headword)):
        for gt in sorted(ctx.bi.get(genus)):
            best = min(best, conceptual_distance(ctx.g, ht, gt).value)
    return best


def by_distance(d, senses, ctx):
    """The sense whose own genus lies closest in the wordnet to the defined
    headword. Indecisive unless the minimum is finite and unique."""
    scored = sorted((_headword_genus_distance(d, s, ctx), s.sense_no, s) for s in senses)
    scored = [x for x in scored if x[0] != math.inf]
    if not scored or (len(scored) > 1 and scored[0][0] == scored[1][0]):
        return None
    return scored[0][2]


def same_tag(d, senses, ctx):
    """The only genus sense labelled with the definition's own tag."""
    tag = ctx.tags.get(d.key)
    hits = [s for s in senses if tag is not None and ctx.tags.get(s.key) == tag]
    return hits[0] if len(hits) == 1 else None


def first_sense(d, senses, ctx):
    return min(senses, key=lambda s: s.sense_no)


HEURISTICS: dict[str, Heuristic] = {
    "MONOSEMOUS": monosemous,
    "DISTANCE": by_distance,
    "SAME_TAG": same_tag,
    "FIRST_SENSE": first_sense,
}

DEFAULT_CHAIN = ("MONOSEMOUS", "DISTANCE", "FIRST_SENSE")


def resolve_chain(names: Iterable[str]) -> list[Heuristic]:
    try:
        return [HEURISTICS[n.strip().upper()] for n in names]
    except KeyError as exc:
        raise ConfigError(f"unknown heuristic {exc.args[0]!r}; known: {sorted(HEURISTICS)}") from None


def disambiguate_genus(
    d: Definition, ctx: GsdContext, chain: Sequence[str] = DEFAULT_CHAIN
) -> SenseKey | None:
    """Pick the sense of ``d``'s genus that ``d`` refers to.

    Returns None when the genus is missing or has no entry in the dictionary;
    such definitions hang directly from the primitive.
    """
    genus = extract_genus(d, ctx.stoplist)
    if genus is None:
        return None
    senses = sorted(ctx.dictionary.get(genus, ()), key=lambda s: s.sense_no)
    # A definition is never its own hypernym.
    senses = [s for s in senses if s.key != d.key]
    if not senses:
        return None
    for h in resolve_chain(chain):
        picked = h(d, senses, ctx)
        if picked is not None:
            return picked.key
    return None


# -- taxonomy assembly --------------------------------------------------------


@dataclass(frozen=True)
class SenseTaxonomy:
    primitive: str
    nodes: frozenset[SenseKey]
    parent: Mapping[SenseKey, SenseKey]
    tops: frozenset[SenseKey]
    unresolved: frozenset[SenseKey] = frozenset()
    cycles: tuple[tuple[SenseKey, ...], ...] = ()

    def edges(self) -> list[tuple[SenseKey, SenseKey]]:
        return sorted(self.parent.items())

    def children(self) -> dict[SenseKey, list[SenseKey]]:
        out: dict[SenseKey, list[SenseKey]] = {}
        for c, p in sorted(self.parent.items()):
            out.setdefault(p, []).append(c)
        return out

    def level(self, node: SenseKey) -> int:
        n = 1
        while node in self.parent:
            node = self.parent[node]
            n += 1
        return n


def build_taxonomy(
    tag: str,
    tops: Iterable[str],
    tagged: Iterable[TaggedDefinition],
    genus_sense: Mapping[SenseKey, SenseKey | None],
    genus_counts: Mapping[str, int] | None = None,
    stoplist: frozenset[str] = frozenset(),
) -> SenseTaxonomy:
    """Hang the definitions labelled ``tag`` under their disambiguated genus.

    A definition is kept when its parent chain reaches a sense of a top
    beginner, a definition whose genus term is a top beginner, or an
    unresolved genus (which attaches to the primitive).
    Senses of top beginners only keep a parent that is itself a top-beginner
    sense. With no tops at all every definition attaches to the primitive.
    A parent link that would close a cycle is dropped (the one whose genus is
    least frequent) and its child attaches to the primitive.
    """
    tops = set(tops)
    genus_counts = genus_counts or {}
    labelled = {td.key: td for td in tagged if td.tag == tag}
    if not tops:
        nodes = frozenset(labelled)
        return SenseTaxonomy(tag, nodes, {}, nodes)

    unresolved: set[SenseKey] = set()
    parent: dict[SenseKey, SenseKey] = {}
    for key in sorted(labelled):
        p = genus_sense.get(key)
        if p is None:
            unresolved.add(key)
            continue
        if p not in labelled:
            continue
        if key[0] in tops and p[0] not in tops:
            continue
        parent[key] = p

    cycles = []
    broken: set[SenseKey] = set()
    while True:
        cycle = _find_cycle({c: {p} for c, p in parent.items()})
        if cycle is None:
            break
        cycles.append(tuple(cycle))
        weakest = min(cycle, key=lambda c: (genus_counts.get(parent[c][0], 0), c))
        del parent[weakest]
        broken.add(weakest)

    included: set[SenseKey] = set()
    for key in labelled:
        chain = [key]
        node = key
        while node in parent:
            node = parent[node]
            chain.append(node)
        if (
            node[0] in tops
            or extract_genus(labelled[node].definition, stoplist) in tops
            or node in unresolved
            or node in broken
        ):
            included.update(chain)

    kept_parent = {c: p for c, p in parent.items() if c in included}
    roots = frozenset(k for k in included if k not in kept_parent)
    return SenseTaxonomy(
        tag,
        frozenset(included),
        kept_parent,
        roots,
        frozenset(unresolved & included),
        tuple(cycles),
    )


def write_taxonomies(taxonomies: Iterable[SenseTaxonomy], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# tag\theadword\tsense_no\tparent_headword\tparent_sense_no\n")
        for tax in sorted(taxonomies, key=lambda t: t.primitive):
            for node in sorted(tax.nodes):
                p = tax.parent.get(node)
                ph, ps = (p[0], str(p[1])) if p else ("-", "-")
                fh.write(f"{tax.primitive}\t{node[0]}\t{node[1]}\t{ph}\t{ps}\n")


def read_taxonomies(path: str | Path) -> list[SenseTaxonomy]:
    nodes: dict[str, set[SenseKey]] = {}
    parents: dict[str, dict[SenseKey, SenseKey]] = {}
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 5:
            raise InputError(f"expected 5 tab-separated columns, got {len(cols)}", str(path), line_no)
        tag, head, sense, ph, ps = cols
        node = (head, int(sense))
        nodes.setdefault(tag, set()).add(node)
        if ph != "-":
            parents.setdefault(tag, {})[node] = (ph, int(ps))
    out = []
    for tag in sorted(nodes):
        par = parents.get(tag, {})
        out.append(SenseTaxonomy(tag, frozenset(nodes[tag]), par, frozenset(nodes[tag] - set(par))))
    return out
