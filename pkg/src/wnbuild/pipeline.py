"""Pipeline stages. Each stage reads its inputs from the configuration and
the artifacts of earlier stages in the output directory, writes its own
artifacts plus a JSON report fragment, and returns that fragment."""

from __future__ import annotations

import json
import logging
from collections import Counter
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

from wnbuild import bilingual, linker, merger, semtag, taxonomy
from wnbuild.config import RunConfig
from wnbuild.errors import DependencyError
from wnbuild.evaluate import evaluate, read_gold_links, read_gold_tags
from wnbuild.fixtures import SYNTHETIC_PRECISIONS
from wnbuild.graph import WordNetGraph, _iter_lines, load_wordnet

log = logging.getLogger(__name__)

# artifact file -> stage that writes it
ARTIFACTS = {
    "homogeneous.tsv": "merge-bilinguals",
    "links.tsv": "link",
    "seed_tags.tsv": "seed-tag",
    "salient.tsv": "train-salient",
    "labels.tsv": "label",
    "top_beginners.tsv": "top-beginners",
    "taxonomy.tsv": "build-taxonomy",
    "inferred.tsv": "merge",
    "final_links.tsv": "merge",
    "ledger.json": "merge",
}

STAGE_ORDER = (
    "merge-bilinguals",
    "link",
    "seed-tag",
    "train-salient",
    "label",
    "top-beginners",
    "build-taxonomy",
    "merge",
    "report",
)


class Context:
    """Lazily loaded shared inputs for one stage invocation."""

    def __init__(self, cfg: RunConfig, stage: str):
        self.cfg = cfg
        self.stage = stage
        self.out = Path(cfg.out)
        self._graph: WordNetGraph | None = None
        self._stoplist: frozenset[str] | None = None

    def artifact(self, name: str) -> Path:
        p = self.out / name
        if not p.is_file():
            raise DependencyError(self.stage, ARTIFACTS[name], p)
        return p

    def target(self, name: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        return self.out / name

    @property
    def graph(self) -> WordNetGraph:
        if self._graph is None:
            self.cfg.require("wordnet")
            self._graph = load_wordnet(self.cfg.wordnet)
        return self._graph

    @property
    def stoplist(self) -> frozenset[str]:
        if self._stoplist is None:
            self._stoplist = semtag.read_stoplist(self.cfg.stoplist)
        return self._stoplist

    def homogeneous(self) -> bilingual.HomogeneousBilingual:
        return bilingual.read_homogeneous(self.artifact("homogeneous.tsv"))

    def dictionary(self) -> list[semtag.Definition]:
        self.cfg.require("monolingual")
        return semtag.read_monolingual(self.cfg.monolingual)


def _write_fragment(ctx: Context, fragment: dict) -> dict:
    frag_dir = ctx.out / "fragments"
    frag_dir.mkdir(parents=True, exist_ok=True)
    with open(frag_dir / f"{ctx.stage}.json", "w", encoding="utf-8") as fh:
        json.dump(fragment, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return fragment


def stage_merge_bilinguals(ctx: Context) -> dict:
    ctx.cfg.require("bilinguals")
    maps = []
    per_dict = {}
    for path in ctx.cfg.bilinguals:
        entries = bilingual.read_bilingual(path)
        m = bilingual.merge_directions(entries)
        per_dict[Path(path).stem] = {"entries": len(entries), "words": len(m), "pairs": m.n_pairs()}
        maps.append(m)
    bi = bilingual.merge_bilinguals(maps)
    bilingual.write_homogeneous(bi, ctx.target("homogeneous.tsv"))
    return {"dictionaries": per_dict, "words": len(bi), "pairs": bi.n_pairs()}


def _precisions(cfg: RunConfig):
    if cfg.precisions is None:
        log.warning("no precision table configured; using the bundled SYNTHETIC table")
        return linker.read_precisions(SYNTHETIC_PRECISIONS.splitlines())
    return linker.read_precisions(cfg.precisions)


def stage_link(ctx: Context) -> dict:
    bi = ctx.homogeneous()
    run = linker.link_words(
        bi,
        ctx.graph,
        _precisions(ctx.cfg),
        ctx.cfg.link_threshold,
        ctx.cfg.distance_threshold,
        ctx.cfg.combiner,
        ctx.cfg.exclude_accepted,
    )
    linker.write_links(run.accepted, ctx.target("links.tsv"))
    polysemy = Counter(
        c.name for classes in run.word_classes.values() for c in classes if c.dimension is linker.Dimension.POLYSEMY
    )
    accepted_keys = {c.key for c in run.accepted}
    return {
        "linkable_words": len(run.word_classes),
        "polysemy_partition": dict(sorted(polysemy.items())),
        "class_volumes": {
            cls.name: {"candidates": len(cands), "accepted": len({c.key for c in cands} & accepted_keys)}
            for cls, cands in run.candidates.items()
        },
        "single_class_accepted": len(run.single_class_accepted),
        "intersection_added": len(accepted_keys - run.single_class_accepted),
        "pair_intersections": {f"{a.name}&{b.name}": n for (a, b), n in run.pair_intersections.items() if n},
        "accepted": len(run.accepted),
    }


def stage_seed_tag(ctx: Context) -> dict:
    bi = ctx.homogeneous()
    defs = ctx.dictionary()
    tagged = semtag.tag_seed_by_distance(defs, bi, ctx.graph, ctx.stoplist)
    semtag.write_tagged(tagged, ctx.target("seed_tags.tsv"))
    return {
        "definitions": len(defs),
        "tagged": len(tagged),
        "by_tag": dict(sorted(Counter(t.tag for t in tagged).items())),
    }


def stage_train_salient(ctx: Context) -> dict:
    seeds = semtag.read_tagged(ctx.artifact("seed_tags.tsv"))
    lex = semtag.train_salient(seeds, ctx.stoplist)
    semtag.write_lexicon(lex, ctx.target("salient.tsv"))
    return {
        "training_definitions": len(seeds),
        "salient_entries": len(lex.scores),
        "salient_words": len({w for w, _ in lex.scores}),
        "top_words": {t: [w for w, _ in lex.top_words(t, 5)] for t in lex.tags()},
    }


def stage_label(ctx: Context) -> dict:
    lex = semtag.read_lexicon(ctx.artifact("salient.tsv"))
    defs = ctx.dictionary()
    labelled = semtag.label_definitions(defs, lex, ctx.stoplist)
    semtag.write_tagged(labelled, ctx.target("labels.tsv"))
    return {
        "definitions": len(defs),
        "labelled": len(labelled),
        "ambiguous": sum(t.ambiguous for t in labelled),
        "by_tag": dict(sorted(Counter(t.tag for t in labelled).items())),
    }


def stage_top_beginners(ctx: Context) -> dict:
    labels = semtag.read_tagged(ctx.artifact("labels.tsv"))
    bi = ctx.homogeneous()
    needs_wn = any(name == "F1" for name, _ in taxonomy.parse_filter_spec(ctx.cfg.top_filter))
    g = ctx.graph if needs_wn else None
    table = taxonomy.collect_genus(labels, None, ctx.stoplist)
    summary = {}
    with open(ctx.target("top_beginners.tsv"), "w", encoding="utf-8") as fh:
        fh.write(f"# filter: {ctx.cfg.top_filter}\n# tag\tgenus\tcount\n")
        for tag in sorted(table.tags()):
            kept = taxonomy.apply_filters(table, tag, ctx.cfg.top_filter, bi, g).for_tag(tag)
            for genus in sorted(kept):
                fh.write(f"{tag}\t{genus}\t{kept[genus]}\n")
            summary[tag] = {"genus_terms": len(table.for_tag(tag)), "top_beginners": len(kept)}
    return {"filter": ctx.cfg.top_filter, "by_tag": summary}


def _read_tops(path: Path) -> dict[str, dict[str, int]]:
    tops: dict[str, dict[str, int]] = {}
    for _, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        tag, genus, count = line.split("\t")
        tops.setdefault(tag, {})[genus] = int(count)
    return tops


def stage_build_taxonomy(ctx: Context) -> dict:
    labels = semtag.read_tagged(ctx.artifact("labels.tsv"))
    tops = _read_tops(ctx.artifact("top_beginners.tsv"))
    bi = ctx.homogeneous()
    defs = ctx.dictionary()
    by_head: dict[str, list[semtag.Definition]] = {}
    for d in defs:
        by_head.setdefault(d.headword, []).append(d)
    tags = {td.key: td.tag for td in labels}
    gsd = taxonomy.GsdContext(by_head, ctx.graph, bi, tags, ctx.stoplist)
    genus_sense = {td.key: taxonomy.disambiguate_genus(td.definition, gsd, ctx.cfg.heuristics) for td in labels}
    counts = taxonomy.collect_genus(labels, None, ctx.stoplist)

    taxonomies = []
    summary = {}
    for tag in sorted({td.tag for td in labels}):
        tag_tops = tops.get(tag, {})
        tax = taxonomy.build_taxonomy(tag, tag_tops, labels, genus_sense, counts.for_tag(tag), ctx.stoplist)
        structure = taxonomy.structure_tops(tag_tops, [td.definition for td in labels if td.tag == tag], ctx.stoplist)
        taxonomies.append(tax)
        summary[tag] = {
            "nodes": len(tax.nodes),
            "roots": len(tax.tops),
            "unresolved_genus": len(tax.unresolved),
            "cycles_broken": len(tax.cycles),
            "max_level": max((tax.level(n) for n in tax.nodes), default=0),
            "top_structure_edges": sorted(f"{a}>{b}" for a, b in structure.edges),
        }
    taxonomy.write_taxonomies(taxonomies, ctx.target("taxonomy.tsv"))
    return {"heuristics": list(ctx.cfg.heuristics), "by_tag": summary}


def _confidences(cfg: RunConfig) -> merger.ConfidenceTable:
    if cfg.confidences is None:
        return merger.default_confidence_table()
    return merger.default_confidence_table().with_overrides(merger.read_confidence_table(cfg.confidences).entries)


def stage_merge(ctx: Context) -> dict:
    links = linker.read_links(ctx.artifact("links.tsv"))
    bi = ctx.homogeneous()
    taxes = taxonomy.read_taxonomies(ctx.artifact("taxonomy.tsv"))
    result = merger.bootstrap(
        [c.key for c in links],
        bi,
        taxes,
        ctx.graph,
        _confidences(ctx.cfg),
        ctx.cfg.merge_threshold,
        ctx.cfg.max_path,
        ctx.cfg.max_iters,
        ctx.cfg.combine_patterns,
    )
    merger.write_inferred(result.inferred, ctx.target("inferred.tsv"))
    merger.write_ledger(result, ctx.target("ledger.json"))
    with open(ctx.target("final_links.tsv"), "w", encoding="utf-8") as fh:
        fh.write("# word\tsynset_id\tconfidence\tsource\n")
        rows = [(c.word, c.synset, float(c.confidence), "link:" + c.class_list()) for c in links]
        rows += [(x.word, x.synset, float(x.confidence), f"merge:{x.source_configuration}@{x.iteration}") for x in result.inferred]
        for w, s, conf, src in sorted(rows):
            fh.write(f"{w}\t{s}\t{conf:.4f}\t{src}\n")
    return {
        "rounds": result.rounds,
        "added": len(result.inferred),
        "final_links": len(result.A),
        "boosted_links": len(result.boosts),
    }


# -- report ---------------------------------------------------------------------


def _volumes(path: Path) -> dict:
    pairs = set()
    for _, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if line and not line.startswith("#"):
            cols = line.split("\t")
            pairs.add((cols[0], cols[1]))
    return {
        "words": len({w for w, _ in pairs}),
        "synsets": len({s for _, s in pairs}),
        "connections": len(pairs),
    }


def _link_pairs(path: Path) -> set[tuple[str, str]]:
    return {(r[0], r[1]) for r in _rows(path)}


def _rows(path: Path) -> list[list[str]]:
    return [
        raw.rstrip("\r\n").split("\t")
        for _, raw in _iter_lines(path)
        if raw.strip() and not raw.startswith("#")
    ]


def build_report(ctx: Context) -> dict:
    out = ctx.out
    report: dict = {"volumes": {}, "stages": {}, "evaluation": {}}
    ctx.artifact("links.tsv")
    for name in ("links.tsv", "final_links.tsv"):
        if (out / name).is_file():
            report["volumes"][name] = _volumes(out / name)
    frag_dir = out / "fragments"
    for stage in STAGE_ORDER:
        frag = frag_dir / f"{stage}.json"
        if frag.is_file():
            report["stages"][stage] = json.loads(frag.read_text(encoding="utf-8"))
    if (out / "ledger.json").is_file():
        ledger = json.loads((out / "ledger.json").read_text(encoding="utf-8"))
        report["merge_classes"] = {
            str(r["iteration"]): r["instances_by_configuration"] for r in ledger["rounds"]
        }
    cfg = ctx.cfg
    if cfg.gold_links is not None:
        gold = read_gold_links(cfg.gold_links)
        for name in ("links.tsv", "final_links.tsv"):
            if (out / name).is_file():
                report["evaluation"][name] = evaluate(_link_pairs(out / name), gold).rendered()
    if cfg.gold_tags is not None:
        gold_tags = read_gold_tags(cfg.gold_tags)
        for name in ("seed_tags.tsv", "labels.tsv"):
            if (out / name).is_file():
                emitted = {((r[0], int(r[1])), r[4]) for r in _rows(out / name)}
                report["evaluation"][name] = evaluate(emitted, gold_tags).rendered()
    return report


def render_report(report: dict) -> str:
    lines = ["wordnet build report", ""]
    if report["volumes"]:
        lines.append(f"{'artifact':<18}{'words':>8}{'synsets':>9}{'connections':>13}")
        for name, v in report["volumes"].items():
            lines.append(f"{name:<18}{v['words']:>8}{v['synsets']:>9}{v['connections']:>13}")
        lines.append("")
    link = report["stages"].get("link")
    if link:
        lines.append("link classes (candidates / accepted):")
        for cls, v in link["class_volumes"].items():
            lines.append(f"  {cls:<15}{v['candidates']:>5} / {v['accepted']}")
        lines.append(
            f"  accepted {link['accepted']}: {link['single_class_accepted']} from single classes, "
            f"{link['intersection_added']} added by combining classes"
        )
        lines.append("")
    for stage in ("seed-tag", "label"):
        frag = report["stages"].get(stage)
        if frag:
            lines.append(f"{stage}: {frag['tagged' if stage == 'seed-tag' else 'labelled']} of {frag['definitions']} definitions")
    tax = report["stages"].get("build-taxonomy")
    if tax:
        for tag, v in tax["by_tag"].items():
            lines.append(f"taxonomy {tag}: {v['nodes']} senses, {v['roots']} roots, {v['max_level']} levels")
    if "merge_classes" in report:
        lines.append("")
        lines.append("merge pattern instances per round (configuration: count):")
        for it, counts in report["merge_classes"].items():
            lines.append(f"  round {it}: " + ", ".join(f"{k}:{v}" for k, v in counts.items()))
        m = report["stages"].get("merge", {})
        if m:
            lines.append(f"  added {m['added']} links in {m['rounds']} rounds")
    if report["evaluation"]:
        lines.append("")
        lines.append("evaluation against gold:")
        for name, s in report["evaluation"].items():
            lines.append(f"  {name:<16} precision {s['precision']}  coverage {s['coverage']}  ({s['correct']}/{s['emitted']})")
    return "\n".join(lines) + "\n"


def stage_report(ctx: Context) -> dict:
    report = build_report(ctx)
    with open(ctx.target("report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    text = render_report(report)
    ctx.target("report.txt").write_text(text, encoding="utf-8")
    return report


STAGES: dict[str, Callable[[Context], dict]] = {
    "merge-bilinguals": stage_merge_bilinguals,
    "link": stage_link,
    "seed-tag": stage_seed_tag,
    "train-salient": stage_train_salient,
    "label": stage_label,
    "top-beginners": stage_top_beginners,
    "build-taxonomy": stage_build_taxonomy,
    "merge": stage_merge,
    "report": stage_report,
}


def run_stage(name: str, cfg: RunConfig) -> dict:
    ctx = Context(cfg, name)
    log.info("stage %s", name)
    fragment = STAGES[name](ctx)
    if name != "report":
        _write_fragment(ctx, fragment)
    return fragment


def run_all(cfg: RunConfig) -> dict:
    for name in STAGE_ORDER:
        result = run_stage(name, cfg)
    return result
