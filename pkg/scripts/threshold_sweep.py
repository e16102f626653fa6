"""Precision/coverage of the accepted links on the toy fixture as the
acceptance threshold moves, for both combiners.

    python scripts/threshold_sweep.py
"""

import tempfile
from fractions import Fraction
from pathlib import Path

from wnbuild import fixtures
from wnbuild.bilingual import merge_bilinguals, merge_directions, read_bilingual
from wnbuild.evaluate import evaluate, read_gold_links
from wnbuild.graph import load_wordnet
from wnbuild.linker import Combiner, link_words, read_precisions


def main() -> None:
    work = Path(tempfile.mkdtemp(prefix="wnbuild-sweep-"))
    fixtures.materialize(work)
    g = load_wordnet(work / "wordnet.tsv")
    bi = merge_bilinguals(
        merge_directions(read_bilingual(work / name, name)) for name in ("dict_vox.tsv", "dict_collins.tsv")
    )
    precisions = read_precisions(work / "precisions.tsv")
    gold = read_gold_links(work / "gold_links.tsv")
    print(f"{'combiner':<11}{'threshold':>10}{'links':>7}{'precision':>11}{'coverage':>10}")
    for combiner in Combiner:
        for pct in range(0, 101, 10):
            run = link_words(bi, g, precisions, Fraction(pct, 100), Fraction(1), combiner)
            s = evaluate({c.key for c in run.accepted}, gold)
            print(f"{combiner.name:<11}{pct / 100:>10.2f}{s.emitted:>7}{float(s.precision):>11.4f}{float(s.coverage):>10.4f}")


if __name__ == "__main__":
    main()
