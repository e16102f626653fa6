"""Precision and coverage of emitted (key, value) pairs against a gold file."""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from wnbuild.errors import EvaluationError, InputError
from wnbuild.graph import _iter_lines


class Scores(NamedTuple):
    precision: Fraction
    coverage: Fraction
    emitted: int
    correct: int
    gold_domain: int

    def rendered(self) -> dict:
        return {
            "precision": f"{float(self.precision):.4f}",
            "coverage": f"{float(self.coverage):.4f}",
            "emitted": self.emitted,
            "correct": self.correct,
            "gold_domain": self.gold_domain,
        }


def evaluate(emitted: Iterable[tuple], gold: Iterable[tuple]) -> Scores:
    """``emitted`` and ``gold`` are (key, value) pairs.

    precision = correct / emitted; coverage = emitted keys found in the gold
    key set / size of that set. A key may carry several gold values (a word
    linked to several synsets).
    """
    gold = set(gold)
    if not gold:
        raise EvaluationError("gold file is empty")
    emitted = set(emitted)
    domain = {k for k, _ in gold}
    correct = len(emitted & gold)
    covered = len({k for k, _ in emitted} & domain)
    precision = Fraction(correct, len(emitted)) if emitted else Fraction(0)
    return Scores(precision, Fraction(covered, len(domain)), len(emitted), correct, len(domain))


def read_gold_links(path: str | Path) -> set[tuple[str, str]]:
    """``word  synset_id`` per line -> {(word, synset)}."""
    out = set()
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            raise InputError("expected word<TAB>synset_id", str(path), line_no)
        out.add((cols[0].strip().casefold(), cols[1].strip()))
    return out


def read_gold_tags(path: str | Path) -> set[tuple[tuple[str, int], str]]:
    """``headword  sense_no  tag`` per line -> {((headword, sense_no), tag)}."""
    out = set()
    for line_no, raw in _iter_lines(path):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 3:
            raise InputError("expected headword<TAB>sense_no<TAB>tag", str(path), line_no)
        try:
            out.add(((cols[0].strip().casefold(), int(cols[1])), cols[2].strip()))
        except ValueError:
            raise InputError(f"sense_no must be an integer, got {cols[1]!r}", str(path), line_no) from None
    return out
