"""How many bilingual terms also occur in a (training) parallel corpus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from termmt.evalsuite.terms import find_sublist
from termmt.stemmer import StemmerRuleSet, stem_sequence
from termmt.tokenize import tokenize


@dataclass(frozen=True)
class CoverageReport:
    unique_total: int
    unique_ge1: int
    unique_ge10: int
    running_total: int
    running_ge1: int
    running_ge10: int

    def ratios(self) -> dict:
        def r(a, b):
            return a / b if b else None

        return {
            "unique_ge1": r(self.unique_ge1, self.unique_total),
            "unique_ge10": r(self.unique_ge10, self.unique_total),
            "running_ge1": r(self.running_ge1, self.running_total),
            "running_ge10": r(self.running_ge10, self.running_total),
        }


class _StemIndex:
    def __init__(self, sentences, stemmer):
        self.sentences = [stem_sequence(s, stemmer) for s in sentences]
        self.postings: dict[str, set] = {}
        for k, sent in enumerate(self.sentences):
            for tok in set(sent):
                self.postings.setdefault(tok, set()).add(k)

    def containing(self, phrase) -> set:
        if not phrase:
            return set()
        sets = sorted((self.postings.get(t, set()) for t in set(phrase)), key=len)
        candidates = set.intersection(*sets)
        return {k for k in candidates if find_sublist(self.sentences[k], phrase) >= 0}


def occurrence_counts(terms: Sequence[tuple[str, str]], corpus, stemmer: StemmerRuleSet,
                      target_stemmer: StemmerRuleSet | None = None) -> list[int]:
    """Number of sentence pairs in which both sides of each term pair occur."""
    target_stemmer = target_stemmer or stemmer
    pairs = list(corpus)
    src_index = _StemIndex([s for s, _ in pairs], stemmer)
    tgt_index = _StemIndex([t for _, t in pairs], target_stemmer)
    counts = []
    for src_term, tgt_term in terms:
        s = stem_sequence(tokenize(src_term), stemmer)
        t = stem_sequence(tokenize(tgt_term), target_stemmer)
        counts.append(len(src_index.containing(s) & tgt_index.containing(t)))
    return counts


def coverage(terms: Sequence[tuple[str, str]], corpus, stemmer: StemmerRuleSet,
             target_stemmer: StemmerRuleSet | None = None,
             running_counts: Sequence[int] | None = None) -> CoverageReport:
    """Classify term pairs by how often they occur in ``corpus``.

    ``running_counts`` gives each term pair's number of occurrences in the
    evaluation data; it defaults to 1 per pair (running equals unique).
    """
    terms = list(terms)
    if running_counts is None:
        running_counts = [1] * len(terms)
    if len(running_counts) != len(terms):
        raise ValueError("running_counts must align with terms")
    if len(corpus) == 0:
        raise ValueError("coverage needs a non-empty corpus")
    counts = occurrence_counts(terms, corpus, stemmer, target_stemmer)
    ge1 = [c >= 1 for c in counts]
    ge10 = [c >= 10 for c in counts]
    return CoverageReport(
        unique_total=len(terms),
        unique_ge1=sum(ge1),
        unique_ge10=sum(ge10),
        running_total=sum(running_counts),
        running_ge1=sum(w for w, g in zip(running_counts, ge1) if g),
        running_ge10=sum(w for w, g in zip(running_counts, ge10) if g),
    )
