"""Stem-based term recognition in running text.

Terms are indexed by the stems of their tokenized source side; a sentence is
scanned left to right and at each position the longest indexed key wins.
Only one entry is kept per key (one word sense per form): the lowest
entry id.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator

from termmt.aligner import SelectionResult, select_first
from termmt.errors import InputParseError
from termmt.stemmer import StemmerRuleSet, load_stemmer, stem_sequence
from termmt.termbank import TermCollection
from termmt.tokenize import tokenize
from termmt.validation import check_fitted, check_tokens

log = logging.getLogger(__name__)


class IndexingError(InputParseError):
    pass


@dataclass(frozen=True)
class TermMatch:
    start: int
    end: int
    entry_id: int
    selected_target: str

    def __post_init__(self):
        if not self.start < self.end:
            raise ValueError(f"empty match span [{self.start}, {self.end})")

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass
class TermIndex:
    keys: dict = field(default_factory=dict)  # stem tuple -> (entry_id, selected target)
    max_key_len: int = 1
    collisions: list = field(default_factory=list)  # (kept id, discarded id, key)

    def __len__(self):
        return len(self.keys)

    def lookup(self, key: tuple):
        return self.keys.get(tuple(key))


def build_index(collection: TermCollection, selections: Sequence[SelectionResult] | None,
                rules: StemmerRuleSet) -> TermIndex:
    """Index ``collection`` by stemmed source form.

    ``selections`` name the equivalent stored for each entry; ``None``
    means the first equivalent of every entry.
    """
    if selections is None:
        selections = [select_first(e) for e in collection.entries]
    chosen = {sel.entry_id: sel.rank for sel in selections}
    index = TermIndex()
    for entry in sorted(collection.entries, key=lambda e: e.id):
        if entry.id not in chosen:
            raise IndexingError(f"entry {entry.id} has no selection")
        tokens = tokenize(entry.source_surface)
        if not tokens:
            raise IndexingError(f"entry {entry.id} source {entry.source_surface!r} has no tokens")
        key = stem_sequence(tokens, rules)
        if key in index.keys:
            kept = index.keys[key][0]
            index.collisions.append((kept, entry.id, key))
            log.warning("term entries %d and %d share stemmed form %r; keeping %d",
                        kept, entry.id, " ".join(key), kept)
            continue
        index.keys[key] = (entry.id, entry.targets[chosen[entry.id]])
        index.max_key_len = max(index.max_key_len, len(key))
    return index


def recognize(sentence: Sequence[str], index: TermIndex, rules: StemmerRuleSet) -> list[TermMatch]:
    """Greedy leftmost-longest, non-overlapping matches of ``index`` keys."""
    sentence = check_tokens(sentence, "sentence")
    if not index.keys:
        return []
    stems = stem_sequence(sentence, rules)
    matches = []
    i, n = 0, len(stems)
    while i < n:
        for length in range(min(index.max_key_len, n - i), 0, -1):
            hit = index.keys.get(stems[i:i + length])
            if hit is not None:
                matches.append(TermMatch(i, i + length, hit[0], hit[1]))
                i += length
                break
        else:
            i += 1
    return matches


def format_matches(sentence_id: int, matches: Iterable[TermMatch]) -> list[str]:
    return [f"{sentence_id}\t{m.start}\t{m.end}\t{m.entry_id}\t{m.selected_target}" for m in matches]


class TermRecognizer(BaseEstimator):
    """Estimator wrapper: ``fit`` builds the index, ``transform`` finds matches.

    ``fit(X, selections=None)`` takes a :class:`TermCollection`;
    ``transform`` takes a list of token sequences and returns one match list
    per sentence.
    """

    def __init__(self, stemmer="en"):
        self.stemmer = stemmer

    def fit(self, X: TermCollection, y=None, selections=None):
        self.rules_ = load_stemmer(self.stemmer)
        self.index_ = build_index(X, selections, self.rules_)
        return self

    def transform(self, X) -> list[list[TermMatch]]:
        check_fitted(self, "index_")
        return [recognize(tokens, self.index_, self.rules_) for tokens in X]
