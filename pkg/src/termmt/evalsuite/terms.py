"""Term-use metrics: exact/lemmatized accuracy, window overlap, term weights.

"Lemmatized" matching compares stems produced by the target-language
stemmer; exact matching compares raw tokens.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from termmt.stemmer import StemmerRuleSet, stem_sequence
from termmt.tokenize import tokenize

EXACT = "exact"
LEMMATIZED = "lemmatized"
TERM_WEIGHT = 2.0


@dataclass(frozen=True)
class TermAnnotation:
    start: int
    end: int
    variants: tuple[str, ...]

    def __post_init__(self):
        if not self.variants:
            raise ValueError("a term annotation needs at least one acceptable variant")
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")


@dataclass
class EvalInstance:
    source: list
    hypothesis: list
    reference: list
    term_matches: list = field(default_factory=list)

    def __post_init__(self):
        self.term_matches = [
            tm if isinstance(tm, TermAnnotation) else TermAnnotation(tm[0][0], tm[0][1], tuple(tm[1]))
            for tm in self.term_matches
        ]
        for tm in self.term_matches:
            if tm.end > len(self.source):
                raise ValueError(f"term span [{tm.start}, {tm.end}) beyond source of length {len(self.source)}")


def find_sublist(haystack: Sequence, needle: Sequence, start: int = 0) -> int:
    """Index of the first occurrence of ``needle`` in ``haystack`` at or after ``start``, or -1."""
    n = len(needle)
    if n == 0:
        return -1
    first = needle[0]
    for i in range(start, len(haystack) - n + 1):
        if haystack[i] == first and tuple(haystack[i:i + n]) == tuple(needle):
            return i
    return -1


def _normalize(tokens, mode, stemmer):
    if mode == EXACT:
        return tuple(tokens)
    if mode == LEMMATIZED:
        return stem_sequence(tokens, stemmer)
    raise ValueError(f"unknown match mode {mode!r}")


def locate_term(text: Sequence[str], variants: Sequence[str], mode: str,
                stemmer: StemmerRuleSet) -> tuple[int, int] | None:
    """Span of the first variant (in list order) found in ``text``."""
    norm = _normalize(text, mode, stemmer)
    for v in variants:
        vt = _normalize(tokenize(v), mode, stemmer)
        i = find_sublist(norm, vt)
        if i >= 0:
            return i, i + len(vt)
    return None


def term_accuracy(instances: Sequence[EvalInstance], mode: str = LEMMATIZED,
                  stemmer: StemmerRuleSet | None = None) -> tuple[float | None, int]:
    """Fraction of term occurrences with some variant in the hypothesis.

    Returns ``(accuracy, term_count)``; accuracy is ``None`` when there are
    no term occurrences.
    """
    if mode == LEMMATIZED and stemmer is None:
        raise ValueError("lemmatized accuracy needs a stemmer")
    hits = total = 0
    for inst in instances:
        for tm in inst.term_matches:
            total += 1
            if locate_term(inst.hypothesis, tm.variants, mode, stemmer) is not None:
                hits += 1
    if total == 0:
        return None, 0
    return hits / total, total


def _window(tokens, span, n):
    i, j = span
    return tokens[max(0, i - n):i] + tokens[j:j + n]


def window_overlap(instances: Sequence[EvalInstance], n: int, stemmer: StemmerRuleSet) -> float:
    """Mean context agreement around terms found in both hypothesis and reference.

    Per occurrence: ``|hyp window & ref window| / max(|ref window|, 1)``
    over (stemmed) multisets of up to ``n`` tokens either side of the term.
    """
    if n < 1:
        raise ValueError("window size must be >= 1")
    scores = []
    for inst in instances:
        hyp = list(stem_sequence(inst.hypothesis, stemmer))
        ref = list(stem_sequence(inst.reference, stemmer))
        for tm in inst.term_matches:
            hs = locate_term(inst.hypothesis, tm.variants, LEMMATIZED, stemmer)
            rs = locate_term(inst.reference, tm.variants, LEMMATIZED, stemmer)
            if hs is None or rs is None:
                continue
            hw, rw = Counter(_window(hyp, hs, n)), Counter(_window(ref, rs, n))
            inter = sum((hw & rw).values())
            scores.append(inter / max(sum(rw.values()), 1))
    if not scores:
        return 0.0
    return sum(scores) / len(scores)


def _mark_terms(tokens, variants_list, stemmer, weight):
    norm = stem_sequence(tokens, stemmer)
    weights = [1.0] * len(tokens)
    for variants in variants_list:
        for v in variants:
            vt = stem_sequence(tokenize(v), stemmer)
            i = find_sublist(norm, vt)
            while i >= 0:
                for k in range(i, i + len(vt)):
                    weights[k] = weight
                i = find_sublist(norm, vt, i + 1)
    return weights


def term_weights(instance: EvalInstance, stemmer: StemmerRuleSet,
                 weight: float = TERM_WEIGHT) -> tuple[list[float], list[float]]:
    """Per-token weights for hypothesis and reference: ``weight`` on term tokens, else 1."""
    variants = [tm.variants for tm in instance.term_matches]
    return (_mark_terms(instance.hypothesis, variants, stemmer, weight),
            _mark_terms(instance.reference, variants, stemmer, weight))
