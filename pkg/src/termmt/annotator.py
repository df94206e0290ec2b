"""Target lemma annotation (TLA) with ``s``/``t``/``w`` source factors.

Wire format: space-separated tokens, each suffixed with ``|s`` (source term
token), ``|t`` (injected target lemma) or ``|w`` (ordinary word)::

    infections|s инфекция|t result|w in|w mild|w symptoms|w
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from termmt.aligner import LexiconModel
from termmt.errors import InputParseError
from termmt.recognizer import TermMatch
from termmt.tokenize import is_punct, tokenize
from termmt.validation import check_positive_int, check_probability, check_tokens

SEP = "|"
SOURCE, TARGET, WORD = "s", "t", "w"
FACTORS = (SOURCE, TARGET, WORD)
DEFAULT_MAX_LEN = 196
DEFAULT_RATE = 0.1
DEFAULT_CONFIDENCE = 0.5


@dataclass(frozen=True)
class FactoredToken:
    surface: str
    factor: str

    def __post_init__(self):
        if not self.surface or SEP in self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"token {self.surface!r} is empty or contains '|' or whitespace")
        if self.factor not in FACTORS:
            raise ValueError(f"unknown factor {self.factor!r}")

    def __str__(self):
        return f"{self.surface}{SEP}{self.factor}"


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple[FactoredToken, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        prev = None
        for tok in self.tokens:
            if tok.factor == TARGET and prev not in (SOURCE, TARGET):
                raise ValueError("a run of |t tokens must follow a |s token")
            prev = tok.factor

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(str(t) for t in self.tokens)

    @property
    def factors(self) -> list[str]:
        return [t.factor for t in self.tokens]


def parse_factored(line: str, lineno: int | None = None) -> AnnotatedSentence:
    tokens = []
    for item in line.split(" ") if line else []:
        surface, sep, factor = item.rpartition(SEP)
        if not sep:
            raise InputParseError(f"token {item!r} has no factor", lineno)
        try:
            tokens.append(FactoredToken(surface, factor))
        except ValueError as exc:
            raise InputParseError(str(exc), lineno) from None
    try:
        return AnnotatedSentence(tuple(tokens))
    except ValueError as exc:
        raise InputParseError(str(exc), lineno) from None


def _check_matches(matches: Sequence[TermMatch], length: int) -> list[TermMatch]:
    ordered = sorted(matches, key=lambda m: m.start)
    last_end = 0
    for m in ordered:
        if m.start < last_end:
            raise ValueError(f"overlapping term matches at token {m.start}")
        if m.end > length:
            raise ValueError(f"match [{m.start}, {m.end}) beyond sentence of length {length}")
        last_end = m.end
    return ordered


def annotate_inference(sentence: Sequence[str], matches: Sequence[TermMatch],
                       max_len: int = DEFAULT_MAX_LEN) -> AnnotatedSentence:
    """Mark matched spans ``|s`` and insert each selected target after its span as ``|t``.

    Matches are applied left to right; one whose insertion would make the
    output longer than ``max_len`` is skipped and its tokens stay ``|w``.
    A sentence already longer than ``max_len`` is passed through unannotated.
    Raises ``ValueError`` for overlapping or out-of-range matches.
    """
    sentence = check_tokens(sentence, "sentence")
    max_len = check_positive_int(max_len, "max_len")
    ordered = _check_matches(matches, len(sentence))
    budget = max_len - len(sentence)
    applied = []
    for m in ordered:
        target = tokenize(m.selected_target)
        if target and len(target) <= budget:
            applied.append((m, target))
            budget -= len(target)
    out = []
    pos = 0
    for m, target in applied:
        out.extend(FactoredToken(t, WORD) for t in sentence[pos:m.start])
        out.extend(FactoredToken(t, SOURCE) for t in sentence[m.start:m.end])
        out.extend(FactoredToken(t, TARGET) for t in target)
        pos = m.end
    out.extend(FactoredToken(t, WORD) for t in sentence[pos:])
    return AnnotatedSentence(tuple(out))


def strip_annotation(annotated: AnnotatedSentence) -> list[str]:
    return [t.surface for t in annotated.tokens if t.factor != TARGET]


def _rng(seed: int, sentence_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, sentence_index])


def annotate_training(pair, model: LexiconModel, lemma_table: Mapping[str, str] | None = None,
                      rate: float = DEFAULT_RATE, seed: int = 0, sentence_index: int = 0,
                      confidence: float = DEFAULT_CONFIDENCE,
                      stopwords=frozenset()) -> AnnotatedSentence:
    """Annotate the source side of a training pair with target lemmas.

    Each content token (one with a letter or digit, not in ``stopwords``) is
    sampled with probability ``rate`` from a generator seeded by
    ``(seed, sentence_index)``. A sampled token is annotated with the lemma of
    its most probable target-sentence token when that probability exceeds
    ``confidence``. The model is queried with case-folded tokens.
    """
    rate = check_probability(rate)
    src, tgt = pair
    src = check_tokens(src, "source")
    tgt = check_tokens(tgt, "target")
    lemma_table = lemma_table or {}
    rng = _rng(seed, sentence_index)
    draws = rng.random(len(src))
    folded_tgt = [t.casefold() for t in tgt]
    out = []
    for tok, u in zip(src, draws):
        if u >= rate or is_punct(tok) or tok.casefold() in stopwords:
            out.append(FactoredToken(tok, WORD))
            continue
        row = model.prob.get(tok.casefold(), {})
        best, best_p = None, 0.0
        for j, t in enumerate(folded_tgt):
            p = row.get(t, 0.0)
            if p > best_p:
                best, best_p = j, p
        if best is None or best_p <= confidence:
            out.append(FactoredToken(tok, WORD))
            continue
        surface = tgt[best]
        lemma = lemma_table.get(surface, lemma_table.get(surface.casefold(), surface))
        lemma_tokens = [t for t in lemma.split() if SEP not in t]
        if not lemma_tokens:
            out.append(FactoredToken(tok, WORD))
            continue
        out.append(FactoredToken(tok, SOURCE))
        out.extend(FactoredToken(t, TARGET) for t in lemma_tokens)
    return AnnotatedSentence(tuple(out))


def parse_lemma_table(lines, path=None) -> dict:
    table = {}
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0] or not cols[1]:
            raise InputParseError("expected token<TAB>lemma", lineno, path)
        table[cols[0]] = cols[1]
    return table


class TLAAnnotator(BaseEstimator, TransformerMixin):
    """Inference-time annotator.

    ``transform(X, matches)`` takes token sequences and their match lists
    (as produced by :class:`~termmt.recognizer.TermRecognizer`).
    """

    def __init__(self, max_len=DEFAULT_MAX_LEN):
        self.max_len = max_len

    def fit(self, X=None, y=None):
        check_positive_int(self.max_len, "max_len")
        return self

    def transform(self, X, matches=None) -> list[AnnotatedSentence]:
        if matches is None:
            matches = [[] for _ in X]
        if len(matches) != len(X):
            raise ValueError("need one match list per sentence")
        return [annotate_inference(s, m, self.max_len) for s, m in zip(X, matches)]
