"""Lexical translation model trained with IBM Model 1 EM, and equivalent selection.

The model estimates ``p(t | s)`` for source tokens ``s`` (plus a ``NULL``
token present in every source sentence) and target tokens ``t``. Training
is single-threaded, iterates pairs in corpus order and therefore is
bit-for-bit deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from sklearn.base import BaseEstimator

from termmt.errors import ConfigError, InputParseError
from termmt.termbank import TermCollection, TermEntry
from termmt.tokenize import tokenize
from termmt.validation import check_fitted, check_positive_int

NULL = "<NULL>"
FIRST = "first"
ALIGNMENT = "alignment"
DEFAULT_FLOOR = 1e-9
DEFAULT_PRUNE = 1e-6


def fold_tokenize(text: str) -> list[str]:
    return [t.casefold() for t in tokenize(text)]


@dataclass
class ParallelCorpus:
    pairs: list = field(default_factory=list)

    def __post_init__(self):
        clean = []
        for i, (src, tgt) in enumerate(self.pairs):
            if not src or not tgt:
                raise ValueError(f"pair {i}: both sides must be non-empty")
            clean.append((tuple(src), tuple(tgt)))
        self.pairs = clean

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @classmethod
    def from_texts(cls, src_lines: Iterable[str], tgt_lines: Iterable[str],
                   tokenizer: Callable[[str], list] = fold_tokenize, skip_empty: bool = True):
        """Build from line-aligned texts; pairs with an empty side are skipped."""
        pairs = []
        for lineno, (s, t) in enumerate(_zip_strict(src_lines, tgt_lines), start=1):
            ss, tt = tokenizer(s), tokenizer(t)
            if not ss or not tt:
                if skip_empty:
                    continue
                raise InputParseError("empty side in parallel pair", lineno)
            pairs.append((ss, tt))
        return cls(pairs)


def _zip_strict(a, b):
    sentinel = object()
    ia, ib = iter(a), iter(b)
    lineno = 0
    while True:
        x, y = next(ia, sentinel), next(ib, sentinel)
        lineno += 1
        if x is sentinel and y is sentinel:
            return
        if x is sentinel or y is sentinel:
            raise InputParseError("parallel files differ in line count", lineno)
        yield x, y


@dataclass
class LexiconModel:
    """Conditional probabilities ``prob[s][t] = p(t | s)``."""

    prob: dict = field(default_factory=dict)
    source_vocab: frozenset = frozenset()
    target_vocab: frozenset = frozenset()
    trained_iterations: int = 0
    log_likelihoods: list = field(default_factory=list)

    def __post_init__(self):
        if not self.source_vocab:
            self.source_vocab = frozenset(s for s in self.prob if s != NULL)
        if not self.target_vocab:
            self.target_vocab = frozenset(t for row in self.prob.values() for t in row)

    def p(self, target: str, source: str) -> float:
        return self.prob.get(source, {}).get(target, 0.0)

    def row_sums(self) -> dict:
        return {s: math.fsum(row.values()) for s, row in self.prob.items()}

    def score(self, source_tokens, target_tokens, floor: float = DEFAULT_FLOOR) -> float:
        return score_equivalent(self, source_tokens, target_tokens, floor)


def _sentence_loglik(model_prob, src, tgt):
    sources = (NULL,) + tuple(src)
    norm = 1.0 / len(sources)
    total = 0.0
    for t in tgt:
        mass = sum(model_prob.get(s, {}).get(t, 0.0) for s in sources)
        total += math.log(norm * mass) if mass > 0 else -math.inf
    return total


def corpus_log_likelihood(model: LexiconModel, corpus: ParallelCorpus) -> float:
    """Model 1 log-likelihood with the sentence-length term dropped."""
    return math.fsum(_sentence_loglik(model.prob, s, t) for s, t in corpus)


def train_lexicon(corpus: ParallelCorpus, iterations: int = 5) -> LexiconModel:
    """Run ``iterations`` rounds of Model 1 EM from a uniform start.

    ``model.log_likelihoods[k]`` is the corpus log-likelihood under the
    parameters after ``k`` iterations (index 0 = uniform initialization).
    """
    iterations = check_positive_int(iterations, "iterations")
    if len(corpus) == 0:
        raise ValueError("cannot train a lexicon on an empty corpus")
    src_vocab = sorted({s for src, _ in corpus for s in src})
    tgt_vocab = sorted({t for _, tgt in corpus for t in tgt})
    uniform = 1.0 / len(tgt_vocab)
    prob = None
    history = []
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = {}
        loglik = 0.0
        for src, tgt in corpus:
            sources = (NULL,) + src
            norm = 1.0 / len(sources)
            rows = [counts.setdefault(s, {}) for s in sources]
            if prob is None:
                weights = [uniform] * len(sources)
            for t in tgt:
                if prob is not None:
                    weights = [prob[s].get(t, 0.0) for s in sources]
                z = sum(weights)
                loglik += math.log(norm * z)
                for row, w in zip(rows, weights):
                    row[t] = row.get(t, 0.0) + w / z
        history.append(loglik)
        prob = {}
        for s, row in counts.items():
            total = math.fsum(row.values())
            prob[s] = {t: c / total for t, c in row.items()}
    model = LexiconModel(prob, frozenset(src_vocab), frozenset(tgt_vocab), iterations)
    history.append(corpus_log_likelihood(model, corpus))
    model.log_likelihoods = history
    return model


def score_equivalent(model: LexiconModel, source_term: Sequence[str], equivalent: Sequence[str],
                     floor: float = DEFAULT_FLOOR) -> float:
    """Mean per-target-token log of the Model 1 emission probability.

    Target tokens the model never saw, or whose probability falls below
    ``floor``, contribute ``log(floor)``.
    """
    if not source_term or not equivalent:
        raise ValueError("source term and equivalent must be non-empty")
    sources = (NULL,) + tuple(source_term)
    norm = 1.0 / len(sources)
    total = 0.0
    for t in equivalent:
        if t not in model.target_vocab:
            total += math.log(floor)
            continue
        mass = norm * sum(model.p(t, s) for s in sources)
        total += math.log(max(mass, floor))
    return total / len(equivalent)


@dataclass(frozen=True)
class SelectionResult:
    entry_id: int
    rank: int
    scores: tuple = ()
    strategy: str = FIRST


def select_first(entry: TermEntry) -> SelectionResult:
    return SelectionResult(entry.id, 0, (), FIRST)


def select_by_alignment(entry: TermEntry, model: LexiconModel,
                        tokenizer: Callable[[str], list] = fold_tokenize,
                        floor: float = DEFAULT_FLOOR) -> SelectionResult:
    """Pick the equivalent with the highest :func:`score_equivalent`; ties go to the lowest rank."""
    if len(entry.equivalents) == 1:
        return SelectionResult(entry.id, 0, (), ALIGNMENT)
    src = tokenizer(entry.source_surface) or [entry.source_surface.casefold()]
    scores = []
    for eq in entry.equivalents:
        tgt = tokenizer(eq.surface) or [eq.surface.casefold()]
        scores.append(score_equivalent(model, src, tgt, floor))
    best = max(range(len(scores)), key=lambda i: (scores[i], -i))
    return SelectionResult(entry.id, best, tuple(scores), ALIGNMENT)


def apply_selections(collection: TermCollection, selections: Sequence[SelectionResult]) -> TermCollection:
    """Collection with exactly the selected equivalent left in each entry."""
    chosen = {sel.entry_id: sel.rank for sel in selections}
    return collection.replace_entries(
        e.with_targets([e.targets[chosen[e.id]]]) for e in collection.entries
    )


def write_model(model: LexiconModel, prune: float = DEFAULT_PRUNE) -> str:
    lines = [f"#iterations={model.trained_iterations}"]
    for s in sorted(model.prob):
        for t, p in sorted(model.prob[s].items()):
            if p >= prune:
                lines.append(f"{s}\t{t}\t{p!r}")
    return "\n".join(lines) + "\n"


def parse_model(lines: Iterable[str], path=None) -> LexiconModel:
    """Load a persisted model. Rows are renormalized to undo pruning loss."""
    prob: dict[str, dict[str, float]] = {}
    iterations = 0
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        if line.startswith("#iterations="):
            iterations = int(line.split("=", 1)[1])
            continue
        cols = line.split("\t")
        try:
            if len(cols) != 3:
                raise ValueError
            p = float(cols[2])
            if not 0.0 <= p <= 1.0:
                raise ValueError
        except ValueError:
            raise InputParseError("expected source<TAB>target<TAB>probability", lineno, path) from None
        prob.setdefault(cols[0], {})[cols[1]] = p
    for s, row in prob.items():
        total = math.fsum(row.values())
        if total > 0:
            prob[s] = {t: p / total for t, p in row.items()}
    return LexiconModel(prob, trained_iterations=iterations)


class LexiconAligner(BaseEstimator):
    """Estimator that trains a :class:`LexiconModel` on a :class:`ParallelCorpus`.

    ``fit(X)`` accepts a ``ParallelCorpus`` or a list of
    ``(source_tokens, target_tokens)`` pairs; the trained model is in
    ``model_``.
    """

    def __init__(self, iterations=5, floor=DEFAULT_FLOOR):
        self.iterations = iterations
        self.floor = floor

    def fit(self, X, y=None):
        corpus = X if isinstance(X, ParallelCorpus) else ParallelCorpus(list(X))
        self.model_ = train_lexicon(corpus, self.iterations)
        return self

    def score(self, source_tokens, target_tokens) -> float:
        check_fitted(self, "model_")
        return score_equivalent(self.model_, source_tokens, target_tokens, self.floor)


class EquivalentSelector(BaseEstimator):
    """Reduce each term entry to one translation equivalent.

    ``strategy="first"`` keeps the first listed equivalent and never looks at
    a model; ``strategy="alignment"`` needs ``model`` (a trained
    :class:`LexiconModel`).
    """

    def __init__(self, strategy=FIRST, model=None, floor=DEFAULT_FLOOR):
        self.strategy = strategy
        self.model = model
        self.floor = floor

    def fit(self, X=None, y=None):
        if self.strategy not in (FIRST, ALIGNMENT):
            raise ConfigError(f"unknown selection strategy {self.strategy!r}")
        if self.strategy == ALIGNMENT and self.model is None:
            raise ConfigError("alignment strategy requires a lexicon model")
        self.fitted_ = True
        return self

    def select(self, X: TermCollection) -> list[SelectionResult]:
        check_fitted(self, "fitted_")
        if self.strategy == FIRST:
            return [select_first(e) for e in X.entries]
        return [select_by_alignment(e, self.model, floor=self.floor) for e in X.entries]

    def transform(self, X: TermCollection) -> TermCollection:
        self.selections_ = self.select(X)
        return apply_selections(X, self.selections_)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)
