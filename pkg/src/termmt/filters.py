"""Term-collection filters: symbol, containment, and IDF.

The pipeline runs symbol -> containment -> IDF. A failing equivalent is
removed from its entry; an entry is dropped when its source fails or no
equivalents remain, and that drop is attributed to the first filter that
caused it.
"""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator, TransformerMixin

from termmt.errors import ConfigError, InputParseError
from termmt.stemmer import StemmerRuleSet, load_stemmer, stem
from termmt.termbank import TermCollection, TermEntry
from termmt.tokenize import tokenize
from termmt.validation import check_collection, check_fitted, check_threshold

SYMBOL = "symbol"
CONTAINMENT = "containment"
IDF = "idf"

_APOSTROPHES = frozenset("'’")
_HYPHENS = frozenset("-‐")
_DIGITS = frozenset("0123456789")


def is_allowed_char(ch: str) -> bool:
    return (
        unicodedata.category(ch).startswith("L")
        or ch in _DIGITS
        or ch in _APOSTROPHES
        or ch in _HYPHENS
        or ch.isspace()
    )


def symbol_ok(text: str) -> bool:
    """True if ``text`` holds only letters, ASCII digits, apostrophes, whitespace, hyphens."""
    # NFC so that decomposed accents count as letters; the surface itself is untouched
    return all(is_allowed_char(ch) for ch in unicodedata.normalize("NFC", text))


@dataclass(frozen=True)
class SymbolVerdict:
    source_ok: bool
    equivalents_ok: tuple[bool, ...]

    @property
    def keeps_entry(self) -> bool:
        return self.source_ok and any(self.equivalents_ok)


def symbol_filter(entry: TermEntry) -> SymbolVerdict:
    return SymbolVerdict(symbol_ok(entry.source_surface), tuple(symbol_ok(t) for t in entry.targets))


def containment_filter(source: str, equivalent: str) -> bool:
    """Keep verdict: False when the longer side contains the shorter (case-folded)."""
    a, b = source.casefold(), equivalent.casefold()
    if len(a) > len(b) and b in a:
        return False
    if len(b) > len(a) and a in b:
        return False
    return True


@dataclass(frozen=True)
class IdfTable:
    doc_count: int
    df: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.doc_count < 1:
            raise ValueError("doc_count must be >= 1")
        for stem_, n in self.df.items():
            if not 1 <= n <= self.doc_count:
                raise ValueError(f"df[{stem_!r}]={n} outside [1, {self.doc_count}]")

    def idf(self, stem_: str) -> float:
        return idf_value(self, stem_)


def build_idf(corpus: Iterable[Sequence[str]], stemmer: StemmerRuleSet) -> IdfTable:
    """Document frequencies of stemmed tokens; each document is a token sequence.

    ``corpus`` may be a one-pass iterator, so large files can be streamed.
    """
    df: dict[str, int] = {}
    n = 0
    for doc in corpus:
        n += 1
        for s in {stem(tok, stemmer) for tok in doc}:
            df[s] = df.get(s, 0) + 1
    if n == 0:
        raise ValueError("cannot build an IDF table from an empty corpus")
    return IdfTable(n, df)


def idf_value(table: IdfTable, stem_: str) -> float:
    return math.log(table.doc_count / table.df.get(stem_, 1))


def term_idf(source: str, table: IdfTable, stemmer: StemmerRuleSet) -> float:
    """Minimum IDF over the stemmed tokens of ``source``."""
    tokens = tokenize(source)
    if not tokens:
        return math.log(table.doc_count)
    return min(idf_value(table, stem(t, stemmer)) for t in tokens)


def idf_filter(entry: TermEntry, table: IdfTable, threshold: float, stemmer: StemmerRuleSet) -> bool:
    return term_idf(entry.source_surface, table, stemmer) >= threshold


def write_idf_table(table: IdfTable) -> str:
    rows = [f"#doc_count={table.doc_count}"]
    rows += [f"{s}\t{n}" for s, n in sorted(table.df.items())]
    return "\n".join(rows) + "\n"


def parse_idf_table(lines: Iterable[str], path=None) -> IdfTable:
    doc_count = None
    df = {}
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        if line.startswith("#doc_count="):
            doc_count = int(line.split("=", 1)[1])
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[1].isdigit():
            raise InputParseError("expected stem<TAB>df", lineno, path)
        df[cols[0]] = int(cols[1])
    if doc_count is None:
        raise InputParseError("missing #doc_count header", 1, path)
    try:
        return IdfTable(doc_count, df)
    except ValueError as exc:
        raise InputParseError(str(exc), None, path) from None


@dataclass(frozen=True)
class FilterConfig:
    symbol: bool = True
    containment: bool = True
    idf_threshold: float | None = None

    def __post_init__(self):
        if self.idf_threshold is not None:
            check_threshold(self.idf_threshold)


@dataclass
class FilterReport:
    kept: list = field(default_factory=list)
    dropped: list = field(default_factory=list)
    equivalents_dropped: list = field(default_factory=list)

    def to_tsv(self) -> str:
        return "".join(f"{eid}\t{name}\t{reason}\n" for eid, name, reason in self.dropped)

    def drop_counts(self) -> dict:
        counts: dict[str, int] = {}
        for _, name, _ in self.dropped:
            counts[name] = counts.get(name, 0) + 1
        return counts


def _filter_entry(entry, config, table, stemmer, report):
    """Return the surviving entry or None; record what was removed."""
    targets = list(entry.equivalents)
    if config.symbol:
        verdict = symbol_filter(entry)
        if not verdict.source_ok:
            report.dropped.append((entry.id, SYMBOL, "source term contains disallowed symbols"))
            return None
        for eq, ok in zip(entry.equivalents, verdict.equivalents_ok):
            if not ok:
                report.equivalents_dropped.append((entry.id, eq.rank, SYMBOL))
        targets = [eq for eq, ok in zip(entry.equivalents, verdict.equivalents_ok) if ok]
        if not targets:
            report.dropped.append((entry.id, SYMBOL, "no equivalent free of disallowed symbols"))
            return None
    if config.containment:
        survivors = []
        for eq in targets:
            if containment_filter(entry.source_surface, eq.surface):
                survivors.append(eq)
            else:
                report.equivalents_dropped.append((entry.id, eq.rank, CONTAINMENT))
        targets = survivors
        if not targets:
            report.dropped.append((entry.id, CONTAINMENT, "every equivalent is a substring of the source or vice versa"))
            return None
    if config.idf_threshold is not None:
        score = term_idf(entry.source_surface, table, stemmer)
        if score < config.idf_threshold:
            report.dropped.append((entry.id, IDF, f"idf {score:.4f} < {config.idf_threshold:g}"))
            return None
    return entry.with_targets([eq.surface for eq in targets])


def run_filter_pipeline(
    collection: TermCollection,
    config: FilterConfig = FilterConfig(),
    idf_table: IdfTable | None = None,
    stemmer: StemmerRuleSet | None = None,
) -> tuple[TermCollection, FilterReport]:
    """Apply the configured filters; returns the filtered collection and an audit report."""
    if config.idf_threshold is not None:
        if idf_table is None:
            raise ConfigError("IDF filter enabled but no IDF table supplied")
        if stemmer is None:
            raise ConfigError("IDF filter enabled but no source-language stemmer supplied")
    report = FilterReport()
    kept = []
    for entry in collection.entries:
        out = _filter_entry(entry, config, idf_table, stemmer, report)
        if out is not None:
            kept.append(out)
            report.kept.append(entry.id)
    return collection.replace_entries(kept), report


class TermFilter(BaseEstimator, TransformerMixin):
    """Estimator wrapper around :func:`run_filter_pipeline`.

    ``fit`` takes the source-side corpus (token sequences, one per document)
    and is only needed when ``idf_threshold`` is set.

    Attributes set by ``fit``: ``idf_table_``. ``transform`` stores the
    latest audit trail in ``report_``.
    """

    def __init__(self, symbol=True, containment=True, idf_threshold=None, stemmer="en"):
        self.symbol = symbol
        self.containment = containment
        self.idf_threshold = idf_threshold
        self.stemmer = stemmer

    def _config(self):
        return FilterConfig(self.symbol, self.containment, self.idf_threshold)

    def fit(self, X=None, y=None):
        self._config()
        self.stemmer_ = load_stemmer(self.stemmer)
        self.idf_table_ = None if X is None else build_idf(X, self.stemmer_)
        return self

    def transform(self, X: TermCollection) -> TermCollection:
        check_collection(X)
        config = self._config()
        if config.idf_threshold is not None:
            check_fitted(self, "idf_table_")
            if self.idf_table_ is None:
                raise ConfigError("TermFilter with idf_threshold must be fit on a corpus")
        stemmer = getattr(self, "stemmer_", None) or load_stemmer(self.stemmer)
        out, self.report_ = run_filter_pipeline(X, config, getattr(self, "idf_table_", None), stemmer)
        return out
