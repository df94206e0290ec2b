"""Aggregate terminology evaluation and report rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from termmt import __version__
from termmt.errors import InputParseError
from termmt.evalsuite.bleu import bleu
from termmt.evalsuite.ter import ter_edits
from termmt.evalsuite.terms import (
    EXACT, LEMMATIZED, TERM_WEIGHT, EvalInstance, TermAnnotation, term_accuracy, term_weights,
    window_overlap,
)
from termmt.stemmer import StemmerRuleSet
from termmt.termbank import DELIMITER
from termmt.tokenize import tokenize

METRIC_DEFINITIONS = "termmt-eval/1"
TABLE_COLUMNS = ("BLEU", "Accuracy", "Window 2", "Window 3", "1 - TERm")


@dataclass(frozen=True)
class EvalReport:
    exact_accuracy: float | None
    lemma_accuracy: float | None
    window2: float
    window3: float
    one_minus_term: float
    bleu: float
    term_count: int

    def table_row(self) -> tuple:
        return (self.bleu, self.lemma_accuracy, self.window2, self.window3, self.one_minus_term)


def corpus_term(instances: Sequence[EvalInstance], stemmer: StemmerRuleSet,
                weight: float = TERM_WEIGHT) -> float:
    """Corpus TERm: summed weighted edits over summed weighted reference length."""
    edits = length = 0.0
    for inst in instances:
        hw, rw = term_weights(inst, stemmer, weight)
        e, r, _ = ter_edits(inst.hypothesis, inst.reference, hw, rw)
        edits += e
        length += r
    if length == 0:
        raise ValueError("TERm needs non-empty references")
    return edits / length


def evaluate(instances: Sequence[EvalInstance], stemmer: StemmerRuleSet,
             windows: tuple[int, int] = (2, 3), term_weight: float = TERM_WEIGHT) -> EvalReport:
    instances = list(instances)
    exact, count = term_accuracy(instances, EXACT, stemmer)
    lemma, _ = term_accuracy(instances, LEMMATIZED, stemmer)
    return EvalReport(
        exact_accuracy=exact,
        lemma_accuracy=lemma,
        window2=window_overlap(instances, windows[0], stemmer),
        window3=window_overlap(instances, windows[1], stemmer),
        one_minus_term=1.0 - corpus_term(instances, stemmer, term_weight),
        bleu=bleu([i.hypothesis for i in instances], [i.reference for i in instances]),
        term_count=count,
    )


def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def render_text(report, config: dict | None = None) -> str:
    """``key=value`` lines followed by a Table-4 style aggregate table."""
    lines = [f"tool_version={__version__}", f"metric_definitions={METRIC_DEFINITIONS}"]
    if config is not None:
        lines.append("config=" + json.dumps(config, sort_keys=True, ensure_ascii=False))
    for key, value in asdict(report).items():
        lines.append(f"{key}={_fmt(value)}")
    if isinstance(report, EvalReport):
        lines.append("")
        lines.append("\t".join(TABLE_COLUMNS))
        lines.append("\t".join(_fmt(v) for v in report.table_row()))
    return "\n".join(lines) + "\n"


def render_json(report, config: dict | None = None) -> str:
    payload = {
        "tool_version": __version__,
        "metric_definitions": METRIC_DEFINITIONS,
        "config": config,
        "metrics": asdict(report),
    }
    if isinstance(report, EvalReport):
        payload["table"] = dict(zip(TABLE_COLUMNS, report.table_row()))
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def parse_instances(lines: Iterable[str], path=None) -> list[tuple[list, list, list]]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        cols = line.split("\t")
        if len(cols) != 3:
            raise InputParseError("expected source<TAB>hypothesis<TAB>reference", lineno, path)
        out.append(tuple(tokenize(c) for c in cols))
    return out


def parse_term_sidecar(lines: Iterable[str], path=None) -> dict[int, list[TermAnnotation]]:
    out: dict[int, list[TermAnnotation]] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        cols = line.split("\t")
        try:
            if len(cols) != 4:
                raise ValueError("expected sentence_id<TAB>start<TAB>end<TAB>variants")
            variants = tuple(v.strip() for v in cols[3].split(DELIMITER) if v.strip())
            ann = TermAnnotation(int(cols[1]), int(cols[2]), variants)
            out.setdefault(int(cols[0]), []).append(ann)
        except ValueError as exc:
            raise InputParseError(str(exc), lineno, path) from None
    return out


def build_instances(rows, sidecar: dict[int, list[TermAnnotation]], path=None) -> list[EvalInstance]:
    unknown = [k for k in sidecar if not 0 <= k < len(rows)]
    if unknown:
        raise InputParseError(f"term annotations for unknown sentence ids {sorted(unknown)}", path=path)
    out = []
    for k, (src, hyp, ref) in enumerate(rows):
        try:
            out.append(EvalInstance(src, hyp, ref, sidecar.get(k, [])))
        except ValueError as exc:
            raise InputParseError(f"sentence {k}: {exc}", path=path) from None
    return out
