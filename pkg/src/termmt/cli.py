"""Command-line interface.

Every subcommand reads UTF-8, LF-terminated input line by line. Options may
also come from a JSON file given with ``--config`` (keys are option names
with underscores); explicit flags win. The effective configuration is
echoed into every report.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from termmt import __version__
from termmt.aligner import (
    ALIGNMENT, DEFAULT_FLOOR, DEFAULT_PRUNE, FIRST, EquivalentSelector, ParallelCorpus,
    parse_model, train_lexicon, write_model,
)
from termmt.annotator import (
    DEFAULT_CONFIDENCE, DEFAULT_MAX_LEN, DEFAULT_RATE, SEP, annotate_inference,
    annotate_training, parse_lemma_table,
)
from termmt.errors import ConfigError, InputParseError, TermMTError
from termmt.evalsuite.coverage import coverage, occurrence_counts
from termmt.evalsuite.report import (
    build_instances, evaluate, parse_instances, parse_term_sidecar, render_json, render_text,
)
from termmt.filters import (
    FilterConfig, build_idf, parse_idf_table, run_filter_pipeline, write_idf_table,
)
from termmt.io import LineWriter, check_exists, read_lines
from termmt.recognizer import build_index, format_matches, recognize
from termmt.stemmer import identity_stemmer, load_stemmer
from termmt.termbank import format_entry, parse_term_collection
from termmt.tokenize import tokenize
from termmt.validation import check_positive_int, check_probability, check_threshold

log = logging.getLogger("termmt")

DEFAULTS = {
    "src_lang": "en",
    "tgt_lang": "xx",
    "stemmer": None,
    "target_stemmer": None,
    "output": "-",
    "report": None,
    "corpus": None,
    "idf_table": None,
    "idf_threshold": None,
    "no_symbol": False,
    "no_containment": False,
    "src": None,
    "tgt": None,
    "tsv": None,
    "iterations": 5,
    "prune": DEFAULT_PRUNE,
    "strategy": FIRST,
    "model": None,
    "floor": DEFAULT_FLOOR,
    "terms": None,
    "max_len": DEFAULT_MAX_LEN,
    "lemmas": None,
    "rate": DEFAULT_RATE,
    "seed": None,
    "confidence": DEFAULT_CONFIDENCE,
    "windows": [2, 3],
    "term_weight": 2.0,
    "format": "text",
    "eval_src": None,
    "eval_tgt": None,
}


def _stemmer(choice, lang=None):
    if choice in (None, ""):
        try:
            return load_stemmer(lang) if lang else identity_stemmer()
        except ConfigError:
            return identity_stemmer(lang or "xx")
    if choice == "none":
        return identity_stemmer(lang or "xx")
    return load_stemmer(choice)


def _read_collection(path, cfg):
    return parse_term_collection(read_lines(path), cfg["src_lang"], cfg["tgt_lang"], path=path)


def _comment_header(cfg):
    return f"# termmt {__version__} config=" + json.dumps(cfg, sort_keys=True, ensure_ascii=False)


def _tokenize_line(line, lineno, path):
    tokens = tokenize(line)
    for tok in tokens:
        if SEP in tok:
            raise InputParseError(f"token {tok!r} contains the factor separator '|'", lineno, path)
    return tokens


def cmd_filter(cfg):
    collection = _read_collection(cfg["input"], cfg)
    config = FilterConfig(not cfg["no_symbol"], not cfg["no_containment"], cfg["idf_threshold"])
    table = None
    stemmer = _stemmer(cfg["stemmer"], cfg["src_lang"])
    if config.idf_threshold is not None:
        if cfg["idf_table"]:
            table = parse_idf_table(read_lines(cfg["idf_table"]), cfg["idf_table"])
        elif cfg["corpus"]:
            table = build_idf((tokenize(l) for l in read_lines(cfg["corpus"])), stemmer)
        else:
            raise ConfigError("--idf-threshold needs --corpus or --idf-table")
    filtered, report = run_filter_pipeline(collection, config, table, stemmer)
    with LineWriter(cfg["output"]) as out:
        for entry in filtered:
            out.write_line(format_entry(entry))
    if cfg["report"]:
        with LineWriter(cfg["report"]) as rep:
            rep.write_line(_comment_header(cfg))
            for eid, name, reason in report.dropped:
                rep.write_line(f"{eid}\t{name}\t{reason}")
    log.info("kept %d of %d entries", len(filtered), len(collection))


def cmd_idf(cfg):
    stemmer = _stemmer(cfg["stemmer"], cfg["src_lang"])
    table = build_idf((tokenize(l) for l in read_lines(cfg["input"])), stemmer)
    with LineWriter(cfg["output"]) as out:
        for line in write_idf_table(table).splitlines():
            out.write_line(line)


def _parallel_lines(cfg):
    if cfg["tsv"]:
        for lineno, line in enumerate(read_lines(cfg["tsv"]), start=1):
            cols = line.split("\t")
            if len(cols) != 2:
                raise InputParseError("expected source<TAB>target", lineno, cfg["tsv"])
            yield cols[0], cols[1]
        return
    if not (cfg["src"] and cfg["tgt"]):
        raise ConfigError("give --src and --tgt, or --tsv")
    check_exists(cfg["src"])
    check_exists(cfg["tgt"])
    src, tgt = read_lines(cfg["src"]), read_lines(cfg["tgt"])
    sentinel = object()
    lineno = 0
    while True:
        lineno += 1
        s, t = next(src, sentinel), next(tgt, sentinel)
        if s is sentinel and t is sentinel:
            return
        if s is sentinel or t is sentinel:
            raise InputParseError("parallel files differ in line count", lineno, cfg["src"])
        yield s, t


def cmd_align_train(cfg):
    iterations = check_positive_int(cfg["iterations"], "iterations")
    lines = list(_parallel_lines(cfg))
    corpus = ParallelCorpus.from_texts([s for s, _ in lines], [t for _, t in lines])
    if len(corpus) == 0:
        raise InputParseError("parallel corpus has no usable sentence pairs")
    model = train_lexicon(corpus, iterations)
    with LineWriter(cfg["output"]) as out:
        for line in write_model(model, cfg["prune"]).splitlines():
            out.write_line(line)
    log.info("log-likelihood by iteration: %s", model.log_likelihoods)


def _load_model(cfg):
    if not cfg["model"]:
        raise ConfigError("--model is required for this command/strategy")
    return parse_model(read_lines(cfg["model"]), cfg["model"])


def cmd_select(cfg):
    if cfg["strategy"] not in (FIRST, ALIGNMENT):
        raise ConfigError(f"unknown strategy {cfg['strategy']!r}")
    model = _load_model(cfg) if cfg["strategy"] == ALIGNMENT else None
    collection = _read_collection(cfg["input"], cfg)
    selector = EquivalentSelector(cfg["strategy"], model, cfg["floor"]).fit()
    selected = selector.transform(collection)
    with LineWriter(cfg["output"]) as out:
        for entry in selected:
            out.write_line(format_entry(entry))


def _index(cfg):
    if not cfg["terms"]:
        raise ConfigError("--terms (a term collection TSV) is required")
    rules = _stemmer(cfg["stemmer"], cfg["src_lang"])
    collection = _read_collection(cfg["terms"], cfg)
    return build_index(collection, None, rules), rules


def cmd_recognize(cfg):
    index, rules = _index(cfg)
    with LineWriter(cfg["output"]) as out:
        for k, line in enumerate(read_lines(cfg["input"])):
            for row in format_matches(k, recognize(tokenize(line), index, rules)):
                out.write_line(row)


def cmd_annotate(cfg):
    max_len = check_positive_int(cfg["max_len"], "max_len")
    index, rules = _index(cfg)
    with LineWriter(cfg["output"]) as out:
        for lineno, line in enumerate(read_lines(cfg["input"]), start=1):
            tokens = _tokenize_line(line, lineno, cfg["input"])
            matches = recognize(tokens, index, rules)
            out.write_line(str(annotate_inference(tokens, matches, max_len)))


def cmd_annotate_train(cfg):
    rate = check_probability(cfg["rate"])
    if cfg["seed"] is None:
        if rate > 0:
            raise ConfigError("--seed is required when --rate > 0")
        cfg["seed"] = 0
    model = _load_model(cfg)
    lemmas = parse_lemma_table(read_lines(cfg["lemmas"]), cfg["lemmas"]) if cfg["lemmas"] else {}
    with LineWriter(cfg["output"]) as out:
        for k, (s, t) in enumerate(_parallel_lines(cfg)):
            src = _tokenize_line(s, k + 1, cfg["src"] or cfg["tsv"])
            tgt = tokenize(t)
            tgt = [tok for tok in tgt if SEP not in tok]
            if not src or not tgt:
                out.write_line(" ".join(f"{tok}{SEP}w" for tok in src))
                continue
            ann = annotate_training((src, tgt), model, lemmas, rate, int(cfg["seed"]), k,
                                    float(cfg["confidence"]))
            out.write_line(str(ann))


def cmd_evaluate(cfg):
    stemmer = _stemmer(cfg["stemmer"], cfg["tgt_lang"])
    rows = parse_instances(read_lines(cfg["input"]), cfg["input"])
    sidecar = parse_term_sidecar(read_lines(cfg["terms"]), cfg["terms"]) if cfg["terms"] else {}
    instances = build_instances(rows, sidecar, cfg["input"])
    if not instances:
        raise InputParseError("no evaluation instances", path=cfg["input"])
    windows = tuple(int(w) for w in cfg["windows"])
    if len(windows) != 2 or min(windows) < 1:
        raise ConfigError("--windows takes two positive sizes")
    report = evaluate(instances, stemmer, windows, float(cfg["term_weight"]))
    _write_report(report, cfg)


def cmd_coverage(cfg):
    if not cfg["terms"]:
        raise ConfigError("--terms (a term collection TSV) is required")
    src_stem = _stemmer(cfg["stemmer"], cfg["src_lang"])
    tgt_stem = _stemmer(cfg["target_stemmer"], cfg["tgt_lang"])
    collection = _read_collection(cfg["terms"], cfg)
    terms = [(e.source_surface, t) for e in collection for t in e.targets]
    lines = list(_parallel_lines(cfg))
    corpus = ParallelCorpus.from_texts([s for s, _ in lines], [t for _, t in lines], tokenize)
    if len(corpus) == 0:
        raise InputParseError("training corpus has no usable sentence pairs")
    running = None
    if cfg["eval_src"] or cfg["eval_tgt"]:
        if not (cfg["eval_src"] and cfg["eval_tgt"]):
            raise ConfigError("--eval-src and --eval-tgt go together")
        ev = ParallelCorpus.from_texts(read_lines(cfg["eval_src"]), read_lines(cfg["eval_tgt"]), tokenize)
        running = occurrence_counts(terms, ev, src_stem, tgt_stem)
    report = coverage(terms, corpus, src_stem, tgt_stem, running)
    _write_report(report, cfg)


def _write_report(report, cfg):
    shown = {k: v for k, v in cfg.items() if k not in ("func", "output", "config")}
    text = render_json(report, shown) if cfg["format"] == "json" else render_text(report, shown)
    with LineWriter(cfg["output"]) as out:
        for line in text.rstrip("\n").split("\n"):
            out.write_line(line)


def _add_common(p, *, input_help=None, langs=True, stemmer=True, output=True):
    if input_help:
        p.add_argument("input", help=input_help)
    if langs:
        p.add_argument("--src-lang", default=argparse.SUPPRESS, help="source language code")
        p.add_argument("--tgt-lang", default=argparse.SUPPRESS, help="target language code")
    if stemmer:
        p.add_argument("--stemmer", default=argparse.SUPPRESS,
                       help="shipped language code, rule-file path, or 'none' (default: from language)")
    if output:
        p.add_argument("-o", "--output", default=argparse.SUPPRESS, help="output path (default stdout)")
    p.add_argument("--config", default=None, help="JSON file of option defaults")


def _add_parallel(p):
    p.add_argument("--src", default=argparse.SUPPRESS, help="source side, one sentence per line")
    p.add_argument("--tgt", default=argparse.SUPPRESS, help="target side, line-aligned with --src")
    p.add_argument("--tsv", default=argparse.SUPPRESS, help="two-column source<TAB>target file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termmt", description="Terminology filtering, selection, recognition, annotation and evaluation for MT.")
    parser.add_argument("--version", action="version", version=f"termmt {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    p = sub.add_parser("filter", help="clean a term collection")
    _add_common(p, input_help="term collection TSV")
    p.add_argument("--report", default=S, help="write dropped entries as entry_id<TAB>filter<TAB>reason")
    p.add_argument("--corpus", default=S, help="source-language corpus for IDF, one document per line")
    p.add_argument("--idf-table", default=S, help="precomputed table from 'termmt idf'")
    p.add_argument("--idf-threshold", type=float, default=S)
    p.add_argument("--no-symbol", action="store_true", default=S)
    p.add_argument("--no-containment", action="store_true", default=S)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("idf", help="compute document frequencies of stemmed tokens")
    _add_common(p, input_help="corpus, one document per line")
    p.set_defaults(func=cmd_idf)

    p = sub.add_parser("align-train", help="train a lexical translation model with EM")
    _add_common(p, langs=False, stemmer=False)
    _add_parallel(p)
    p.add_argument("--iterations", type=int, default=S)
    p.add_argument("--prune", type=float, default=S, help="drop parameters below this probability")
    p.set_defaults(func=cmd_align_train)

    p = sub.add_parser("select", help="keep one translation equivalent per entry")
    _add_common(p, input_help="term collection TSV", stemmer=False)
    p.add_argument("--strategy", choices=[FIRST, ALIGNMENT], default=S)
    p.add_argument("--model", default=S, help="model file from align-train")
    p.add_argument("--floor", type=float, default=S)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("recognize", help="find term occurrences in text")
    _add_common(p, input_help="text, one sentence per line")
    p.add_argument("--terms", default=S, help="term collection TSV (first equivalent is used)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("annotate", help="emit factored input with target lemma annotations")
    _add_common(p, input_help="text, one sentence per line")
    p.add_argument("--terms", default=S, help="term collection TSV (first equivalent is used)")
    p.add_argument("--max-len", type=int, default=S)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("annotate-train", help="annotate parallel training data")
    _add_common(p, langs=False, stemmer=False)
    _add_parallel(p)
    p.add_argument("--model", default=S)
    p.add_argument("--lemmas", default=S, help="token<TAB>lemma table for the target side")
    p.add_argument("--rate", type=float, default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--confidence", type=float, default=S)
    p.set_defaults(func=cmd_annotate_train)

    p = sub.add_parser("evaluate", help="terminology-aware translation metrics")
    _add_common(p, input_help="source<TAB>hypothesis<TAB>reference TSV")
    p.add_argument("--terms", default=S, help="sidecar: sentence_id<TAB>start<TAB>end<TAB>variants")
    p.add_argument("--windows", type=int, nargs=2, default=S)
    p.add_argument("--term-weight", type=float, default=S)
    p.add_argument("--format", choices=["text", "json"], default=S)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("coverage", help="term coverage in a training corpus")
    _add_common(p)
    _add_parallel(p)
    p.add_argument("--terms", default=S, help="bilingual term collection TSV")
    p.add_argument("--target-stemmer", default=S)
    p.add_argument("--eval-src", default=S, help="evaluation source text (running counts)")
    p.add_argument("--eval-tgt", default=S, help="evaluation target text (running counts)")
    p.add_argument("--format", choices=["text", "json"], default=S)
    p.set_defaults(func=cmd_coverage)
    return parser


def effective_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    explicit = vars(args)
    if explicit.get("config"):
        check_exists(explicit["config"])
        try:
            with open(explicit["config"], encoding="utf-8") as fh:
                loaded = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{explicit['config']}: invalid JSON ({exc})") from None
        if not isinstance(loaded, dict):
            raise ConfigError(f"{explicit['config']}: expected a JSON object")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"{explicit['config']}: unknown keys {sorted(unknown)}")
        cfg.update(loaded)
    cfg.update({k: v for k, v in explicit.items() if k not in ("verbose",)})
    if cfg.get("idf_threshold") is not None:
        cfg["idf_threshold"] = check_threshold(cfg["idf_threshold"])
    for key in ("input", "corpus", "idf_table", "model", "terms", "lemmas", "src", "tgt", "tsv",
                "eval_src", "eval_tgt"):
        if cfg.get(key):
            check_exists(cfg[key])
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="termmt: %(levelname)s: %(message)s")
    try:
        cfg = effective_config(args)
        func = cfg.pop("func")
        cfg.pop("command", None)
        func(cfg)
    except TermMTError as exc:
        print(f"termmt: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"termmt: internal invariant violated: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
