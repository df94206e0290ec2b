"""Single-pass suffix-stripping stemmers driven by rule files.

Rule file layout (UTF-8 TSV)::

    #lang=en min_stem=3 fold_case=1
    ies	y	3
    s		3

Each row is ``suffix<TAB>replacement<TAB>min_remaining``. Rules are tried
longest suffix first; at most one fires per token.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from termmt.errors import ConfigError, InputParseError

SHIPPED_LANGUAGES = ("cs", "de", "en", "fr", "ru")


@dataclass(frozen=True)
class StemRule:
    suffix: str
    replacement: str = ""
    min_remaining: int = 1

    def __post_init__(self):
        if not self.suffix:
            raise ValueError("rule suffix must be non-empty")
        if len(self.replacement) > len(self.suffix):
            raise ValueError(f"replacement {self.replacement!r} longer than suffix {self.suffix!r}")


@dataclass(frozen=True)
class StemmerRuleSet:
    language: str
    rules: tuple[StemRule, ...] = ()
    min_stem_length: int = 2
    fold_case: bool = True

    def __post_init__(self):
        if self.min_stem_length < 1:
            raise ValueError("min_stem_length must be positive")
        rules = tuple(r if isinstance(r, StemRule) else StemRule(*r) for r in self.rules)
        # stable: file order is kept among equal-length suffixes
        rules = tuple(sorted(rules, key=lambda r: -len(r.suffix)))
        object.__setattr__(self, "rules", rules)

    def stem(self, token: str) -> str:
        return stem(token, self)

    def stem_all(self, tokens: Iterable[str]) -> tuple[str, ...]:
        return tuple(stem(t, self) for t in tokens)


def stem(token: str, rules: StemmerRuleSet) -> str:
    """Stem one token. Returns the (case-folded) token when no rule applies."""
    word = token.casefold() if rules.fold_case else token
    for rule in rules.rules:
        if not word.endswith(rule.suffix):
            continue
        remaining = len(word) - len(rule.suffix)
        if remaining >= max(rule.min_remaining, rules.min_stem_length):
            return word[:remaining] + rule.replacement
    return word


def identity_stemmer(language: str = "xx", fold_case: bool = True) -> StemmerRuleSet:
    return StemmerRuleSet(language, (), 1, fold_case)


def parse_rules(lines: Iterable[str], path=None) -> StemmerRuleSet:
    header = None
    rules = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            if header is None and "lang=" in line:
                header = _parse_header(line, lineno, path)
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise InputParseError("rule needs suffix, replacement, min_remaining", lineno, path)
        try:
            rules.append(StemRule(cols[0], cols[1], int(cols[2])))
        except ValueError as exc:
            raise InputParseError(str(exc), lineno, path) from None
    if header is None:
        raise InputParseError("missing '#lang=<code> min_stem=<n> fold_case=<0|1>' header", 1, path)
    return StemmerRuleSet(header["lang"], tuple(rules), header["min_stem"], header["fold_case"])


def _parse_header(line, lineno, path):
    fields = dict(kv.split("=", 1) for kv in line.lstrip("#").split() if "=" in kv)
    try:
        return {
            "lang": fields["lang"],
            "min_stem": int(fields.get("min_stem", 2)),
            "fold_case": fields.get("fold_case", "1") == "1",
        }
    except (KeyError, ValueError):
        raise InputParseError(f"bad rule-file header: {line!r}", lineno, path) from None


def format_rules(rules: StemmerRuleSet) -> str:
    head = f"#lang={rules.language} min_stem={rules.min_stem_length} fold_case={int(rules.fold_case)}\n"
    return head + "".join(f"{r.suffix}\t{r.replacement}\t{r.min_remaining}\n" for r in rules.rules)


def load_stemmer(source: str | os.PathLike | StemmerRuleSet) -> StemmerRuleSet:
    """Load a rule set from a shipped language code or a rule-file path."""
    if isinstance(source, StemmerRuleSet):
        return source
    source = str(source)
    if source in SHIPPED_LANGUAGES:
        text = resources.files("termmt.data.stemmers").joinpath(f"{source}.tsv").read_text("utf-8")
        return parse_rules(text.splitlines(), path=f"<shipped {source}>")
    if not os.path.isfile(source):
        raise ConfigError(
            f"stemmer {source!r} is neither a shipped language ({', '.join(SHIPPED_LANGUAGES)}) nor a file"
        )
    from termmt.io import read_lines

    return parse_rules(read_lines(source), path=source)


def stem_sequence(tokens: Sequence[str], rules: StemmerRuleSet) -> tuple[str, ...]:
    return tuple(stem(t, rules) for t in tokens)
