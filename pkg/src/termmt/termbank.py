"""Bilingual term collections and their TSV serialization.

Canonical line format::

    source<TAB>equivalent_1 | equivalent_2 | ...

The equivalent delimiter is the exact three-character string ``" | "``; a bare
``|`` without surrounding spaces is part of the term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from termmt.errors import InputParseError

DELIMITER = " | "


@dataclass(frozen=True)
class TargetEquivalent:
    surface: str
    rank: int

    def __post_init__(self):
        if not self.surface or self.surface != self.surface.strip():
            raise ValueError(f"equivalent surface must be non-empty and trimmed: {self.surface!r}")
        if "\t" in self.surface or "\n" in self.surface:
            raise ValueError(f"equivalent surface contains a tab or newline: {self.surface!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")


@dataclass(frozen=True)
class TermEntry:
    id: int
    source_surface: str
    equivalents: tuple[TargetEquivalent, ...]

    def __post_init__(self):
        if not self.source_surface or self.source_surface != self.source_surface.strip():
            raise ValueError(f"source surface must be non-empty and trimmed: {self.source_surface!r}")
        if "\t" in self.source_surface or "\n" in self.source_surface:
            raise ValueError(f"source surface contains a tab or newline: {self.source_surface!r}")
        if not self.equivalents:
            raise ValueError(f"entry {self.id} has no equivalents")
        if [eq.rank for eq in self.equivalents] != list(range(len(self.equivalents))):
            raise ValueError(f"entry {self.id}: ranks must be 0..n-1 in order")

    @classmethod
    def from_surfaces(cls, id: int, source: str, targets: Sequence[str]) -> "TermEntry":
        return cls(id, source, tuple(TargetEquivalent(t, i) for i, t in enumerate(targets)))

    @property
    def targets(self) -> list[str]:
        return [eq.surface for eq in self.equivalents]

    def with_targets(self, targets: Sequence[str]) -> "TermEntry":
        """Copy of this entry keeping ``targets`` (re-ranked from 0)."""
        return TermEntry.from_surfaces(self.id, self.source_surface, targets)


@dataclass(frozen=True)
class TermCollection:
    source_lang: str
    target_lang: str
    entries: tuple[TermEntry, ...] = ()

    def __post_init__(self):
        if not self.source_lang or not self.target_lang:
            raise ValueError("language codes must be non-empty")
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("entry ids must be unique")
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[TermEntry]:
        return iter(self.entries)

    def by_id(self, entry_id: int) -> TermEntry:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise KeyError(entry_id)

    def replace_entries(self, entries: Iterable[TermEntry]) -> "TermCollection":
        return TermCollection(self.source_lang, self.target_lang, tuple(entries))

    def renumbered(self) -> "TermCollection":
        """Entries re-identified 0..n-1 in order, as a fresh parse would do."""
        return self.replace_entries(
            TermEntry(i, e.source_surface, e.equivalents) for i, e in enumerate(self.entries)
        )


def parse_line(line: str, lineno: int | None = None, path=None) -> tuple[str, list[str]]:
    columns = line.split("\t")
    if len(columns) != 2:
        raise InputParseError(
            f"expected 2 tab-separated columns, found {len(columns)}", line=lineno, path=path
        )
    source = columns[0].strip()
    if not source:
        raise InputParseError("empty source term", line=lineno, path=path)
    targets = [t.strip() for t in columns[1].split(DELIMITER)]
    if any(not t for t in targets):
        raise InputParseError("empty translation equivalent", line=lineno, path=path)
    return source, targets


def parse_term_collection(
    lines: str | Iterable[str], src_lang: str, tgt_lang: str, path=None
) -> TermCollection:
    """Parse TSV text (a string or an iterable of lines) into a collection.

    Blank lines are skipped. Entry ids are 0-based positions among parsed
    entries. Raises :class:`InputParseError` carrying the 1-based line number
    of the first malformed line.
    """
    if isinstance(lines, str):
        lines = lines.split("\n")
    entries = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        source, targets = parse_line(line, lineno, path)
        entries.append(TermEntry.from_surfaces(len(entries), source, targets))
    return TermCollection(src_lang, tgt_lang, tuple(entries))


def format_entry(entry: TermEntry) -> str:
    return entry.source_surface + "\t" + DELIMITER.join(entry.targets)


def write_term_collection(collection: TermCollection) -> str:
    """Serialize to canonical TSV: one LF-terminated line per entry."""
    return "".join(format_entry(e) + "\n" for e in collection.entries)


def read_term_collection(path, src_lang: str, tgt_lang: str) -> TermCollection:
    from termmt.io import read_lines

    return parse_term_collection(read_lines(path), src_lang, tgt_lang, path=path)
