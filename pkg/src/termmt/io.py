"""Line-oriented UTF-8 input/output.

Inputs are streamed; a malformed byte sequence raises
:class:`~termmt.errors.InputParseError` with the offending line number
instead of being replaced.
"""

from __future__ import annotations

import os
import sys
from typing import Iterator

from termmt.errors import ConfigError, InputParseError


def check_exists(path) -> None:
    if path is None or path == "-":
        return
    if not os.path.isfile(path):
        raise ConfigError(f"input file not found: {path}")


def read_lines(path) -> Iterator[str]:
    """Yield lines of ``path`` (``"-"`` for stdin) without their LF terminator."""
    check_exists(path)
    if path == "-":
        stream = sys.stdin.buffer
        yield from _decode(stream, "<stdin>")
        return
    with open(path, "rb") as stream:
        yield from _decode(stream, path)


def _decode(stream, name) -> Iterator[str]:
    for lineno, raw in enumerate(stream, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputParseError(f"invalid UTF-8 ({exc.reason})", line=lineno, path=name) from None
        if line.endswith("\n"):
            line = line[:-1]
        if line.endswith("\r"):
            line = line[:-1]
        yield line


class LineWriter:
    """UTF-8, LF-terminated writer for a path or ``"-"`` (stdout)."""

    def __init__(self, path):
        self.path = path
        self._own = path not in (None, "-")
        if self._own:
            self._fh = open(path, "w", encoding="utf-8", newline="\n")
        else:
            self._fh = None

    def write_line(self, line: str) -> None:
        if self._fh is not None:
            self._fh.write(line + "\n")
        else:
            sys.stdout.buffer.write((line + "\n").encode("utf-8"))

    def close(self) -> None:
        if self._own and self._fh is not None:
            self._fh.close()
        elif not self._own:
            sys.stdout.buffer.flush()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
