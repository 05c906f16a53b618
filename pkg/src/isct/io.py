"""Readers and writers for token files, SPMF sequence files and labels."""
from __future__ import annotations

import os
import tempfile
import warnings
from pathlib import Path

from .seqcore import EmptyDatabaseError, SequenceDatabase


class SpmfFormatError(ValueError):
    pass


class FlattenedItemsetWarning(UserWarning):
    """An SPMF itemset with several items was flattened into consecutive items."""


def read_text(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def atomic_write(path, text: str) -> None:
    """Write a whole file via a temporary sibling and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_tokens(text: str) -> SequenceDatabase:
    rows = [line.split() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise EmptyDatabaseError("no sequences found")
    return SequenceDatabase.from_tokens(rows)


def load_tokens(path) -> SequenceDatabase:
    """One sequence per line, whitespace-separated items, blank lines skipped."""
    return parse_tokens(read_text(path))


def format_tokens(db: SequenceDatabase) -> str:
    return "".join(" ".join(row) + "\n" for row in db.as_tokens())


def write_tokens(db: SequenceDatabase, path) -> None:
    atomic_write(path, format_tokens(db))


def parse_spmf(text: str) -> SequenceDatabase:
    rows = []
    flattened = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "@#%":
            continue
        items, itemset, done = [], [], False
        for tok in line.split():
            if done:
                raise SpmfFormatError(f"line {lineno}: tokens after -2 terminator")
            try:
                value = int(tok)
            except ValueError:
                raise SpmfFormatError(f"line {lineno}: malformed token {tok!r}") from None
            if value == -1:
                if len(itemset) > 1:
                    flattened += 1
                items.extend(itemset)
                itemset = []
            elif value == -2:
                if len(itemset) > 1:
                    flattened += 1
                items.extend(itemset)
                done = True
            elif value < 0:
                raise SpmfFormatError(f"line {lineno}: malformed token {tok!r}")
            else:
                itemset.append(tok if tok == str(value) else str(value))
        if not done:
            raise SpmfFormatError(f"line {lineno}: missing -2 terminator")
        if not items:
            raise SpmfFormatError(f"line {lineno}: empty sequence")
        rows.append(items)
    if flattened:
        warnings.warn(f"{flattened} multi-item itemset(s) flattened into item order",
                      FlattenedItemsetWarning, stacklevel=3)
    if not rows:
        raise EmptyDatabaseError("no sequences found")
    return SequenceDatabase.from_tokens(rows)


def load_spmf(path) -> SequenceDatabase:
    """SPMF sequence format: itemsets end with -1, sequences with -2."""
    return parse_spmf(read_text(path))


def load_database(path, fmt: str = "tokens") -> SequenceDatabase:
    if fmt == "tokens":
        return load_tokens(path)
    if fmt == "spmf":
        return load_spmf(path)
    raise ValueError(f"unknown input format {fmt!r}")


def load_labels(path) -> list[str]:
    return [line.strip() for line in read_text(path).splitlines() if line.strip()]


def write_labels(labels, path) -> None:
    atomic_write(path, "".join(f"{x}\n" for x in labels))


def format_assignments(labels) -> str:
    return "".join(f"{i}\t{int(c)}\n" for i, c in enumerate(labels))


def load_assignments(path) -> list[int]:
    out = []
    for line in read_text(path).splitlines():
        if line.strip():
            idx, cid = line.split("\t")
            if int(idx) != len(out):
                raise ValueError(f"assignment indices out of order at {idx}")
            out.append(int(cid))
    return out
