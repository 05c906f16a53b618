"""Items, sequences, databases and patterns.

Items are interned to dense integer ids when a database is built; every
algorithm in the package works on those ids.  Sequences and patterns are
plain tuples of ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence as Seq

import numpy as np

Pattern = tuple[int, ...]


class EmptyDatabaseError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {sym: i for i, sym in enumerate(self.symbols)}
        if len(index) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        object.__setattr__(self, "index", index)

    def __len__(self):
        return len(self.symbols)

    def encode(self, tokens: Iterable[str]) -> Pattern:
        """Map item strings to ids; unknown items become -1 (they never match)."""
        return tuple(self.index.get(t, -1) for t in tokens)

    def decode(self, ids: Iterable[int]) -> list[str]:
        return [self.symbols[i] for i in ids]


@dataclass(frozen=True)
class SequenceDatabase:
    alphabet: Alphabet
    sequences: tuple[Pattern, ...]
    source_ids: tuple[str, ...] | None = None

    def __post_init__(self):
        m = len(self.alphabet)
        for s in self.sequences:
            if len(s) == 0:
                raise ValueError("empty sequences are not allowed in a database")
            if min(s) < 0 or max(s) >= m:
                raise ValueError(f"sequence {s} references ids outside the alphabet")
        if self.source_ids is not None and len(self.source_ids) != len(self.sequences):
            raise ValueError("source_ids must align with sequences")

    @classmethod
    def from_tokens(cls, rows: Iterable[Seq[str]], source_ids=None) -> "SequenceDatabase":
        """Build a database, interning items in first-appearance order."""
        index: dict[str, int] = {}
        encoded = []
        for row in rows:
            encoded.append(tuple(index.setdefault(tok, len(index)) for tok in row))
        if not encoded:
            raise EmptyDatabaseError("database has no sequences")
        return cls(Alphabet(tuple(index)), tuple(encoded),
                   None if source_ids is None else tuple(source_ids))

    def __len__(self):
        return len(self.sequences)

    def __getitem__(self, i):
        return self.sequences[i]

    def __iter__(self):
        return iter(self.sequences)

    def subset(self, indices: Iterable[int]) -> "SequenceDatabase":
        """Sub-database over the same alphabet (may be empty; no source ids)."""
        seqs = tuple(self.sequences[i] for i in indices)
        return SequenceDatabase(self.alphabet, seqs)

    def lengths(self) -> np.ndarray:
        return np.fromiter((len(s) for s in self.sequences), dtype=np.int64,
                           count=len(self.sequences))

    def as_tokens(self) -> list[list[str]]:
        return [self.alphabet.decode(s) for s in self.sequences]


def contains(s: Seq[int], p: Seq[int]) -> bool:
    """True iff ``p`` is a (gapped) subsequence of ``s``. Greedy, O(|s|)."""
    if not p:
        return True
    j, m = 0, len(p)
    for item in s:
        if item == p[j]:
            j += 1
            if j == m:
                return True
    return False


def lcs_length(a: Seq[int], b: Seq[int]) -> int:
    """Length of the longest common subsequence (row-by-row DP)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def occurrences(p: Seq[int], db: SequenceDatabase | Iterable[Seq[int]]) -> int:
    """Number of sequences containing ``p`` (each sequence counted once)."""
    return sum(1 for s in db if contains(s, p))


def support(p: Seq[int], db) -> float:
    n = len(db)
    if n == 0:
        raise EmptyDatabaseError("support is undefined on an empty database")
    return occurrences(p, db) / n


def pad_sequences(seqs: Seq[Seq[int]], fill: int) -> np.ndarray:
    """Stack ragged integer sequences into a 2-D array padded with ``fill``."""
    width = max((len(s) for s in seqs), default=0)
    out = np.full((len(seqs), width), fill, dtype=np.int64)
    for i, s in enumerate(seqs):
        out[i, :len(s)] = s
    return out


def contains_matrix(seqs: Seq[Seq[int]], patterns: Seq[Seq[int]],
                    chunk: int = 1 << 22) -> np.ndarray:
    """Boolean (n_seqs, n_patterns) containment table.

    Vectorized greedy matching: one pointer per (sequence, pattern) pair
    advanced while scanning sequence positions.
    """
    n, q = len(seqs), len(patterns)
    out = np.zeros((n, q), dtype=bool)
    if n == 0 or q == 0:
        return out
    plen = np.array([len(p) for p in patterns], dtype=np.int64)
    # one extra sentinel column so a finished pointer indexes safely
    P = pad_sequences(patterns, -1)
    P = np.concatenate([P, np.full((q, 1), -1, dtype=np.int64)], axis=1)
    S = pad_sequences(seqs, -2)
    cols = np.arange(q)
    rows = max(1, chunk // max(q, 1))
    for lo in range(0, n, rows):
        block = S[lo:lo + rows]
        pos = np.zeros((block.shape[0], q), dtype=np.int64)
        for col in range(block.shape[1]):
            want = P[cols, pos]
            pos += want == block[:, col:col + 1]
        out[lo:lo + rows] = pos >= plen
    return out


def lcs_matrix(seqs: Seq[Seq[int]], patterns: Seq[Seq[int]],
               chunk: int = 1 << 21) -> np.ndarray:
    """Integer (n_seqs, n_patterns) table of LCS lengths.

    Patterns are padded with a value that matches nothing, which leaves the
    LCS unchanged, so all pairs share one DP sweep over sequence positions.
    """
    n, q = len(seqs), len(patterns)
    out = np.zeros((n, q), dtype=np.int64)
    if n == 0 or q == 0:
        return out
    P = pad_sequences(patterns, -1)
    S = pad_sequences(seqs, -2)
    width = P.shape[1]
    rows = max(1, chunk // max(q * (width + 1), 1))
    for lo in range(0, n, rows):
        block = S[lo:lo + rows]
        b = block.shape[0]
        dp = np.zeros((width + 1, b, q), dtype=np.int32)
        for col in range(block.shape[1]):
            item = block[:, col:col + 1]
            new = np.zeros_like(dp)
            for j in range(width):
                match = P[:, j] == item
                np.maximum(dp[j + 1], new[j], out=new[j + 1])
                np.copyto(new[j + 1], dp[j] + 1, where=match)
            dp = new
        out[lo:lo + b] = dp[width]
    return out
