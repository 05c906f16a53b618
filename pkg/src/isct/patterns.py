"""Top-N frequent pattern mining and relative-risk split selection."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence as Seq

import numpy as np

from .seqcore import Pattern, contains_matrix


@dataclass(frozen=True)
class MiningConfig:
    max_patterns_per_cluster: int | None = 512   # None: no budget
    max_pattern_len: int | None = None           # None: projection maxS
    min_pattern_len: int = 1

    def __post_init__(self):
        if self.max_patterns_per_cluster is not None and self.max_patterns_per_cluster < 1:
            raise ValueError("max_patterns_per_cluster must be >= 1")
        if self.min_pattern_len < 1:
            raise ValueError("min_pattern_len must be >= 1")
        if self.max_pattern_len is not None and self.max_pattern_len < self.min_pattern_len:
            raise ValueError("min_pattern_len must not exceed max_pattern_len")


class _Ranked:
    """Heap entry ordered so that the heap top is the *worst* pattern."""
    __slots__ = ("key", "pattern", "count")

    def __init__(self, pattern, count):
        self.pattern = pattern
        self.count = count
        self.key = (-count, len(pattern), pattern)

    def __lt__(self, other):
        return self.key > other.key


def mine_frequent(sequences: Iterable[Seq[int]], max_patterns: int | None = 512,
                  max_len: int | None = None, min_len: int = 1) -> list[tuple[Pattern, int]]:
    """PrefixSpan-style top-N miner.

    Returns ``(pattern, count)`` pairs ordered by descending count, then
    shorter length, then item order.  ``count`` is the number of sequences
    containing the pattern.  Once the budget is full, the current worst
    entry acts as a rising threshold: a prefix ranked below it cannot have
    a descendant ranked above it, so its projected database is dropped.
    """
    seqs = [tuple(s) for s in sequences]
    if not seqs:
        return []
    max_len = max_len if max_len is not None else max(len(s) for s in seqs)
    # firsts[sid][start]: (item, next start) for the first occurrence of each
    # item at or after ``start``
    firsts = []
    for s in seqs:
        table = [()] * (len(s) + 1)
        row: dict[int, int] = {}
        for pos in range(len(s) - 1, -1, -1):
            row[s[pos]] = pos + 1
            table[pos] = tuple(row.items())
        firsts.append(table)
    heap: list[_Ranked] = []

    def full():
        return max_patterns is not None and len(heap) >= max_patterns

    def grow(prefix: Pattern, projected: list[tuple[int, int]]):
        if len(prefix) >= max_len:
            return
        ext: dict[int, list[tuple[int, int]]] = {}
        for sid, start in projected:
            for item, nxt in firsts[sid][start]:
                if item in ext:
                    ext[item].append((sid, nxt))
                else:
                    ext[item] = [(sid, nxt)]
        for item in sorted(ext):
            proj = ext[item]
            count = len(proj)
            pattern = prefix + (item,)
            recorded = len(pattern) >= min_len
            if full():
                worst = heap[0]
                if recorded:
                    if (-count, len(pattern), pattern) > worst.key:
                        continue
                elif count < worst.count:
                    continue
            if recorded:
                entry = _Ranked(pattern, count)
                if full():
                    heapq.heapreplace(heap, entry)
                else:
                    heapq.heappush(heap, entry)
            grow(pattern, proj)

    grow((), [(i, 0) for i in range(len(seqs))])
    return [(e.pattern, e.count) for e in sorted(heap, key=lambda e: e.key)]


def mine_top_frequent(cluster, config: MiningConfig | None = None) -> list[Pattern]:
    config = config or MiningConfig()
    mined = mine_frequent(cluster, config.max_patterns_per_cluster,
                          config.max_pattern_len, config.min_pattern_len)
    return [p for p, _ in mined]


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class ScoredPattern:
    pattern: Pattern
    rr: float
    sim: float
    supp_pos: float
    supp_neg: float
    positive_cluster: int
    n_matched: int   # sequences in the scored database containing the pattern

    # exact values used for ordering; float fields are for display
    rr_exact: tuple = (False, Fraction(0))
    sim_exact: Fraction = Fraction(0)
    supp_pos_exact: Fraction = Fraction(0)

    def rank_key(self):
        """Sort key, smallest is best.

        rr descending, where infinite ratios are ordered among themselves by
        positive-class support (the limit of supp_pos / supp_neg under a
        shared vanishing denominator); then sim, supp_pos descending;
        shorter patterns; item order.
        """
        is_inf, ratio = self.rr_exact
        rr_key = (0, -self.supp_pos_exact) if is_inf else (1, -ratio)
        return (rr_key, -self.sim_exact,
                -self.supp_pos_exact, len(self.pattern), self.pattern)


def _check_clusters(labels, n):
    labels = np.asarray(labels, dtype=np.int64)
    if len(labels) != n:
        raise ScoringError("labels must align with the database")
    ids = np.unique(labels)
    if len(ids) < 2:
        raise ScoringError("scoring needs at least two nonempty clusters")
    return labels, ids


def _score_from_counts(pattern, counts, sizes, total_lens, ids):
    """counts/sizes/total_lens are per nonempty cluster, aligned with ``ids``."""
    fracs = [Fraction(int(c), int(s)) for c, s in zip(counts, sizes)]
    best = max(range(len(ids)), key=lambda i: (fracs[i], -i))
    pos_count, pos_size = int(counts[best]), int(sizes[best])
    neg_count = int(counts.sum()) - pos_count
    neg_size = int(sizes.sum()) - pos_size
    supp_pos = Fraction(pos_count, pos_size)
    supp_neg = Fraction(neg_count, neg_size)
    if pos_count == 0:
        rr_exact, rr = (False, Fraction(0)), 0.0
    elif neg_count == 0:
        rr_exact, rr = (True, Fraction(0)), math.inf
    else:
        ratio = supp_pos / supp_neg
        rr_exact, rr = (False, ratio), float(ratio)
    sim = Fraction(len(pattern) * pos_size, int(total_lens[best]))
    return ScoredPattern(tuple(pattern), rr, float(sim), float(supp_pos), float(supp_neg),
                         int(ids[best]), int(counts.sum()), rr_exact, sim, supp_pos)


def _cluster_tables(sequences, labels, ids):
    onehot = (labels[None, :] == ids[:, None])
    lens = np.array([len(s) for s in sequences], dtype=np.int64)
    return onehot, onehot.sum(axis=1), onehot @ lens


def score_pattern(p: Seq[int], db, labels) -> ScoredPattern:
    """One-vs-rest relative risk and SIM of ``p`` against a clustering.

    The positive class is the cluster where ``p`` has the highest support
    (lowest id on ties).
    """
    sequences = list(db)
    labels = getattr(labels, "labels", labels)
    labels, ids = _check_clusters(labels, len(sequences))
    onehot, sizes, total_lens = _cluster_tables(sequences, labels, ids)
    hit = contains_matrix(sequences, [tuple(p)])[:, 0] if len(p) else np.ones(len(sequences), bool)
    counts = onehot.astype(np.int64) @ hit.astype(np.int64)
    return _score_from_counts(tuple(p), counts, sizes, total_lens, ids)


def _count_tables(candidates, sequences, labels):
    labels, ids = _check_clusters(labels, len(sequences))
    onehot, sizes, total_lens = _cluster_tables(sequences, labels, ids)
    hits = contains_matrix(sequences, candidates)
    counts = onehot.astype(np.int64) @ hits.astype(np.int64)
    return counts, sizes, total_lens, ids


def score_candidates(candidates: Seq[Pattern], db, labels) -> list[ScoredPattern]:
    sequences = list(db)
    labels = getattr(labels, "labels", labels)
    if not candidates:
        _check_clusters(labels, len(sequences))
        return []
    counts, sizes, total_lens, ids = _count_tables(candidates, sequences, labels)
    return [_score_from_counts(p, counts[:, j], sizes, total_lens, ids)
            for j, p in enumerate(candidates)]


def _near_max(values, mask):
    top = values[mask].max()
    return mask & (values >= top - 1e-9 * abs(top))


def top1_discriminative(candidates: Seq[Pattern], db, labels) -> ScoredPattern | None:
    """Best non-trivial split pattern, or None when every candidate matches
    all or none of the database."""
    sequences = list(db)
    n = len(sequences)
    labels = getattr(labels, "labels", labels)
    pool = sorted({tuple(p) for p in candidates if len(p) > 0})
    if not pool:
        _check_clusters(labels, n)
        return None
    counts, sizes, total_lens, ids = _count_tables(pool, sequences, labels)
    matched = counts.sum(axis=0)
    mask = (matched > 0) & (matched < n)
    if not mask.any():
        return None

    # float pre-selection; the exact rank key settles near-ties below
    supp = counts / sizes[:, None]
    best = supp.argmax(axis=0)
    cols = np.arange(len(pool))
    pos_count = counts[best, cols]
    neg_count = matched - pos_count
    supp_pos = pos_count / sizes[best]
    supp_neg = neg_count / (n - sizes[best])
    infinite = (neg_count == 0) & (pos_count > 0)
    if (mask & infinite).any():
        mask &= infinite
        mask = _near_max(supp_pos, mask)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            rr = np.where(pos_count > 0, supp_pos / supp_neg, 0.0)
        mask = _near_max(rr, mask)
    lengths = np.array([len(p) for p in pool])
    sim = lengths * sizes[best] / total_lens[best]
    mask = _near_max(sim, mask)

    scored = [_score_from_counts(pool[j], counts[:, j], sizes, total_lens, ids)
              for j in np.flatnonzero(mask)]
    return min(scored, key=ScoredPattern.rank_key)


def candidate_pool(db, labels, config: MiningConfig | None = None) -> list[Pattern]:
    """Deduplicated union of every cluster's top-N frequent patterns."""
    config = config or MiningConfig()
    labels = np.asarray(getattr(labels, "labels", labels))
    pool: set[Pattern] = set()
    sequences = list(db)
    for c in np.unique(labels):
        members = [sequences[i] for i in np.flatnonzero(labels == c)]
        pool.update(mine_top_frequent(members, config))
    return sorted(pool)
