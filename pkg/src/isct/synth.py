"""Planted-signature sequence generator for desk-scale experiments."""
from __future__ import annotations

import numpy as np

from .seqcore import SequenceDatabase

SIGNATURE_LEN = 3


def signature_items(k: int, overlap: int = 0) -> list[tuple[int, ...]]:
    """Item indices of each cluster's signature.

    Consecutive signatures share ``overlap`` items (0 = disjoint triples).
    """
    if not 0 <= overlap < SIGNATURE_LEN:
        raise ValueError(f"overlap must be in [0, {SIGNATURE_LEN})")
    stride = SIGNATURE_LEN - overlap
    return [tuple(range(c * stride, c * stride + SIGNATURE_LEN)) for c in range(k)]


def planted_sequences(k: int, per_cluster: int, alphabet_size: int, noise_len: int,
                      seed: int = 0, overlap: int = 0):
    """Return (rows of item strings, cluster label per row, signatures as strings).

    Each row is its cluster's signature interleaved at random positions into
    ``noise_len`` background items, drawn uniformly from symbols outside every
    signature.
    """
    if k < 2 or per_cluster < 1:
        raise ValueError("need k >= 2 and per_cluster >= 1")
    if noise_len < 0:
        raise ValueError("noise_len must be non-negative")
    sigs = signature_items(k, overlap)
    n_sig = sigs[-1][-1] + 1
    if alphabet_size < n_sig + 1:
        raise ValueError(f"alphabet_size {alphabet_size} cannot host {k} signatures "
                         f"({n_sig} symbols) plus a background symbol")
    names = [f"e{i}" for i in range(alphabet_size)]
    rng = np.random.default_rng(seed)
    rows, labels = [], []
    total = noise_len + SIGNATURE_LEN
    for c in range(k):
        for _ in range(per_cluster):
            noise = rng.integers(n_sig, alphabet_size, size=noise_len)
            slots = np.sort(rng.choice(total, size=SIGNATURE_LEN, replace=False))
            row = np.empty(total, dtype=np.int64)
            mask = np.zeros(total, dtype=bool)
            mask[slots] = True
            row[mask] = sigs[c]
            row[~mask] = noise
            rows.append([names[i] for i in row])
            labels.append(c)
    signatures = [[names[i] for i in s] for s in sigs]
    return rows, labels, signatures


def planted_database(k, per_cluster, alphabet_size, noise_len, seed=0, overlap=0):
    rows, labels, signatures = planted_sequences(k, per_cluster, alphabet_size,
                                                 noise_len, seed, overlap)
    return SequenceDatabase.from_tokens(rows), np.array(labels), signatures
