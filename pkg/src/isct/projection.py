"""Random projection clustering.

Sequences are embedded by their normalized LCS similarity to a bank of
random patterns, reduced with PCA, and clustered with k-means++ / Lloyd.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seqcore import Pattern, SequenceDatabase, lcs_matrix


class InfeasibleKError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionConfig:
    num_patterns: int = 2048
    max_random_len: int | None = None   # None -> default_max_len(db)
    pca_dims: int | None = None         # None -> k
    kmeans_restarts: int = 10
    kmeans_max_iters: int = 300
    kmeans_tol: float = 1e-4

    def __post_init__(self):
        if self.num_patterns < 1:
            raise ValueError("num_patterns must be >= 1")
        if self.max_random_len is not None and self.max_random_len < 1:
            raise ValueError("max_random_len must be >= 1")
        if self.pca_dims is not None and self.pca_dims < 1:
            raise ValueError("pca_dims must be >= 1")
        if self.kmeans_restarts < 1 or self.kmeans_max_iters < 1:
            raise ValueError("k-means restarts and iterations must be >= 1")
        if self.kmeans_tol < 0:
            raise ValueError("kmeans_tol must be non-negative")


@dataclass(frozen=True)
class Clustering:
    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or len(labels) == 0:
            raise ValueError("labels must be a nonempty 1-D array")
        if self.k < 1 or labels.min() < 0 or labels.max() >= self.k:
            raise ValueError("labels must lie in [0, k)")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def members(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == c) for c in range(self.k)]


def default_max_len(db: SequenceDatabase) -> int:
    """5 when every sequence has length >= 10, otherwise the shortest length."""
    shortest = int(db.lengths().min())
    return 5 if shortest >= 10 else shortest


def generate_random_patterns(alphabet, num_patterns: int, max_len: int,
                             rng: np.random.Generator) -> list[Pattern]:
    """Draw patterns with length uniform in [1, max_len] and items uniform
    over the alphabet (an Alphabet or its size).  Duplicates are redrawn
    until 10 * num_patterns draws have been spent, then kept.
    """
    alphabet_size = alphabet if isinstance(alphabet, int) else len(alphabet)
    if alphabet_size < 1:
        raise ValueError("alphabet must be nonempty")
    out: list[Pattern] = []
    seen: set[Pattern] = set()
    budget = 10 * num_patterns
    draws = 0
    while len(out) < num_patterns:
        batch = num_patterns - len(out)
        lengths = rng.integers(1, max_len + 1, size=batch)
        items = rng.integers(0, alphabet_size, size=(batch, max_len))
        for length, row in zip(lengths.tolist(), items.tolist()):
            p = tuple(row[:length])
            draws += 1
            if p in seen and draws <= budget:
                continue
            seen.add(p)
            out.append(p)
    return out


def lcs_transform(db: SequenceDatabase, patterns: list[Pattern]) -> np.ndarray:
    """n x len(patterns) matrix of lcs(s, p) / |p|."""
    if not patterns:
        raise ValueError("need at least one pattern")
    lengths = np.array([len(p) for p in patterns], dtype=np.float64)
    return lcs_matrix(db.sequences, patterns) / lengths


def pca_components(X: np.ndarray, target_dims: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (projected, components, explained_variance).

    ``components`` is (cols, d') with orthonormal columns; each column's
    largest-magnitude loading is made positive.
    """
    X = np.asarray(X, dtype=np.float64)
    n, m = X.shape
    d = max(1, min(target_dims, n, m))
    Xc = X - X.mean(axis=0)
    _, sv, vt = np.linalg.svd(Xc, full_matrices=False)
    comps = vt[:d].T.copy()
    pivot = np.argmax(np.abs(comps), axis=0)
    signs = np.sign(comps[pivot, np.arange(d)])
    signs[signs == 0] = 1.0
    comps *= signs
    var = sv[:d] ** 2 / max(n - 1, 1)
    return Xc @ comps, comps, var


def pca_reduce(X: np.ndarray, target_dims: int) -> np.ndarray:
    return pca_components(X, target_dims)[0]


def _kmeanspp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(X)
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = X[idx]
        d2 = np.minimum(d2, ((X - centers[c]) ** 2).sum(axis=1))
    return centers


def _assign(X, centers):
    d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1)
    return labels, d2[np.arange(len(X)), labels]


def _repair_empty(X, labels, dist, k):
    # hand the point farthest from its center to each empty cluster
    dist = dist.copy()
    for c in range(k):
        if np.any(labels == c):
            continue
        counts = np.bincount(labels, minlength=k)
        movable = counts[labels] > 1
        far = int(np.argmax(np.where(movable, dist, -1.0)))
        labels[far] = c
        dist[far] = 0.0
    return labels


def lloyd(X: np.ndarray, centers: np.ndarray, max_iters: int, tol: float,
          history: list | None = None) -> tuple[np.ndarray, np.ndarray, float]:
    """Lloyd iterations from the given centers -> (labels, centers, inertia)."""
    k = len(centers)
    labels, dist = _assign(X, centers)
    labels = _repair_empty(X, labels, dist, k)
    for _ in range(max_iters):
        new = np.stack([X[labels == c].mean(axis=0) for c in range(k)])
        shift = np.sqrt(((new - centers) ** 2).sum(axis=1)).max()
        centers = new
        labels, dist = _assign(X, centers)
        labels = _repair_empty(X, labels, dist, k)
        if history is not None:
            history.append(_inertia(X, labels, k))
        if shift < tol:
            break
    return labels, centers, _inertia(X, labels, k)


def _inertia(X, labels, k):
    total = 0.0
    for c in range(k):
        pts = X[labels == c]
        if len(pts):
            total += float(((pts - pts.mean(axis=0)) ** 2).sum())
    return total


def kmeans(X: np.ndarray, k: int, rng: np.random.Generator,
           config: ProjectionConfig | None = None) -> Clustering:
    config = config or ProjectionConfig()
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    n = len(X)
    if k < 1 or n < k:
        raise InfeasibleKError(f"cannot form k={k} clusters from {n} rows")
    base = int(rng.integers(2**63))
    best = None
    for r in range(config.kmeans_restarts):
        sub = np.random.default_rng([base, r])
        centers = _kmeanspp(X, k, sub)
        labels, _, inertia = lloyd(X, centers, config.kmeans_max_iters, config.kmeans_tol)
        if best is None or inertia < best[1] - 1e-12:
            best = (labels, inertia)
    return Clustering(best[0], k)


def random_projection_clustering(db: SequenceDatabase, k: int,
                                 config: ProjectionConfig | None,
                                 rng: np.random.Generator) -> Clustering:
    config = config or ProjectionConfig()
    n = len(db)
    if k < 1 or n < k:
        raise InfeasibleKError(f"cannot form k={k} clusters from {n} sequences")
    if k == 1:
        return Clustering(np.zeros(n, dtype=np.int64), 1)
    max_len = config.max_random_len or default_max_len(db)
    patterns = generate_random_patterns(db.alphabet, config.num_patterns, max_len, rng)
    features = lcs_transform(db, patterns)
    reduced = pca_reduce(features, config.pca_dims or k)
    return kmeans(reduced, k, rng, config)
