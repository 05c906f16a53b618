"""External clustering measures: purity, NMI and pairwise F1."""
from __future__ import annotations

import numpy as np


def _labels(x):
    return np.asarray(getattr(x, "labels", x))


def contingency(pred, truth) -> np.ndarray:
    """Counts matrix, rows = predicted clusters, cols = true classes."""
    pred, truth = _labels(pred), _labels(truth)
    if len(pred) != len(truth):
        raise ValueError(f"length mismatch: {len(pred)} predictions vs {len(truth)} labels")
    if len(pred) == 0:
        raise ValueError("need at least one labeled item")
    _, p = np.unique(pred, return_inverse=True)
    _, t = np.unique(truth, return_inverse=True)
    table = np.zeros((p.max() + 1, t.max() + 1), dtype=np.int64)
    np.add.at(table, (p, t), 1)
    return table


def purity(pred, truth) -> float:
    table = contingency(pred, truth)
    return float(table.max(axis=1).sum() / table.sum())


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth) -> float:
    """Mutual information over the arithmetic mean of the two entropies.

    Both labelings constant -> 1.0; exactly one constant -> 0.0.
    """
    table = contingency(pred, truth)
    n = table.sum()
    h_pred = _entropy(table.sum(axis=1))
    h_true = _entropy(table.sum(axis=0))
    if h_pred == 0 and h_true == 0:
        return 1.0
    if h_pred == 0 or h_true == 0:
        return 0.0
    pij = table / n
    outer = np.outer(table.sum(axis=1), table.sum(axis=0)) / n**2
    nz = pij > 0
    mi = float((pij[nz] * np.log(pij[nz] / outer[nz])).sum())
    return float(np.clip(mi / ((h_pred + h_true) / 2), 0.0, 1.0))


def pairwise_f1(pred, truth) -> float:
    table = contingency(pred, truth)
    if table.sum() < 2:
        raise ValueError("pairwise F1 needs at least two items")

    def pairs(x):
        return int((x * (x - 1) // 2).sum())

    tp = pairs(table)
    pred_pairs = pairs(table.sum(axis=1))
    true_pairs = pairs(table.sum(axis=0))
    if pred_pairs == 0 and true_pairs == 0:
        return 1.0
    precision = tp / pred_pairs if pred_pairs else 0.0
    recall = tp / true_pairs if true_pairs else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(pred, truth) -> dict:
    return {"purity": purity(pred, truth), "nmi": nmi(pred, truth),
            "f1": pairwise_f1(pred, truth)}
