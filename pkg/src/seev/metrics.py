"""External clustering agreement measures: ARI, AMI, NMI.

All three are computed from the contingency table of two label sequences
over the same items. Entropies use natural log internally (the normalized
ratios are base-invariant). AMI uses max-normalization with the exact
hypergeometric expected mutual information, not a Monte Carlo estimate.
"""
from __future__ import annotations

import math
from typing import Hashable, Sequence

import numpy as np
from scipy.special import gammaln

__all__ = ["ari", "ami", "nmi"]


def _contingency(
    labels_true: Sequence[Hashable], labels_pred: Sequence[Hashable]
) -> np.ndarray:
    if len(labels_true) != len(labels_pred):
        raise ValueError(
            f"label sequences differ in length: {len(labels_true)} vs {len(labels_pred)}"
        )
    if len(labels_true) == 0:
        raise ValueError("need at least one item")
    true_ids = {lab: i for i, lab in enumerate(dict.fromkeys(labels_true))}
    pred_ids = {lab: i for i, lab in enumerate(dict.fromkeys(labels_pred))}
    table = np.zeros((len(true_ids), len(pred_ids)), dtype=np.int64)
    for t, p in zip(labels_true, labels_pred):
        table[true_ids[t], pred_ids[p]] += 1
    return table


def _comb2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) / 2.0


def ari(labels_true: Sequence[Hashable], labels_pred: Sequence[Hashable]) -> float:
    """Adjusted Rand index under the permutation model, in [-1, 1]."""
    table = _contingency(labels_true, labels_pred)
    n = table.sum()
    sum_cells = _comb2(table).sum()
    sum_rows = _comb2(table.sum(axis=1)).sum()
    sum_cols = _comb2(table.sum(axis=0)).sum()
    total = _comb2(np.asarray(float(n)))
    if total == 0:
        return 1.0  # a single item agrees with itself
    expected = sum_rows * sum_cols / total
    maximum = (sum_rows + sum_cols) / 2.0
    if maximum == expected:
        return 1.0  # both trivial labelings (all-singleton or all-one)
    return float((sum_cells - expected) / (maximum - expected))


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def _mutual_information(table: np.ndarray) -> float:
    n = table.sum()
    nz = table[table > 0]
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)
    outer = np.outer(rows, cols)[table > 0]
    return float(((nz / n) * np.log(nz * n / outer)).sum())


def _expected_mutual_information(rows: np.ndarray, cols: np.ndarray, n: int) -> float:
    """Exact expected MI of two labelings under the permutation model.

    Sums the hypergeometric probability of every feasible cell count; the
    log-factorials run through gammaln to stay stable for large counts.
    """
    lg = gammaln
    emi = 0.0
    log_n = math.log(n)
    lgn = lg(n + 1)
    for a in rows:
        for b in cols:
            lo = max(1, a + b - n)
            hi = min(a, b)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1)
            term = nij / n * (np.log(nij) + log_n - math.log(a) - math.log(b))
            log_prob = (
                lg(a + 1)
                + lg(b + 1)
                + lg(n - a + 1)
                + lg(n - b + 1)
                - lgn
                - lg(nij + 1)
                - lg(a - nij + 1)
                - lg(b - nij + 1)
                - lg(n - a - b + nij + 1)
            )
            emi += float((term * np.exp(log_prob)).sum())
    return emi


def ami(labels_true: Sequence[Hashable], labels_pred: Sequence[Hashable]) -> float:
    """Adjusted mutual information, max-normalized; 1.0 on identical
    partitions, about 0 on independent labelings."""
    table = _contingency(labels_true, labels_pred)
    n = int(table.sum())
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)
    h_true = _entropy(rows, n)
    h_pred = _entropy(cols, n)
    if h_true == 0.0 and h_pred == 0.0:
        return 1.0  # both single-cluster: zero-entropy convention
    mi = _mutual_information(table)
    emi = _expected_mutual_information(rows, cols, n)
    denom = max(h_true, h_pred) - emi
    if denom == 0.0:
        return 0.0
    return float((mi - emi) / denom)


def nmi(labels_true: Sequence[Hashable], labels_pred: Sequence[Hashable]) -> float:
    """Mutual information normalized by the arithmetic mean of entropies."""
    table = _contingency(labels_true, labels_pred)
    n = int(table.sum())
    h_true = _entropy(table.sum(axis=1), n)
    h_pred = _entropy(table.sum(axis=0), n)
    if h_true == 0.0 and h_pred == 0.0:
        return 1.0
    mean = (h_true + h_pred) / 2.0
    if mean == 0.0:
        return 0.0
    return float(_mutual_information(table) / mean)
